"""Coupling sweeps, the semiclassics-controversy demo, and CSV I/O.

A sweep walks a grid of dimensionless couplings (g = lam/omega for the
two-level models, g' = eta/omega0 for the Lambda model), and for every
point computes the ground-state Berry phase by truncation-converged
exact diagonalization, by the closed-form variational expression, and
optionally by the discrete Pancharatnam oracle.  Output is a fixed CSV
schema

    g,gamma_numeric,gamma_variational,mean_photon,n_max,converged

(with a trailing gamma_oracle column appended only when the oracle
method is requested).  Values are formatted to 12 significant digits
with '.' decimal separator; identical configs produce byte-identical
output.  Unconverged grid points are emitted and flagged, never dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import berryphase, classicalpath, spectra, variational
from .model import (
    LAMBDA,
    TWO_LEVEL,
    FockTruncation,
    LambdaParams,
    SymmetricMatrix,
    TwoLevelParams,
    build_lambda_matrix,
    build_rabi_matrix,
    lambda_labels,
    parity_signs,
    two_level_labels,
)

MODELS = ("rabi", "jc", "lambda3")
METHODS = ("numeric", "variational", "oracle")
ORACLE_STEPS = 4096

CSV_HEADER = "g,gamma_numeric,gamma_variational,mean_photon,n_max,converged"
CSV_HEADER_ORACLE = CSV_HEADER + ",gamma_oracle"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: model, coupling grid, fixed parameters and policy."""

    model: str = "rabi"
    g_start: float = 0.0
    g_stop: float = 2.0
    g_count: int = 81
    omega: float = 1.0
    nu: float = 1.0
    lambda_nr_ratio: float | None = None     # default 1 for rabi, 0 for jc
    omega0: float = 1.0
    omega1: float = -0.25
    omega2: float = -0.25
    omega3: float = 0.25
    tol: float = 1e-8
    n_start: int = 20
    n_step: int = 20
    n_cap: int = 400
    methods: tuple[str, ...] = ("numeric", "variational")
    out_csv: str | None = None
    out_svg: str | None = None

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.g_start < 0:
            raise ValueError(f"g_start must be >= 0, got {self.g_start}")
        if not self.g_stop > self.g_start:
            raise ValueError(f"g_stop must exceed g_start, got {self.g_start}..{self.g_stop}")
        if self.g_count < 2:
            raise ValueError(f"g_count must be >= 2, got {self.g_count}")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods {sorted(unknown)}; choose from {METHODS}")
        if not self.methods:
            raise ValueError("at least one method is required")
        if "oracle" in self.methods and "numeric" not in self.methods:
            raise ValueError("the oracle method needs the numeric ground state; add 'numeric'")
        ratio = self.ratio
        if not 0.0 <= ratio <= 1.0:
            raise ValueError(f"lambda_nr_ratio must lie in [0, 1], got {ratio}")

    @property
    def ratio(self) -> float:
        if self.lambda_nr_ratio is not None:
            return self.lambda_nr_ratio
        return 0.0 if self.model == "jc" else 1.0

    def grid(self) -> list[float]:
        step = (self.g_stop - self.g_start) / (self.g_count - 1)
        return [self.g_start + i * step for i in range(self.g_count)]


@dataclass(frozen=True)
class SweepRecord:
    """One grid point; non-computed methods hold NaN."""

    g: float
    gamma_numeric: float
    gamma_variational: float
    mean_photon: float
    n_max: int
    converged: bool
    gamma_oracle: float | None = None


def _numeric_point(builder, tol, n_start, n_step, n_cap, want_oracle):
    result, nbar = spectra.converge_truncation(
        builder, berryphase.mean_photon, tol,
        n_start=n_start, n_step=n_step, n_cap=n_cap,
    )
    gamma = 2.0 * math.pi * nbar
    oracle = None
    if want_oracle:
        _, state = spectra.ground_state(result)
        oracle = berryphase.pancharatnam_loop(state, result.basis, ORACLE_STEPS).gamma
    return gamma, nbar, result.n_max_used, result.converged, oracle


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """Evaluate every grid point; write CSV/SVG when paths are configured."""
    records: list[SweepRecord] = []
    want_numeric = "numeric" in config.methods
    want_variational = "variational" in config.methods
    want_oracle = "oracle" in config.methods

    for g in config.grid():
        if config.model == "lambda3":
            params = LambdaParams(
                omega0=config.omega0, omega1=config.omega1,
                omega2=config.omega2, omega3=config.omega3,
                eta=g * config.omega0,
            )
            builder = lambda trunc, p=params: (build_lambda_matrix(p, trunc), lambda_labels(trunc))
            gamma_var = variational.solve_lambda(params).gamma if want_variational else math.nan
        else:
            lam = g * config.omega
            params = TwoLevelParams(
                omega=config.omega, nu=config.nu,
                lam=lam, lam_nr=config.ratio * lam,
            )
            builder = lambda trunc, p=params: (build_rabi_matrix(p, trunc), two_level_labels(trunc))
            if want_variational and config.ratio == 1.0:
                gamma_var = variational.solve_two_level(params).gamma
            else:
                # no closed form away from lam_nr = lam; left as NaN
                gamma_var = math.nan

        if want_numeric:
            gamma_num, nbar, n_max, converged, oracle = _numeric_point(
                builder, config.tol, config.n_start, config.n_step,
                config.n_cap, want_oracle,
            )
        else:
            gamma_num, nbar, n_max, converged, oracle = math.nan, math.nan, 0, True, None

        records.append(SweepRecord(
            g=g, gamma_numeric=gamma_num, gamma_variational=gamma_var,
            mean_photon=nbar, n_max=n_max, converged=converged,
            gamma_oracle=oracle,
        ))

    if config.out_csv is not None:
        with open(config.out_csv, "w", newline="") as fh:
            fh.write(render_csv(records))
    if config.out_svg is not None:
        from .svgplot import emit_plot
        with open(config.out_svg, "w", newline="") as fh:
            fh.write(emit_plot(records))
    return records


def render_csv(records: list[SweepRecord]) -> str:
    """Fixed-schema CSV text; trailing newline, LF line endings."""
    with_oracle = any(r.gamma_oracle is not None for r in records)
    lines = [CSV_HEADER_ORACLE if with_oracle else CSV_HEADER]
    for r in records:
        row = (
            f"{_fmt(r.g)},{_fmt(r.gamma_numeric)},{_fmt(r.gamma_variational)},"
            f"{_fmt(r.mean_photon)},{r.n_max},{'true' if r.converged else 'false'}"
        )
        if with_oracle:
            row += f",{_fmt(r.gamma_oracle if r.gamma_oracle is not None else math.nan)}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[SweepRecord]:
    """Inverse of render_csv."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty CSV input")
    header = lines[0].strip()
    if header == CSV_HEADER_ORACLE:
        with_oracle = True
    elif header == CSV_HEADER:
        with_oracle = False
    else:
        raise ValueError(f"unrecognized CSV header {header!r}")
    records = []
    for ln in lines[1:]:
        parts = ln.split(",")
        expected = 7 if with_oracle else 6
        if len(parts) != expected:
            raise ValueError(f"expected {expected} columns, got {len(parts)} in {ln!r}")
        records.append(SweepRecord(
            g=float(parts[0]),
            gamma_numeric=float(parts[1]),
            gamma_variational=float(parts[2]),
            mean_photon=float(parts[3]),
            n_max=int(parts[4]),
            converged={"true": True, "false": False}[parts[5]],
            gamma_oracle=float(parts[6]) if with_oracle else None,
        ))
    return records


@dataclass(frozen=True)
class DemoCaseRow:
    """One semiclassics case (RWA on or off) of the controversy demo."""

    case: str                       # "jc" | "rabi"
    lam_nr: float
    loop_phase_lower: float
    loop_phase_upper: float
    theta: float                    # polar angle of the B path at phi = 0
    half_solid_angle: float         # expected |loop phase| for a closed loop
    gamma_quantum_ground: float
    gamma_quantum_excited: float
    quantum_converged: bool
    note: str = ""


@dataclass(frozen=True)
class DemoReport:
    omega: float
    nu: float
    lam: float
    alpha_mod: float
    steps: int
    rows: list[DemoCaseRow] = field(default_factory=list)


def demo_controversy(params: TwoLevelParams, alpha_mod: float, steps: int,
                     tol: float = 1e-8, n_start: int = 20, n_step: int = 20,
                     n_cap: int = 400) -> DemoReport:
    """Arc-versus-loop comparison of the C-number semiclassics.

    Runs the classical eigenpath with the counter-rotating coupling
    switched off (lam_nr = 0) and on (lam_nr = lam) at the same |alpha|,
    next to the full-quantum Berry phases of the same parameters.  The
    C-number route gives a nonzero loop phase only with the RWA; the
    exact diagonalization shows nonzero phases in both cases, exposing
    the replacement (not the RWA) as the source of the vanishing claim.
    A degenerate classical path is reported in-row and the other case
    still runs.
    """
    field_ = classicalpath.ClassicalField(alpha_mod=alpha_mod)
    rows = []
    for case, lam_nr in (("jc", 0.0), ("rabi", params.lam)):
        cparams = TwoLevelParams(omega=params.omega, nu=params.nu,
                                 lam=params.lam, lam_nr=lam_nr)
        bx, by, bz = classicalpath.bloch_vector(cparams, field_, 0.0)
        theta = math.atan2(math.hypot(bx, by), bz)
        half_solid = classicalpath.solid_angle_phase(theta) if case == "jc" else 0.0
        note = ""
        try:
            lower, upper = classicalpath.eigenpath(cparams, field_, steps)
            phase_lower = classicalpath.path_geometric_phase(lower)
            phase_upper = classicalpath.path_geometric_phase(upper)
        except classicalpath.DegeneratePathError as exc:
            phase_lower = phase_upper = math.nan
            note = f"degenerate path: {exc}"

        builder = lambda trunc, p=cparams: (build_rabi_matrix(p, trunc), two_level_labels(trunc))
        result, nbar = spectra.converge_truncation(
            builder, berryphase.mean_photon, tol,
            n_start=n_start, n_step=n_step, n_cap=n_cap,
        )
        gamma_ground = 2.0 * math.pi * nbar
        excited = result.eigenvectors[:, 1]
        gamma_excited = berryphase.berry_phase_formula(excited, result.basis).gamma

        rows.append(DemoCaseRow(
            case=case, lam_nr=lam_nr,
            loop_phase_lower=phase_lower, loop_phase_upper=phase_upper,
            theta=theta, half_solid_angle=half_solid,
            gamma_quantum_ground=gamma_ground,
            gamma_quantum_excited=gamma_excited,
            quantum_converged=result.converged,
            note=note,
        ))
    return DemoReport(omega=params.omega, nu=params.nu, lam=params.lam,
                      alpha_mod=alpha_mod, steps=steps, rows=rows)


DEMO_CSV_HEADER = ("case,lam_nr,loop_phase_lower,loop_phase_upper,theta,"
                   "half_solid_angle,gamma_quantum_ground,gamma_quantum_excited,"
                   "quantum_converged,note")


def render_demo_csv(report: DemoReport) -> str:
    lines = [DEMO_CSV_HEADER]
    for r in report.rows:
        lines.append(
            f"{r.case},{_fmt(r.lam_nr)},{_fmt(r.loop_phase_lower)},"
            f"{_fmt(r.loop_phase_upper)},{_fmt(r.theta)},{_fmt(r.half_solid_angle)},"
            f"{_fmt(r.gamma_quantum_ground)},{_fmt(r.gamma_quantum_excited)},"
            f"{'true' if r.quantum_converged else 'false'},{r.note}"
        )
    return "\n".join(lines) + "\n"


def render_demo_text(report: DemoReport) -> str:
    out = [
        f"C-number semiclassics vs exact diagonalization "
        f"(omega={_fmt(report.omega)}, nu={_fmt(report.nu)}, lam={_fmt(report.lam)}, "
        f"|alpha|={_fmt(report.alpha_mod)}, steps={report.steps})",
        "",
        f"{'case':<6} {'lam_nr':>8} {'loop lower':>12} {'loop upper':>12} "
        f"{'expected':>10} {'quantum gs':>12} {'quantum exc':>12}",
    ]
    for r in report.rows:
        expected = f"+-{r.half_solid_angle:.6f}" if r.case == "jc" else "0"
        out.append(
            f"{r.case:<6} {r.lam_nr:>8.4f} {r.loop_phase_lower:>12.6f} "
            f"{r.loop_phase_upper:>12.6f} {expected:>10} "
            f"{r.gamma_quantum_ground:>12.6f} {r.gamma_quantum_excited:>12.6f}"
            + (f"   [{r.note}]" if r.note else "")
        )
    out += [
        "",
        "The C-number loop phase vanishes once the counter-rotating coupling",
        "is restored, yet the exact Berry phases stay nonzero in both cases:",
        "the vanishing is an artifact of the operator-to-number replacement.",
    ]
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class DiagReport:
    """First few eigenpairs of one fixed-truncation diagonalization."""

    model: str
    n_max: int
    dim: int
    residual: float
    energies: list[float]
    gammas: list[float]
    mean_photons: list[float]
    parities: list[float]


DIAG_CSV_HEADER = "index,energy,gamma,mean_photon,parity"


def diag_dump(model: str, params: TwoLevelParams | LambdaParams,
              trunc: FockTruncation, levels: int = 12) -> DiagReport:
    """One-shot diagonalization: low-lying energies, phases and parities."""
    if model == "lambda3":
        if not isinstance(params, LambdaParams):
            raise ValueError("lambda3 diagonalization needs LambdaParams")
        matrix: SymmetricMatrix = build_lambda_matrix(params, trunc)
        basis = lambda_labels(trunc)
        signs = parity_signs(LAMBDA, trunc)
    elif model in ("rabi", "jc"):
        if not isinstance(params, TwoLevelParams):
            raise ValueError("two-level diagonalization needs TwoLevelParams")
        matrix = build_rabi_matrix(params, trunc)
        basis = two_level_labels(trunc)
        signs = parity_signs(TWO_LEVEL, trunc)
    else:
        raise ValueError(f"model must be one of {MODELS}, got {model!r}")

    result = spectra.eigh(matrix, basis)
    k = min(levels, matrix.dim)
    energies, gammas, photons, parities = [], [], [], []
    for i in range(k):
        vec = result.eigenvectors[:, i]
        nbar = berryphase.mean_photon(vec, basis)
        energies.append(float(result.eigenvalues[i]))
        gammas.append(2.0 * math.pi * nbar)
        mean = float((signs * vec * vec).sum())
        photons.append(nbar)
        parities.append(mean)
    return DiagReport(model=model, n_max=trunc.n_max, dim=matrix.dim,
                      residual=result.residual, energies=energies,
                      gammas=gammas, mean_photons=photons, parities=parities)


def render_diag_csv(report: DiagReport) -> str:
    lines = [DIAG_CSV_HEADER]
    for i in range(len(report.energies)):
        lines.append(
            f"{i},{_fmt(report.energies[i])},{_fmt(report.gammas[i])},"
            f"{_fmt(report.mean_photons[i])},{_fmt(report.parities[i])}"
        )
    return "\n".join(lines) + "\n"
