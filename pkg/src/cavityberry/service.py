"""FastAPI service exposing the Berry-phase computations.

Each endpoint wraps one core operation behind pydantic request/response
models; the CLI is a thin client of this app (in process by default).
Domain validation errors surface as HTTP 400 with the core message.

    GET  /health            liveness and version
    POST /sweep             coupling sweep -> records + CSV (+ SVG)
    POST /variational       closed-form variational ground state
    POST /demo-controversy  C-number arc-vs-loop demo -> table + text
    POST /diag              one-shot diagonalization dump
    POST /plot              records -> SVG text
"""

from __future__ import annotations

import math

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__, sweep, variational
from .model import FockTruncation, LambdaParams, TwoLevelParams
from .svgplot import PlotStyle, emit_plot


def _nan_to_none(x: float | None) -> float | None:
    if x is None or math.isnan(x):
        return None
    return x


def _none_to_nan(x: float | None) -> float:
    return math.nan if x is None else x


class SweepRequest(BaseModel):
    model: str = "rabi"
    g_start: float = 0.0
    g_stop: float = 2.0
    g_count: int = 81
    omega: float = 1.0
    nu: float = 1.0
    lambda_nr_ratio: float | None = None
    omega0: float = 1.0
    omega1: float = -0.25
    omega2: float = -0.25
    omega3: float = 0.25
    tol: float = 1e-8
    n_start: int = 20
    n_step: int = 20
    n_cap: int = 400
    methods: list[str] = ["numeric", "variational"]
    include_svg: bool = False

    def to_config(self) -> sweep.SweepConfig:
        return sweep.SweepConfig(
            model=self.model, g_start=self.g_start, g_stop=self.g_stop,
            g_count=self.g_count, omega=self.omega, nu=self.nu,
            lambda_nr_ratio=self.lambda_nr_ratio, omega0=self.omega0,
            omega1=self.omega1, omega2=self.omega2, omega3=self.omega3,
            tol=self.tol, n_start=self.n_start, n_step=self.n_step,
            n_cap=self.n_cap, methods=tuple(self.methods),
        )


class SweepRecordModel(BaseModel):
    """One grid point; values NaN-free (missing methods are null)."""

    g: float
    gamma_numeric: float | None
    gamma_variational: float | None
    mean_photon: float | None
    n_max: int
    converged: bool
    gamma_oracle: float | None = None

    @classmethod
    def from_record(cls, r: sweep.SweepRecord) -> "SweepRecordModel":
        return cls(
            g=r.g,
            gamma_numeric=_nan_to_none(r.gamma_numeric),
            gamma_variational=_nan_to_none(r.gamma_variational),
            mean_photon=_nan_to_none(r.mean_photon),
            n_max=r.n_max,
            converged=r.converged,
            gamma_oracle=_nan_to_none(r.gamma_oracle),
        )

    def to_record(self) -> sweep.SweepRecord:
        return sweep.SweepRecord(
            g=self.g,
            gamma_numeric=_none_to_nan(self.gamma_numeric),
            gamma_variational=_none_to_nan(self.gamma_variational),
            mean_photon=_none_to_nan(self.mean_photon),
            n_max=self.n_max,
            converged=self.converged,
            gamma_oracle=self.gamma_oracle,
        )


class SweepResponse(BaseModel):
    records: list[SweepRecordModel]
    all_converged: bool
    csv: str
    svg: str | None = None


class VariationalRequest(BaseModel):
    model: str = "rabi"
    omega: float = 1.0
    nu: float = 1.0
    lam: float = Field(default=1.0, description="lam for rabi, eta for lambda3")
    omega0: float = 1.0
    omega1: float = -0.25
    omega2: float = -0.25
    omega3: float = 0.25


class VariationalResponse(BaseModel):
    alpha_gs: float
    mean_photon: float
    energy: float
    gamma: float
    regime: str
    critical_coupling: float
    c_plus: float | None = None
    c_minus: float | None = None


class DemoRequest(BaseModel):
    omega: float = 1.0
    nu: float = 1.0
    lam: float = 0.5
    alpha_mod: float = 1.0
    steps: int = 1024
    tol: float = 1e-8
    n_cap: int = 400


class DemoCaseModel(BaseModel):
    case: str
    lam_nr: float
    loop_phase_lower: float | None
    loop_phase_upper: float | None
    theta: float
    half_solid_angle: float
    gamma_quantum_ground: float
    gamma_quantum_excited: float
    quantum_converged: bool
    note: str


class DemoResponse(BaseModel):
    cases: list[DemoCaseModel]
    text: str
    csv: str


class DiagRequest(BaseModel):
    model: str = "rabi"
    omega: float = 1.0
    nu: float = 1.0
    lam: float = 1.0
    lambda_nr_ratio: float | None = None
    omega0: float = 1.0
    omega1: float = -0.25
    omega2: float = -0.25
    omega3: float = 0.25
    eta: float = 0.5
    n_max: int = 40
    levels: int = 12


class DiagResponse(BaseModel):
    model: str
    n_max: int
    dim: int
    residual: float
    energies: list[float]
    gammas: list[float]
    mean_photons: list[float]
    parities: list[float]
    csv: str


class PlotStyleModel(BaseModel):
    width: int = 640
    height: int = 440
    title: str = "ground-state Berry phase vs coupling"


class PlotRequest(BaseModel):
    records: list[SweepRecordModel]
    style: PlotStyleModel | None = None


class PlotResponse(BaseModel):
    svg: str


def create_app() -> FastAPI:
    app = FastAPI(
        title="cavityberry",
        version=__version__,
        description="Berry phases of quantized-light-atom models",
    )

    @app.exception_handler(ValueError)
    async def _value_error(_: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/sweep", response_model=SweepResponse)
    def run_sweep(req: SweepRequest) -> SweepResponse:
        config = req.to_config()
        records = sweep.run_sweep(config)
        svg = emit_plot(records) if req.include_svg else None
        return SweepResponse(
            records=[SweepRecordModel.from_record(r) for r in records],
            all_converged=all(r.converged for r in records),
            csv=sweep.render_csv(records),
            svg=svg,
        )

    @app.post("/variational", response_model=VariationalResponse)
    def run_variational(req: VariationalRequest) -> VariationalResponse:
        if req.model == "lambda3":
            params = LambdaParams(omega0=req.omega0, omega1=req.omega1,
                                  omega2=req.omega2, omega3=req.omega3, eta=req.lam)
            sol = variational.solve_lambda(params)
        elif req.model == "rabi":
            tl = TwoLevelParams(omega=req.omega, nu=req.nu, lam=req.lam, lam_nr=req.lam)
            sol = variational.solve_two_level(tl)
        else:
            raise ValueError(
                f"closed-form variational solutions exist for 'rabi' and 'lambda3', "
                f"got {req.model!r}"
            )
        return VariationalResponse(
            alpha_gs=sol.alpha_gs, mean_photon=sol.alpha_gs**2, energy=sol.energy,
            gamma=sol.gamma, regime=sol.regime,
            critical_coupling=sol.critical_coupling,
            c_plus=sol.c_plus, c_minus=sol.c_minus,
        )

    @app.post("/demo-controversy", response_model=DemoResponse)
    def run_demo(req: DemoRequest) -> DemoResponse:
        params = TwoLevelParams(omega=req.omega, nu=req.nu, lam=req.lam, lam_nr=req.lam)
        report = sweep.demo_controversy(params, req.alpha_mod, req.steps,
                                        tol=req.tol, n_cap=req.n_cap)
        cases = [
            DemoCaseModel(
                case=r.case, lam_nr=r.lam_nr,
                loop_phase_lower=_nan_to_none(r.loop_phase_lower),
                loop_phase_upper=_nan_to_none(r.loop_phase_upper),
                theta=r.theta, half_solid_angle=r.half_solid_angle,
                gamma_quantum_ground=r.gamma_quantum_ground,
                gamma_quantum_excited=r.gamma_quantum_excited,
                quantum_converged=r.quantum_converged, note=r.note,
            )
            for r in report.rows
        ]
        return DemoResponse(cases=cases, text=sweep.render_demo_text(report),
                            csv=sweep.render_demo_csv(report))

    @app.post("/diag", response_model=DiagResponse)
    def run_diag(req: DiagRequest) -> DiagResponse:
        if req.model == "lambda3":
            params: TwoLevelParams | LambdaParams = LambdaParams(
                omega0=req.omega0, omega1=req.omega1, omega2=req.omega2,
                omega3=req.omega3, eta=req.eta)
        else:
            ratio = req.lambda_nr_ratio
            if ratio is None:
                ratio = 0.0 if req.model == "jc" else 1.0
            params = TwoLevelParams(omega=req.omega, nu=req.nu, lam=req.lam,
                                    lam_nr=ratio * req.lam)
        report = sweep.diag_dump(req.model, params, FockTruncation(req.n_max),
                                 levels=req.levels)
        return DiagResponse(
            model=report.model, n_max=report.n_max, dim=report.dim,
            residual=report.residual, energies=report.energies,
            gammas=report.gammas, mean_photons=report.mean_photons,
            parities=report.parities, csv=sweep.render_diag_csv(report),
        )

    @app.post("/plot", response_model=PlotResponse)
    def run_plot(req: PlotRequest) -> PlotResponse:
        records = [m.to_record() for m in req.records]
        style = None
        if req.style is not None:
            style = PlotStyle(width=req.style.width, height=req.style.height,
                              title=req.style.title)
        return PlotResponse(svg=emit_plot(records, style))

    return app


app = create_app()
