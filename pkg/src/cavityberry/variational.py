"""Coherent-state variational ground states and their Berry phases.

The proper semiclassical limit averages the full Hamiltonian over a
coherent trial state |alpha> (a|alpha> = alpha|alpha>) instead of
replacing operators by C-numbers.  For the standard Rabi model
(lam_nr = lam) this gives the effective spin energy surface

    E_-(alpha) = omega alpha^2 - sqrt(nu^2/4 + 4 lam^2 alpha^2)

over real alpha (the imaginary part of alpha only adds omega*Im(alpha)^2
and never helps).  Minimizing it yields a second-order transition at the
critical coupling lam_c = sqrt(omega nu)/2:

    alpha_gs = 0                                        for lam <= lam_c
    alpha_gs = sqrt(lam^2/omega^2 - nu^2/(16 lam^2))    for lam >  lam_c

with ground energy -nu/2 below threshold and
-lam^2/omega - omega nu^2/(16 lam^2) above, atomic coefficients
C_+- = sqrt(2 lam^2 -+ omega nu / 2) / (2 lam), and Berry phase
gamma = 2pi alpha_gs^2.  Above lam_c the phase loop drags a macroscopic
coherent amplitude around the phase-space origin, so the phase survives
without the rotating wave approximation.

The Lambda-type three-level model behaves identically with
E^L_-(u) = omega0 u^2 + (omega1+omega3)/2
           - sqrt((omega1-omega3)^2/4 + 8 eta^2 u^2)
(requires omega1 == omega2; the antisymmetric lower-level combination
decouples), threshold F = sqrt(omega0 (omega3 - omega1) / 8) and
beta_gs = sqrt(2 eta^2/omega0^2 - (omega1-omega3)^2/(32 eta^2)) above it.

A grid-plus-golden-section minimizer is included as an independent
numeric oracle for both closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .model import LambdaParams, TwoLevelParams

NORMAL = "normal"
SUPERRADIANT = "superradiant"

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0          # 1/phi
_INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0       # 1/phi^2


class BracketError(ValueError):
    """The scanned minimum sits on the bracket edge."""


@dataclass(frozen=True)
class VariationalSolution:
    """Closed-form semiclassical ground state of one model.

    alpha_gs is the coherent amplitude (real, >= 0); its square is the
    mean photon number and gamma = 2pi alpha_gs^2.  c_plus/c_minus are
    the excited/ground atomic coefficients of the two-level solution
    (None for the Lambda model).  critical_coupling is lam_c or F.
    """

    alpha_gs: float
    energy: float
    gamma: float
    regime: str
    critical_coupling: float
    c_plus: float | None = None
    c_minus: float | None = None


def effective_energy_two_level(params: TwoLevelParams, alpha: float) -> float:
    """Lower branch of the coherent-state averaged Rabi energy, real alpha."""
    _require_standard_rabi(params)
    return params.omega * alpha**2 - math.sqrt(
        params.nu**2 / 4.0 + 4.0 * params.lam**2 * alpha**2
    )


def critical_coupling_two_level(params: TwoLevelParams) -> float:
    """Superradiant threshold lam_c = sqrt(omega nu) / 2."""
    return math.sqrt(params.omega * params.nu) / 2.0


def _require_standard_rabi(params: TwoLevelParams) -> None:
    if params.lam_nr != params.lam:
        raise ValueError(
            "closed-form variational treatment covers the standard Rabi model "
            f"(lam_nr = lam) only; got lam={params.lam}, lam_nr={params.lam_nr}. "
            "For other coupling ratios minimize a user-supplied averaged energy "
            "with numeric_minimize."
        )


def solve_two_level(params: TwoLevelParams) -> VariationalSolution:
    """Closed-form variational ground state of the standard Rabi model.

    Exactly at lam = lam_c both branches coincide (alpha_gs = 0,
    energy = -nu/2); the point is assigned to the normal regime.
    """
    _require_standard_rabi(params)
    omega, nu, lam = params.omega, params.nu, params.lam
    lam_c = critical_coupling_two_level(params)
    if lam <= lam_c:
        return VariationalSolution(
            alpha_gs=0.0,
            energy=-nu / 2.0,
            gamma=0.0,
            regime=NORMAL,
            critical_coupling=lam_c,
            c_plus=0.0,
            c_minus=1.0,
        )
    alpha_sq = lam**2 / omega**2 - nu**2 / (16.0 * lam**2)
    alpha_gs = math.sqrt(alpha_sq)
    energy = -(lam**2) / omega - omega * nu**2 / (16.0 * lam**2)
    c_plus = math.sqrt(2.0 * lam**2 - omega * nu / 2.0) / (2.0 * lam)
    c_minus = math.sqrt(2.0 * lam**2 + omega * nu / 2.0) / (2.0 * lam)
    return VariationalSolution(
        alpha_gs=alpha_gs,
        energy=energy,
        gamma=2.0 * math.pi * alpha_sq,
        regime=SUPERRADIANT,
        critical_coupling=lam_c,
        c_plus=c_plus,
        c_minus=c_minus,
    )


def numeric_minimize(energy_fn: Callable[[float], float],
                     bracket: tuple[float, float],
                     tol: float = 1e-10,
                     grid_points: int = 512) -> tuple[float, float]:
    """Coarse grid scan followed by golden-section refinement.

    The grid (>= 512 points) localizes the global minimum inside the
    bracket; golden-section search then shrinks the surrounding cell to
    width tol.  A scanned minimum on the bracket edge raises
    BracketError.  Serves as the independent oracle for the closed-form
    solvers.
    """
    lo, hi = bracket
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise ValueError(f"bracket must satisfy lo < hi, got {bracket}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    grid_points = max(int(grid_points), 512)
    xs = np.linspace(lo, hi, grid_points)
    values = np.array([energy_fn(float(x)) for x in xs])
    idx = int(np.argmin(values))
    if idx == 0 or idx == grid_points - 1:
        raise BracketError(
            f"scanned minimum at bracket edge x={xs[idx]:.6g}; enlarge the bracket"
        )

    a, b = float(xs[idx - 1]), float(xs[idx + 1])
    h = b - a
    if h > tol:
        c = a + _INV_PHI_SQ * h
        d = a + _INV_PHI * h
        yc, yd = energy_fn(c), energy_fn(d)
        n_iter = int(math.ceil(math.log(tol / h) / math.log(_INV_PHI)))
        for _ in range(n_iter):
            if yc < yd:
                b, d, yd = d, c, yc
                h *= _INV_PHI
                c = a + _INV_PHI_SQ * h
                yc = energy_fn(c)
            else:
                a, c, yc = c, d, yd
                h *= _INV_PHI
                d = a + _INV_PHI * h
                yd = energy_fn(d)
    x_star = (a + b) / 2.0
    return x_star, energy_fn(x_star)


def critical_coupling_lambda(params: LambdaParams) -> float:
    """Superradiant threshold F = sqrt(omega0 (omega3 - omega1) / 8)."""
    return math.sqrt(params.omega0 * (params.omega3 - params.omega1) / 8.0)


def effective_energy_lambda(params: LambdaParams, u: float) -> float:
    """Lowest branch of the coherent-state averaged Lambda energy, real beta = u."""
    return (
        params.omega0 * u**2
        + (params.omega1 + params.omega3) / 2.0
        - math.sqrt((params.omega1 - params.omega3) ** 2 / 4.0 + 8.0 * params.eta**2 * u**2)
    )


def solve_lambda(params: LambdaParams) -> VariationalSolution:
    """Closed-form variational ground state of the Lambda-type model.

    Requires the degenerate lower levels omega1 == omega2 (the
    antisymmetric combination then decouples and the bright sector is an
    effective two-level problem).  eta = F is assigned to the normal
    regime, mirroring the two-level convention.
    """
    if params.omega1 != params.omega2:
        raise ValueError(
            f"closed-form Lambda solution requires omega1 == omega2, "
            f"got omega1={params.omega1}, omega2={params.omega2}"
        )
    f_crit = critical_coupling_lambda(params)
    if params.eta <= f_crit:
        return VariationalSolution(
            alpha_gs=0.0,
            energy=params.omega1,
            gamma=0.0,
            regime=NORMAL,
            critical_coupling=f_crit,
        )
    omega0, eta = params.omega0, params.eta
    gap_sq = (params.omega1 - params.omega3) ** 2
    beta_sq = 2.0 * eta**2 / omega0**2 - gap_sq / (32.0 * eta**2)
    energy = (
        -2.0 * eta**2 / omega0
        - omega0 * gap_sq / (32.0 * eta**2)
        + (params.omega1 + params.omega3) / 2.0
    )
    return VariationalSolution(
        alpha_gs=math.sqrt(beta_sq),
        energy=energy,
        gamma=2.0 * math.pi * beta_sq,
        regime=SUPERRADIANT,
        critical_coupling=f_crit,
    )
