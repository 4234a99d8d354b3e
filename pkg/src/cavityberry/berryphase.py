"""Berry phases under the photon-phase loop U(phi) = exp(-i phi a'a).

Taking any eigenstate |psi> of a model Hamiltonian around the loop
phi: 0 -> 2pi generates the geometric phase

    gamma = i * closed-integral <psi(phi)| d/dphi |psi(phi)> dphi
          = 2pi <psi| a'a |psi>,

because |psi(phi)> = U(phi)|psi> only multiplies each Fock component by
exp(-i phi n).  gamma is reported unreduced (not mod 2pi): it grows with
the photon content of the state.

Two independent code paths are provided: the mean-photon formula above,
and a discretized Pancharatnam product that accumulates the argument of
step overlaps <psi(phi_k)|psi(phi_(k+1))> around the loop.  The second
serves as an oracle for the first; it converges like steps^-2 provided
the step times the mean photon number stays below pi.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .model import BasisLabel, TwoLevelParams

NORM_TOL = 1e-8
MIN_OVERLAP = 0.1


@dataclass(frozen=True)
class BerryResult:
    """gamma in radians (unreduced), the state's <a'a>, and provenance."""

    gamma: float
    mean_photon: float
    method: str                 # "formula" | "pancharatnam"
    loop_steps: int | None = None


def _photon_numbers(basis: list[BasisLabel]) -> np.ndarray:
    return np.array([b.photon_n for b in basis], dtype=np.float64)


def _check_normalized(state: np.ndarray) -> np.ndarray:
    state = np.asarray(state)
    norm = float(np.linalg.norm(state))
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"state norm {norm} deviates from 1 by more than {NORM_TOL}")
    return state


def mean_photon(state: np.ndarray, basis: list[BasisLabel]) -> float:
    """<a'a> of a normalized state: sum_i photon_n(i) |state_i|^2."""
    state = _check_normalized(state)
    if len(basis) != state.shape[0]:
        raise ValueError(f"basis has {len(basis)} labels for a length-{state.shape[0]} state")
    weights = np.abs(state) ** 2
    return float(np.dot(_photon_numbers(basis), weights))


def berry_phase_formula(state: np.ndarray, basis: list[BasisLabel]) -> BerryResult:
    """gamma = 2pi <a'a>, the closed-form phase of the photon loop."""
    nbar = mean_photon(state, basis)
    return BerryResult(gamma=2.0 * math.pi * nbar, mean_photon=nbar, method="formula")


def pancharatnam_loop(state: np.ndarray, basis: list[BasisLabel], steps: int) -> BerryResult:
    """Discrete-loop oracle: gamma = -sum_k Arg <psi(phi_k)|psi(phi_(k+1))>.

    The loop [0, 2pi] is split into `steps` equal increments.  Since
    |psi(phi)> = U(phi)|psi>, each step overlap equals
    sum_i |state_i|^2 exp(-i dphi n_i); the product form is still
    evaluated step by step so the accumulation is an independent route
    to the formula value.  Each Arg is taken in (-pi, pi], so the result
    is reliable while dphi * <a'a> < pi; overlaps with modulus below 0.1
    signal too coarse a step for the state's photon spread and raise.
    """
    if steps < 8:
        raise ValueError(f"steps must be >= 8, got {steps}")
    state = _check_normalized(state)
    if len(basis) != state.shape[0]:
        raise ValueError(f"basis has {len(basis)} labels for a length-{state.shape[0]} state")
    weights = np.abs(state) ** 2
    photons = _photon_numbers(basis)
    dphi = 2.0 * math.pi / steps
    step_factors = np.exp(-1j * dphi * photons)
    gamma = 0.0
    for _ in range(steps):
        overlap = complex(np.dot(weights, step_factors))
        if abs(overlap) < MIN_OVERLAP:
            raise ValueError(
                f"step overlap modulus {abs(overlap):.3f} < {MIN_OVERLAP}; "
                f"increase steps (state photon spread too broad for dphi={dphi:.3e})"
            )
        gamma -= cmath.phase(overlap)
    nbar = float(np.dot(photons, weights))
    return BerryResult(gamma=gamma, mean_photon=nbar, method="pancharatnam", loop_steps=steps)


def jc_doublet_phase(n: int, params: TwoLevelParams) -> tuple[float, float]:
    """Closed-form Berry phases of the Jaynes-Cummings doublet at rung n.

    The dressed states spanning {|n+1,g>, |n,e>} mix through the 2x2
    block [[Delta/2, lam*sqrt(n+1)], [lam*sqrt(n+1), -Delta/2]] with
    Delta = nu - omega (basis order |n,e>, |n+1,g>).  Each dressed state
    carries gamma = 2pi (n + w) where w is its |n+1,g> weight; the two
    weights add to 1, so the doublet phases sum to 2pi (2n + 1).

    Returns (gamma_lower, gamma_upper) ordered by energy.  Only valid
    under the RWA (lam_nr must be 0).
    """
    if params.lam_nr != 0.0:
        raise ValueError(f"JC doublet requires lam_nr = 0, got {params.lam_nr}")
    if n < 0:
        raise ValueError(f"doublet index must be >= 0, got {n}")
    half_delta = params.detuning / 2.0
    coupling = params.lam * math.sqrt(n + 1.0)
    if coupling == 0.0 and half_delta == 0.0:
        raise ValueError("doublet is fully degenerate (lam = 0 at zero detuning)")
    r = math.hypot(half_delta, coupling)
    # The +r eigenvector of the block is (coupling, r - half_delta); its
    # |n+1,g> weight is (r - half_delta) / 2r.  Use the algebraically
    # equal form that avoids cancellation for either sign of Delta.
    if half_delta >= 0.0:
        w_upper = coupling**2 / (2.0 * r * (r + half_delta))
    else:
        w_upper = (r - half_delta) / (2.0 * r)
    w_lower = 1.0 - w_upper
    gamma_lower = 2.0 * math.pi * (n + w_lower)
    gamma_upper = 2.0 * math.pi * (n + w_upper)
    return gamma_lower, gamma_upper
