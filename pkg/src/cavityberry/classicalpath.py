"""C-number ("improper") semiclassics of the phase loop.

Replacing the field operators in the loop Hamiltonian H(phi) by the
complex number alpha = |alpha| exp(i varphi') yields an effective
spin-1/2 problem

    H_C(phi) = omega |alpha|^2
               + |alpha| cos(vphi) (lam + lam_nr) sigma_x
               + |alpha| sin(vphi) (lam_nr - lam) sigma_y
               + (nu / 2) sigma_z,          vphi = phi + varphi',

i.e. a spin driven by the field B = (Bx, By, nu/2).  For lam_nr = 0 the
B vector sweeps a full azimuthal circle as phi runs 0 -> 2pi, so each
eigenstate traces a closed loop on the Bloch sphere and acquires the
geometric phase -+ half the enclosed solid angle.  For lam_nr = lam the
sigma_y coefficient vanishes identically: the Hamiltonian stays real,
the eigenstates swing along a great-circle arc and retrace it, and the
loop phase is exactly zero.  This module reproduces that dichotomy; the
resolution (where the phase survives without the RWA) lives in the
variational module.

Eigenvectors are obtained by direct diagonalization of the 2x2 matrix
rather than from special-case closed forms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .model import TwoLevelParams

DEGENERACY_GAP = 1e-10
MIN_PATH_OVERLAP = 0.5
CLOSURE_TOL = 1e-10


class DegeneratePathError(RuntimeError):
    """The two bands touch at some sampled loop angle."""

    def __init__(self, message: str, phi: float):
        super().__init__(message)
        self.phi = phi


@dataclass(frozen=True)
class ClassicalField:
    """C-number field alpha = alpha_mod * exp(i varphi_prime)."""

    alpha_mod: float
    varphi_prime: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha_mod) and math.isfinite(self.varphi_prime)):
            raise ValueError("field parameters must be finite")
        if self.alpha_mod < 0:
            raise ValueError(f"alpha_mod must be >= 0, got {self.alpha_mod}")


@dataclass(frozen=True)
class BlochPath:
    """Spinor samples along phi in [0, 2pi], endpoint included.

    closed is True when the final sample matches the initial one up to a
    global phase (the Hamiltonian is 2pi-periodic in phi, so this holds
    whenever the gauge fixing is deterministic).
    """

    samples: np.ndarray                 # shape (k, 2), complex
    closed: bool

    def __post_init__(self) -> None:
        if self.samples.ndim != 2 or self.samples.shape[1] != 2 or self.samples.shape[0] < 8:
            raise ValueError("samples must be a (k >= 8, 2) complex array")
        norms = np.linalg.norm(self.samples, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ValueError("every path sample must be normalized to 1e-12")


def bloch_vector(params: TwoLevelParams, field: ClassicalField, phi: float) -> tuple[float, float, float]:
    """Effective field (Bx, By, Bz) at loop angle phi."""
    vphi = phi + field.varphi_prime
    bx = field.alpha_mod * math.cos(vphi) * (params.lam + params.lam_nr)
    by = field.alpha_mod * math.sin(vphi) * (params.lam_nr - params.lam)
    bz = params.nu / 2.0
    return bx, by, bz


def classical_hamiltonian(params: TwoLevelParams, field: ClassicalField, phi: float) -> np.ndarray:
    """2x2 matrix omega|alpha|^2 + B . sigma in the (|e>, |g>) basis."""
    bx, by, bz = bloch_vector(params, field, phi)
    shift = params.omega * field.alpha_mod**2
    return np.array(
        [[shift + bz, bx - 1j * by],
         [bx + 1j * by, shift - bz]],
        dtype=np.complex128,
    )


def _spin_half_eigenvectors(bx: float, by: float, bz: float) -> tuple[np.ndarray, np.ndarray]:
    """Normalized eigenvectors of B . sigma for eigenvalues -|B|, +|B|.

    The azimuthal factor is formed as (bx + i by) / |B_perp| rather than
    exp(i atan2(...)), so a Hamiltonian with exactly zero sigma_y
    coefficient yields exactly real spinors.
    """
    bperp = math.hypot(bx, by)
    theta = math.atan2(bperp, bz)
    phase = complex(bx, by) / bperp if bperp > 0.0 else complex(1.0)
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    upper = np.array([c, s * phase])
    lower = np.array([-s, c * phase])
    return lower, upper


def _gauge_fix(vec: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-magnitude component is real positive."""
    idx = int(np.argmax(np.abs(vec)))
    pivot = vec[idx]
    return vec * (pivot.conjugate() / abs(pivot))


def eigenpath(params: TwoLevelParams, field: ClassicalField, steps: int) -> tuple[BlochPath, BlochPath]:
    """Eigenstate paths of H_C over phi_k = 2pi k / steps, k = 0..steps.

    Each sample is gauge fixed (largest component real positive) and the
    two bands are ordered by energy.  A band gap below 1e-10 at any
    sample raises DegeneratePathError naming the offending angle; nu != 0
    normally prevents this since Bz = nu/2 bounds the gap away from zero.
    """
    if steps < 8:
        raise ValueError(f"steps must be >= 8, got {steps}")
    if params.nu == 0:
        raise ValueError("nu must be nonzero to keep the bands gapped on the loop")
    lower_samples = np.empty((steps + 1, 2), dtype=np.complex128)
    upper_samples = np.empty((steps + 1, 2), dtype=np.complex128)
    for k in range(steps + 1):
        phi = 2.0 * math.pi * k / steps
        bx, by, bz = bloch_vector(params, field, phi)
        gap = 2.0 * math.sqrt(bx * bx + by * by + bz * bz)
        if gap < DEGENERACY_GAP:
            raise DegeneratePathError(
                f"band gap {gap:.3e} below {DEGENERACY_GAP} at phi = {phi:.6f}",
                phi=phi,
            )
        lower, upper = _spin_half_eigenvectors(bx, by, bz)
        lower_samples[k] = _gauge_fix(lower)
        upper_samples[k] = _gauge_fix(upper)

    def _closed(samples: np.ndarray) -> bool:
        overlap = abs(np.vdot(samples[-1], samples[0]))
        return bool(overlap >= 1.0 - CLOSURE_TOL)

    return (
        BlochPath(samples=lower_samples, closed=_closed(lower_samples)),
        BlochPath(samples=upper_samples, closed=_closed(upper_samples)),
    )


def path_geometric_phase(path: BlochPath) -> float:
    """Pancharatnam phase of a sampled path, in (-pi, pi].

    gamma = -Arg of the product of consecutive overlaps, the closing
    overlap included; invariant under regauging any individual sample.
    Consecutive overlaps with modulus below 0.5 indicate that the
    sampling is too coarse to track the state and raise.
    """
    samples = path.samples
    k = samples.shape[0]
    product = complex(1.0)
    for i in range(k):
        nxt = samples[(i + 1) % k]
        overlap = complex(np.vdot(samples[i], nxt))
        if abs(overlap) < MIN_PATH_OVERLAP:
            raise ValueError(
                f"consecutive overlap modulus {abs(overlap):.3f} < {MIN_PATH_OVERLAP}; "
                "path sampling too coarse"
            )
        product *= overlap / abs(overlap)
    return -cmath.phase(product)


def solid_angle_phase(theta: float) -> float:
    """Half the solid angle of a polar-cap loop: pi (1 - cos theta)."""
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    return math.pi * (1.0 - math.cos(theta))
