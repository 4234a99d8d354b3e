"""Model parameters and truncated-Fock-space Hamiltonian matrices.

Two models are covered, with hbar = 1 and a single shared energy unit:

* the generalized Rabi model of a two-level atom in a single quantized mode,

      H = omega a'a + (nu/2) sigma_z + lam (sigma_+ a + sigma_- a')
                                     + lam_nr (sigma_+ a' + sigma_- a),

  which reduces to the Jaynes-Cummings model for lam_nr = 0 and to the
  standard Rabi model for lam_nr = lam;

* the Lambda-type three-level atom, lower levels |1>, |2> each dipole
  coupled to the upper level |3> (no direct 1 <-> 2 transition),

      H = omega0 b'b + sum_l omega_l |l><l|
          + eta (b + b') (|1><3| + |3><1| + |2><3| + |3><2|).

All couplings are real, so every matrix built here is real symmetric.
The basis is photon-major: index = (levels per atom) * n + atomic index,
which makes the matrices block tridiagonal in the photon number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_LEVEL = "two-level"
LAMBDA = "lambda"

_TWO_LEVEL_STATES = ("g", "e")
_LAMBDA_STATES = ("1", "2", "3")


def _require_finite(value: float, name: str) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class TwoLevelParams:
    """Frequencies and couplings of the generalized Rabi model.

    omega : field frequency (> 0)
    nu    : atomic eigenfrequency (> 0)
    lam   : rotating coupling, the sigma_+ a + sigma_- a' term (>= 0)
    lam_nr: counter-rotating coupling, the sigma_+ a' + sigma_- a term (>= 0)
    """

    omega: float
    nu: float
    lam: float
    lam_nr: float

    def __post_init__(self) -> None:
        for name in ("omega", "nu", "lam", "lam_nr"):
            _require_finite(getattr(self, name), name)
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.nu <= 0:
            raise ValueError(f"nu must be positive, got {self.nu}")
        if self.lam < 0:
            raise ValueError(f"lam must be non-negative, got {self.lam}")
        if self.lam_nr < 0:
            raise ValueError(f"lam_nr must be non-negative, got {self.lam_nr}")

    @property
    def is_jaynes_cummings(self) -> bool:
        """True when the counter-rotating coupling vanishes (RWA applies)."""
        return self.lam_nr == 0.0

    @property
    def is_standard_rabi(self) -> bool:
        """True when rotating and counter-rotating couplings coincide."""
        return self.lam_nr == self.lam

    @property
    def detuning(self) -> float:
        """Atom-field detuning nu - omega."""
        return self.nu - self.omega


@dataclass(frozen=True)
class LambdaParams:
    """Frequencies and coupling of the Lambda-type three-level model.

    omega0 : field frequency (> 0)
    omega1, omega2 : lower atomic level energies
    omega3 : upper atomic level energy (> omega1 and > omega2)
    eta    : atom-field coupling (>= 0)

    The simplifying assumption omega1 == omega2 is not imposed here; the
    closed-form variational solver requires it and validates it itself.
    """

    omega0: float
    omega1: float
    omega2: float
    omega3: float
    eta: float

    def __post_init__(self) -> None:
        for name in ("omega0", "omega1", "omega2", "omega3", "eta"):
            _require_finite(getattr(self, name), name)
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        if self.eta < 0:
            raise ValueError(f"eta must be non-negative, got {self.eta}")
        if not (self.omega3 > self.omega1 and self.omega3 > self.omega2):
            raise ValueError(
                "omega3 must exceed omega1 and omega2 (|3> is the upper level); "
                f"got omega1={self.omega1}, omega2={self.omega2}, omega3={self.omega3}"
            )


@dataclass(frozen=True)
class FockTruncation:
    """Hard Fock-space cutoff: occupations 0..n_max are retained."""

    n_max: int

    def __post_init__(self) -> None:
        if not isinstance(self.n_max, int) or isinstance(self.n_max, bool):
            raise ValueError(f"n_max must be an integer, got {self.n_max!r}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")

    @property
    def two_level_dim(self) -> int:
        return 2 * (self.n_max + 1)

    @property
    def lambda_dim(self) -> int:
        return 3 * (self.n_max + 1)


@dataclass(frozen=True)
class BasisLabel:
    """One basis vector |photon_n, atomic_level>.

    Ordering across the package is lexicographic with photon_n major and
    the atomic level minor ('g' < 'e' for two-level, '1' < '2' < '3' for
    the Lambda model).
    """

    photon_n: int
    atomic_level: str

    def __post_init__(self) -> None:
        if self.photon_n < 0:
            raise ValueError(f"photon_n must be >= 0, got {self.photon_n}")
        if self.atomic_level not in _TWO_LEVEL_STATES + _LAMBDA_STATES:
            raise ValueError(f"unknown atomic level {self.atomic_level!r}")


class SymmetricMatrix:
    """Dense real symmetric matrix with exact (bitwise) symmetry.

    Entries are stored as a read-only float64 array; both triangles are
    assigned from one formula by the builders, so entries[i, j] and
    entries[j, i] are the same float, not merely close.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: np.ndarray):
        arr = np.array(entries, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError(f"entries must be a nonempty square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must all be finite")
        if not np.array_equal(arr, arr.T):
            raise ValueError("matrix entries must be exactly symmetric")
        arr.setflags(write=False)
        self.entries = arr

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __repr__(self) -> str:  # pragma: no cover
        return f"SymmetricMatrix(dim={self.dim})"


def two_level_labels(trunc: FockTruncation) -> list[BasisLabel]:
    """Photon-major basis |0g>, |0e>, |1g>, |1e>, ..."""
    return [
        BasisLabel(n, s)
        for n in range(trunc.n_max + 1)
        for s in _TWO_LEVEL_STATES
    ]


def lambda_labels(trunc: FockTruncation) -> list[BasisLabel]:
    """Photon-major basis |0,1>, |0,2>, |0,3>, |1,1>, ..."""
    return [
        BasisLabel(n, s)
        for n in range(trunc.n_max + 1)
        for s in _LAMBDA_STATES
    ]


def build_rabi_matrix(params: TwoLevelParams, trunc: FockTruncation) -> SymmetricMatrix:
    """Matrix of the generalized Rabi Hamiltonian in the photon-major basis.

    Diagonal: <n,g| = n*omega - nu/2 and <n,e| = n*omega + nu/2.
    Rotating coupling:         <n,e|H|n+1,g> = lam * sqrt(n+1).
    Counter-rotating coupling: <n+1,e|H|n,g> = lam_nr * sqrt(n+1).
    """
    n_max = trunc.n_max
    dim = trunc.two_level_dim
    h = np.zeros((dim, dim))
    for n in range(n_max + 1):
        ig, ie = 2 * n, 2 * n + 1
        h[ig, ig] = n * params.omega - params.nu / 2.0
        h[ie, ie] = n * params.omega + params.nu / 2.0
    for n in range(n_max):
        root = math.sqrt(n + 1.0)
        ie, jg = 2 * n + 1, 2 * (n + 1)          # |n,e> <-> |n+1,g>
        h[ie, jg] = h[jg, ie] = params.lam * root
        ig, je = 2 * n, 2 * (n + 1) + 1          # |n,g> <-> |n+1,e>
        h[ig, je] = h[je, ig] = params.lam_nr * root
    return SymmetricMatrix(h)


def build_lambda_matrix(params: LambdaParams, trunc: FockTruncation) -> SymmetricMatrix:
    """Matrix of the Lambda-model Hamiltonian in the photon-major basis.

    Diagonal: <n,l| = n*omega0 + omega_l.  The field quadrature b + b'
    couples |n,1> and |n,2> to |n+-1,3> with magnitude eta*sqrt(max(n, n+-1));
    there is no |1> <-> |2> coupling at any photon number.
    """
    n_max = trunc.n_max
    dim = trunc.lambda_dim
    levels = (params.omega1, params.omega2, params.omega3)
    h = np.zeros((dim, dim))
    for n in range(n_max + 1):
        for l, omega_l in enumerate(levels):
            i = 3 * n + l
            h[i, i] = n * params.omega0 + omega_l
    for n in range(n_max):
        amp = params.eta * math.sqrt(n + 1.0)
        for l in (0, 1):                          # |n,1>/|n,2> <-> |n+1,3>
            i, j = 3 * n + l, 3 * (n + 1) + 2
            h[i, j] = h[j, i] = amp
        for l in (0, 1):                          # |n,3> <-> |n+1,1>/|n+1,2>
            i, j = 3 * n + 2, 3 * (n + 1) + l
            h[i, j] = h[j, i] = amp
    return SymmetricMatrix(h)


def parity_signs(model_kind: str, trunc: FockTruncation) -> np.ndarray:
    """Diagonal of the Z2 parity operator P, satisfying P H P = H.

    Two-level: |n,g> carries (-1)^n and |n,e> carries (-1)^(n+1).
    Lambda: |n,1> and |n,2> carry (-1)^n, |n,3> carries (-1)^(n+1).
    """
    if model_kind == TWO_LEVEL:
        signs = [
            (-1) ** (n + (1 if s == "e" else 0))
            for n in range(trunc.n_max + 1)
            for s in _TWO_LEVEL_STATES
        ]
    elif model_kind == LAMBDA:
        signs = [
            (-1) ** (n + (1 if s == "3" else 0))
            for n in range(trunc.n_max + 1)
            for s in _LAMBDA_STATES
        ]
    else:
        raise ValueError(f"model_kind must be {TWO_LEVEL!r} or {LAMBDA!r}, got {model_kind!r}")
    out = np.array(signs, dtype=np.float64)
    out.setflags(write=False)
    return out


def excitation_number_matrix(trunc: FockTruncation) -> SymmetricMatrix:
    """Total excitation number a'a + sigma_+ sigma_- (two-level basis).

    Commutes exactly with the Jaynes-Cummings matrix (lam_nr = 0); the
    counter-rotating terms violate the conservation.
    """
    diag = np.array(
        [n + (1 if s == "e" else 0) for n in range(trunc.n_max + 1) for s in _TWO_LEVEL_STATES],
        dtype=np.float64,
    )
    return SymmetricMatrix(np.diag(diag))
