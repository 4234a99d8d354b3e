"""Dense real-symmetric eigensolver and truncation-convergence control.

The eigensolver is implemented here rather than delegated to LAPACK:
Householder reduction to tridiagonal form followed by the implicit-shift
QL iteration, with plane rotations accumulated into the eigenvector
matrix.  Matrices in this package stay below a few thousand rows, so the
classic O(n^3) dense route is both adequate and easy to audit; the inner
loops are JIT-compiled with numba.

Truncation control repeatedly diagonalizes a model at growing Fock
cutoffs until a caller-chosen ground-state observable stops moving.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from numba import njit

from .model import BasisLabel, FockTruncation, SymmetricMatrix

# Split threshold for the QL iteration (relative to neighboring diagonal
# magnitudes) and the per-eigenvalue iteration cap.  Robustness over
# speed: these matrices are small and well scaled.
QL_REL_TOL = 1e-12
QL_MAX_ITER = 30

# Eigenvalues closer than this (relative to the spectral scale) are
# treated as one degenerate cluster; individual vectors inside a cluster
# are an arbitrary orthonormal choice.
DEGENERACY_RTOL = 1e-9


class EigensolverError(RuntimeError):
    """QL iteration failed to converge within the iteration cap."""

    def __init__(self, message: str, iterations: int):
        super().__init__(message)
        self.iterations = iterations


@njit(cache=True)
def _tred2(a, d, e):
    """Householder reduction of symmetric a to tridiagonal form.

    On exit d holds the diagonal, e the subdiagonal (e[0] unused), and a
    is overwritten with the accumulated orthogonal transform Q such that
    Q^T A Q is tridiagonal.
    """
    n = a.shape[0]
    for i in range(n - 1, 0, -1):
        l = i - 1
        h = 0.0
        if l > 0:
            scale = 0.0
            for k in range(l + 1):
                scale += abs(a[i, k])
            if scale == 0.0:
                e[i] = a[i, l]
            else:
                for k in range(l + 1):
                    a[i, k] /= scale
                    h += a[i, k] * a[i, k]
                f = a[i, l]
                g = -math.sqrt(h) if f >= 0.0 else math.sqrt(h)
                e[i] = scale * g
                h -= f * g
                a[i, l] = f - g
                f = 0.0
                for j in range(l + 1):
                    a[j, i] = a[i, j] / h
                    g = 0.0
                    for k in range(j + 1):
                        g += a[j, k] * a[i, k]
                    for k in range(j + 1, l + 1):
                        g += a[k, j] * a[i, k]
                    e[j] = g / h
                    f += e[j] * a[i, j]
                hh = f / (h + h)
                for j in range(l + 1):
                    f = a[i, j]
                    g = e[j] - hh * f
                    e[j] = g
                    for k in range(j + 1):
                        a[j, k] -= f * e[k] + g * a[i, k]
        else:
            e[i] = a[i, l]
        d[i] = h
    d[0] = 0.0
    e[0] = 0.0
    for i in range(n):
        l = i
        if d[i] != 0.0:
            for j in range(l):
                g = 0.0
                for k in range(l):
                    g += a[i, k] * a[k, j]
                for k in range(l):
                    a[k, j] -= g * a[k, i]
        d[i] = a[i, i]
        a[i, i] = 1.0
        for j in range(l):
            a[j, i] = 0.0
            a[i, j] = 0.0


@njit(cache=True)
def _tqli(d, e, z, rel_tol, max_iter):
    """Implicit-shift QL iteration on a symmetric tridiagonal matrix.

    d and e are the diagonal/subdiagonal from _tred2, z the accumulated
    transform; on success d holds eigenvalues and the columns of z the
    eigenvectors.  Returns -1, or the index whose eigenvalue failed to
    converge within max_iter iterations.
    """
    n = d.shape[0]
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    for l in range(n):
        niter = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= rel_tol * dd:
                    break
                m += 1
            if m == l:
                break
            niter += 1
            if niter > max_iter:
                return l
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            sgn = r if g >= 0.0 else -r
            g = d[m] - d[l] + e[l] / (g + sgn)
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for k in range(n):
                    f = z[k, i + 1]
                    z[k, i + 1] = s * z[k, i] + c * f
                    z[k, i] = c * z[k, i] - s * f
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


@dataclass(frozen=True)
class SpectralResult:
    """Full eigendecomposition of a truncated-model matrix.

    eigenvalues are ascending; eigenvectors[:, i] belongs to
    eigenvalues[i] and the columns are orthonormal.  residual is
    max_i ||H v_i - E_i v_i||_inf.  converged refers to the Fock
    truncation (set by converge_truncation; plain eigh results are
    converged by construction since the iteration raises otherwise).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    basis: list[BasisLabel] | None
    n_max_used: int | None
    converged: bool
    residual: float


def eigh(m: SymmetricMatrix, basis: list[BasisLabel] | None = None,
         residual_rtol: float = 1e-9) -> SpectralResult:
    """Diagonalize a real symmetric matrix (Householder + implicit QL).

    The residual max_i ||H v_i - E_i v_i||_inf is computed and required
    to stay below residual_rtol * ||H||_inf; failure of either the QL
    iteration or that bound raises EigensolverError.
    """
    h = m.entries
    n = m.dim
    if basis is not None and len(basis) != n:
        raise ValueError(f"basis has {len(basis)} labels for a dim-{n} matrix")
    z = np.array(h, dtype=np.float64, order="C", copy=True)
    d = np.zeros(n)
    e = np.zeros(n)
    _tred2(z, d, e)
    status = _tqli(d, e, z, QL_REL_TOL, QL_MAX_ITER)
    if status >= 0:
        raise EigensolverError(
            f"QL iteration for eigenvalue index {status} did not converge "
            f"within {QL_MAX_ITER} iterations",
            iterations=QL_MAX_ITER,
        )
    order = np.argsort(d, kind="stable")
    eigenvalues = d[order]
    eigenvectors = z[:, order]
    residual = float(np.max(np.abs(h @ eigenvectors - eigenvectors * eigenvalues))) if n else 0.0
    scale = float(np.max(np.abs(h).sum(axis=1)))
    if residual > residual_rtol * max(scale, 1e-300):
        raise EigensolverError(
            f"eigenpair residual {residual:.3e} exceeds "
            f"{residual_rtol:.1e} * ||H||_inf = {residual_rtol * scale:.3e}",
            iterations=QL_MAX_ITER,
        )
    eigenvalues.setflags(write=False)
    eigenvectors.setflags(write=False)
    n_max_used = max(b.photon_n for b in basis) if basis else None
    return SpectralResult(
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        basis=basis,
        n_max_used=n_max_used,
        converged=True,
        residual=residual,
    )


def ground_state(result: SpectralResult) -> tuple[float, np.ndarray]:
    """Lowest eigenpair of a spectral result."""
    return float(result.eigenvalues[0]), result.eigenvectors[:, 0]


def degenerate_clusters(eigenvalues: np.ndarray,
                        rtol: float = DEGENERACY_RTOL) -> list[list[int]]:
    """Group indices of eigenvalues lying within rtol of each other.

    The threshold is relative to the spectral scale max(|E|, 1); inside a
    returned cluster individual eigenvectors are basis-arbitrary and only
    the spanned subspace is meaningful.
    """
    n = len(eigenvalues)
    if n == 0:
        return []
    scale = max(float(np.max(np.abs(eigenvalues))), 1.0)
    clusters: list[list[int]] = [[0]]
    for i in range(1, n):
        if eigenvalues[i] - eigenvalues[i - 1] <= rtol * scale:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return clusters


MatrixBuilder = Callable[[FockTruncation], tuple[SymmetricMatrix, list[BasisLabel]]]
GroundObservable = Callable[[np.ndarray, list[BasisLabel]], float]


def converge_truncation(builder: MatrixBuilder, observable: GroundObservable,
                        tol: float, n_start: int = 20, n_step: int = 20,
                        n_cap: int = 400) -> tuple[SpectralResult, float]:
    """Grow the Fock cutoff until a ground-state observable stabilizes.

    Diagonalizes at n_max = n_start, then at increasing cutoffs (the step
    doubles after every failed comparison, capping the number of full
    diagonalizations) until the observable of the ground state changes by
    less than tol between consecutive truncations.  Returns the final
    result and observable value; if n_cap is reached without agreement
    the result is flagged converged=False rather than raising, so sweeps
    can record the failure in-band.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if n_start < 1 or n_step < 1 or n_cap < 1:
        raise ValueError("n_start, n_step and n_cap must all be >= 1")

    n = min(n_start, n_cap)
    matrix, basis = builder(FockTruncation(n))
    result = eigh(matrix, basis)
    value = observable(result.eigenvectors[:, 0], basis)
    if n >= n_cap:
        return replace(result, converged=False), value

    step = n_step
    while True:
        n_next = min(n + step, n_cap)
        matrix, basis = builder(FockTruncation(n_next))
        result = eigh(matrix, basis)
        value_next = observable(result.eigenvectors[:, 0], basis)
        if abs(value_next - value) < tol:
            return result, value_next
        if n_next >= n_cap:
            return replace(result, converged=False), value_next
        n, value = n_next, value_next
        step *= 2
