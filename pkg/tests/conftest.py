"""Shared independent oracles for the test suite.

The Hamiltonians here are assembled from explicit ladder-operator
matrices with Kronecker products, independently of the index formulas
used by the package builders.
"""

import numpy as np
import pytest

from cavityberry.model import LambdaParams, TwoLevelParams


def annihilation(dim: int) -> np.ndarray:
    a = np.zeros((dim, dim))
    for n in range(dim - 1):
        a[n, n + 1] = np.sqrt(n + 1.0)
    return a


def kron_rabi(params: TwoLevelParams, n_max: int) -> np.ndarray:
    """omega a'a + nu/2 sz + lam (s+ a + s- a') + lam_nr (s+ a' + s- a)."""
    dim = n_max + 1
    a = annihilation(dim)
    ad = a.T
    i_f = np.eye(dim)
    i_a = np.eye(2)
    sz = np.diag([-1.0, 1.0])              # basis order (g, e)
    sp = np.array([[0.0, 0.0], [1.0, 0.0]])  # |e><g|
    sm = sp.T
    return (
        params.omega * np.kron(ad @ a, i_a)
        + params.nu / 2.0 * np.kron(i_f, sz)
        + params.lam * (np.kron(a, sp) + np.kron(ad, sm))
        + params.lam_nr * (np.kron(ad, sp) + np.kron(a, sm))
    )


def kron_lambda(params: LambdaParams, n_max: int) -> np.ndarray:
    """omega0 b'b + sum_l omega_l |l><l| + eta (b+b') (1<->3 + 2<->3)."""
    dim = n_max + 1
    b = annihilation(dim)
    bd = b.T
    i_a = np.eye(3)
    atom = np.diag([params.omega1, params.omega2, params.omega3])
    v = np.array([
        [0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0],
        [1.0, 1.0, 0.0],
    ])
    return (
        params.omega0 * np.kron(bd @ b, i_a)
        + np.kron(np.eye(dim), atom)
        + params.eta * np.kron(b + bd, v)
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
