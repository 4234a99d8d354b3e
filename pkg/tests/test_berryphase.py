import math

import numpy as np
import pytest

from cavityberry.berryphase import (
    berry_phase_formula,
    jc_doublet_phase,
    mean_photon,
    pancharatnam_loop,
)
from cavityberry.model import (
    FockTruncation,
    TwoLevelParams,
    build_rabi_matrix,
    two_level_labels,
)
from cavityberry.spectra import eigh

TWO_PI = 2.0 * math.pi


def basis_state(basis, photon_n, level):
    state = np.zeros(len(basis))
    for i, b in enumerate(basis):
        if b.photon_n == photon_n and b.atomic_level == level:
            state[i] = 1.0
            return state
    raise AssertionError("label not found")


def coherent_profile(basis, alpha, level="g"):
    state = np.zeros(len(basis))
    for i, b in enumerate(basis):
        if b.atomic_level == level:
            state[i] = math.exp(-alpha**2 / 2.0) * alpha**b.photon_n / math.sqrt(
                math.factorial(b.photon_n))
    return state / np.linalg.norm(state)


class TestMeanPhoton:
    def setup_method(self):
        self.trunc = FockTruncation(6)
        self.basis = two_level_labels(self.trunc)

    def test_vacuum(self):
        assert mean_photon(basis_state(self.basis, 0, "g"), self.basis) == 0.0

    def test_fock_state(self):
        assert mean_photon(basis_state(self.basis, 3, "e"), self.basis) == 3.0

    def test_equal_superposition(self):
        state = (basis_state(self.basis, 0, "e") + basis_state(self.basis, 1, "g")) / math.sqrt(2)
        assert mean_photon(state, self.basis) == pytest.approx(0.5, abs=1e-15)

    def test_rejects_unnormalized(self):
        state = basis_state(self.basis, 0, "g") * 1.1
        with pytest.raises(ValueError):
            mean_photon(state, self.basis)

    def test_rejects_basis_mismatch(self):
        with pytest.raises(ValueError):
            mean_photon(np.array([1.0, 0.0]), self.basis)


class TestFormula:
    def setup_method(self):
        self.basis = two_level_labels(FockTruncation(6))

    def test_jc_ground_state_zero(self):
        res = berry_phase_formula(basis_state(self.basis, 0, "g"), self.basis)
        assert res.gamma == 0.0
        assert res.method == "formula"

    def test_resonant_lower_dressed_state(self):
        state = (basis_state(self.basis, 0, "e") - basis_state(self.basis, 1, "g")) / math.sqrt(2)
        res = berry_phase_formula(state, self.basis)
        assert res.gamma == pytest.approx(math.pi, abs=1e-14)

    def test_gamma_is_two_pi_mean_photon(self):
        state = coherent_profile(self.basis, 1.2)
        res = berry_phase_formula(state, self.basis)
        assert res.gamma == TWO_PI * res.mean_photon

    def test_rabi_ground_state_positive(self):
        p = TwoLevelParams(1.0, 1.0, 0.5, 0.5)
        trunc = FockTruncation(40)
        basis = two_level_labels(trunc)
        res = eigh(build_rabi_matrix(p, trunc), basis)
        gamma = berry_phase_formula(res.eigenvectors[:, 0], basis).gamma
        assert gamma > 0.0


class TestPancharatnamLoop:
    def setup_method(self):
        self.basis = two_level_labels(FockTruncation(6))

    def test_vacuum_exact_zero(self):
        res = pancharatnam_loop(basis_state(self.basis, 0, "g"), self.basis, steps=16)
        assert res.gamma == 0.0
        assert res.loop_steps == 16

    def test_equal_superposition_converges_to_pi(self):
        state = (basis_state(self.basis, 0, "e") + basis_state(self.basis, 1, "g")) / math.sqrt(2)
        res = pancharatnam_loop(state, self.basis, steps=1024)
        assert res.gamma == pytest.approx(math.pi, abs=1e-3)

    def test_matches_formula_on_rabi_ground_state(self):
        p = TwoLevelParams(1.0, 1.0, 1.0, 1.0)
        trunc = FockTruncation(60)
        basis = two_level_labels(trunc)
        res = eigh(build_rabi_matrix(p, trunc), basis)
        state = res.eigenvectors[:, 0]
        f = berry_phase_formula(state, basis)
        o = pancharatnam_loop(state, basis, steps=4096)
        assert o.gamma == pytest.approx(f.gamma, abs=1e-4)

    def test_error_scales_inverse_square_and_records_constant(self):
        state = coherent_profile(self.basis, 1.3)
        exact = berry_phase_formula(state, self.basis).gamma
        steps_grid = (64, 256, 1024)
        errors = [abs(pancharatnam_loop(state, self.basis, s).gamma - exact)
                  for s in steps_grid]
        assert errors[0] > errors[1] > errors[2]
        # quadratic convergence: quadrupling steps cuts the error ~16x
        assert errors[0] / errors[1] > 6.0
        assert errors[1] / errors[2] > 6.0
        c_observed = max(e * s for e, s in zip(errors, steps_grid))
        print(f"pancharatnam observed C (error*steps bound): {c_observed:.3e}")
        assert all(e <= c_observed / s + 1e-15 for e, s in zip(errors, steps_grid))

    def test_rejects_too_few_steps(self):
        with pytest.raises(ValueError):
            pancharatnam_loop(basis_state(self.basis, 0, "g"), self.basis, steps=7)

    def test_rejects_tiny_overlap(self):
        # equal weight on n=0 and n=6 with steps=12 puts the two phasors
        # nearly opposite: |o| = |cos(pi/2 - eps)| ~ 0 < 0.1
        state = (basis_state(self.basis, 0, "g") + basis_state(self.basis, 6, "g")) / math.sqrt(2)
        with pytest.raises(ValueError):
            pancharatnam_loop(state, self.basis, steps=12)


class TestJCDoubletPhase:
    def test_resonant_doublet_both_pi(self):
        p = TwoLevelParams(1.0, 1.0, 0.3, 0.0)
        lo, hi = jc_doublet_phase(0, p)
        assert lo == pytest.approx(math.pi, abs=1e-14)
        assert hi == pytest.approx(math.pi, abs=1e-14)

    def test_unmixed_limit(self):
        # lam -> 0+ at Delta > 0: phases approach {0, 2pi}
        p = TwoLevelParams(1.0, 1.5, 1e-9, 0.0)
        lo, hi = jc_doublet_phase(0, p)
        assert sorted((lo, hi)) == pytest.approx([0.0, TWO_PI], abs=1e-8)

    def test_against_block_diagonalization(self):
        # n=1, Delta=1, lam=0.5: weights from the 2x2 block
        # [[Delta/2, lam*sqrt(2)], [lam*sqrt(2), -Delta/2]]
        n, delta, lam = 1, 1.0, 0.5
        p = TwoLevelParams(1.0, 1.0 + delta, lam, 0.0)
        block = np.array([[delta / 2.0, lam * math.sqrt(2.0)],
                          [lam * math.sqrt(2.0), -delta / 2.0]])
        vals, vecs = np.linalg.eigh(block)     # basis (|n,e>, |n+1,g>)
        w_lower, w_upper = vecs[1, 0] ** 2, vecs[1, 1] ** 2
        lo, hi = jc_doublet_phase(n, p)
        assert lo == pytest.approx(TWO_PI * (n + w_lower), abs=1e-12)
        assert hi == pytest.approx(TWO_PI * (n + w_upper), abs=1e-12)

    @pytest.mark.parametrize("n", [0, 1, 4])
    @pytest.mark.parametrize("delta", [-0.7, 0.0, 0.5, 2.0])
    def test_sum_rule(self, n, delta):
        p = TwoLevelParams(1.0, 1.0 + delta, 0.4, 0.0)
        lo, hi = jc_doublet_phase(n, p)
        assert lo + hi == pytest.approx(TWO_PI * (2 * n + 1), abs=1e-12)

    def test_consistency_with_numerical_eigenvectors(self):
        # every JC eigenvector's formula phase matches the closed form of
        # its doublet within 1e-8
        omega, nu, lam, n_max = 1.0, 1.4, 0.3, 8
        p = TwoLevelParams(omega, nu, lam, 0.0)
        trunc = FockTruncation(n_max)
        basis = two_level_labels(trunc)
        res = eigh(build_rabi_matrix(p, trunc), basis)
        for n in range(n_max - 1):
            closed = jc_doublet_phase(n, p)
            r = math.hypot((nu - omega) / 2.0, lam * math.sqrt(n + 1.0))
            for energy, gamma_ref in zip(
                ((n + 0.5) * omega - r, (n + 0.5) * omega + r), closed
            ):
                idx = int(np.argmin(np.abs(res.eigenvalues - energy)))
                gamma_num = berry_phase_formula(res.eigenvectors[:, idx], basis).gamma
                assert gamma_num == pytest.approx(gamma_ref, abs=1e-8)

    def test_rejects_counter_rotating(self):
        p = TwoLevelParams(1.0, 1.0, 0.3, 0.3)
        with pytest.raises(ValueError):
            jc_doublet_phase(0, p)

    def test_rejects_negative_rung(self):
        p = TwoLevelParams(1.0, 1.0, 0.3, 0.0)
        with pytest.raises(ValueError):
            jc_doublet_phase(-1, p)
