"""Kronecker products, partial traces, Schmidt coefficients, concurrence."""

import math

import numpy as np
import pytest

from mzprobe.linalg import (
    CONSTRUCTION_TOL,
    IDENTITY_2,
    SIGMA_Y,
    SIGMA_Z,
    SchmidtPair,
    ValidationError,
    clamp01,
    concurrence_from_reduced,
    is_density,
    is_unitary,
    kron,
    partial_trace_particle,
    partial_trace_probe,
    projector,
    require_density,
    require_normalized,
    require_unitary,
    schmidt_coefficients,
)
from util import (
    charpoly_eigs_2x2,
    loop_kron,
    loop_trace_particle,
    loop_trace_probe,
    random_state,
    random_unitary,
)


class TestKron:
    def test_identity_times_identity(self):
        np.testing.assert_array_equal(kron(IDENTITY_2, IDENTITY_2), np.eye(4))

    def test_sigma_z_times_identity(self):
        np.testing.assert_array_equal(kron(SIGMA_Z, IDENTITY_2), np.diag([1, 1, -1, -1]).astype(complex))

    def test_matches_double_loop_oracle(self):
        rng = np.random.default_rng(7)
        np.testing.assert_allclose(kron(SIGMA_Y, SIGMA_Y), loop_kron(SIGMA_Y, SIGMA_Y), atol=0)
        a = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
        b = rng.standard_normal((2, 4)) + 1j * rng.standard_normal((2, 4))
        np.testing.assert_allclose(kron(a, b), loop_kron(a, b), atol=0)


class TestPartialTraces:
    def test_product_state_recovers_particle(self):
        m = random_state(np.random.default_rng(0), 3)
        rho = kron(projector(np.array([1, 0])), projector(m))
        np.testing.assert_allclose(partial_trace_probe(rho, 3), projector(np.array([1, 0])), atol=1e-14)

    def test_product_state_recovers_probe(self):
        m = random_state(np.random.default_rng(1), 4)
        rho = kron(projector(np.array([1, 0])), projector(m))
        np.testing.assert_allclose(partial_trace_particle(rho, 4), projector(m), atol=1e-14)

    def test_maximally_entangled_reduces_to_mixed(self):
        # (|1>|a> + |0>|b>)/sqrt(2) with <a|b> = 0
        psi = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
        rho = projector(psi)
        np.testing.assert_allclose(partial_trace_probe(rho, 2), np.eye(2) / 2, atol=1e-14)
        np.testing.assert_allclose(partial_trace_particle(rho, 2), np.eye(2) / 2, atol=1e-14)

    @pytest.mark.parametrize("d", [3, 4])
    def test_random_state_matches_index_sum_oracle(self, d):
        rng = np.random.default_rng(d)
        rho = projector(random_state(rng, 2 * d))
        np.testing.assert_allclose(partial_trace_probe(rho, d), loop_trace_probe(rho, d), atol=1e-14)
        np.testing.assert_allclose(partial_trace_particle(rho, d), loop_trace_particle(rho, d), atol=1e-14)

    def test_preserves_trace_and_hermiticity(self):
        rng = np.random.default_rng(5)
        for d in (2, 3, 5):
            rho = projector(random_state(rng, 2 * d))
            for reduced in (partial_trace_probe(rho, d), partial_trace_particle(rho, d)):
                assert abs(np.trace(reduced).real - 1.0) <= 1e-12
                assert np.max(np.abs(reduced - reduced.conj().T)) <= 1e-12

    def test_dimension_mismatch_raises(self):
        with pytest.raises(ValidationError) as err:
            partial_trace_probe(np.eye(6) / 6, 2)
        assert err.value.code == "bad-dims"


class TestSchmidt:
    def test_product_state_is_rank_one(self):
        rng = np.random.default_rng(2)
        psi = kron(random_state(rng, 2).reshape(2, 1), random_state(rng, 5).reshape(5, 1)).ravel()
        assert schmidt_coefficients(psi) == SchmidtPair(1.0, 0.0)

    def test_balanced_orthogonal_state(self):
        psi = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
        pair = schmidt_coefficients(psi)
        np.testing.assert_allclose(pair, (0.5, 0.5), atol=1e-14)

    @pytest.mark.parametrize("d", [2, 3, 6])
    def test_matches_characteristic_polynomial_scan(self, d):
        rng = np.random.default_rng(10 + d)
        psi = random_state(rng, 2 * d)
        pair = schmidt_coefficients(psi)
        amps = psi.reshape(2, d)
        roots = charpoly_eigs_2x2(amps @ amps.conj().T)
        assert len(roots) == 2
        np.testing.assert_allclose(pair, roots, atol=1e-10)

    def test_ordering_and_sum(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            pair = schmidt_coefficients(random_state(rng, 8))
            assert 0.0 <= pair.lambda2 <= pair.lambda1 <= 1.0
            assert abs(pair.lambda1 + pair.lambda2 - 1.0) <= 1e-12

    def test_invariant_under_local_unitaries(self):
        rng = np.random.default_rng(4)
        for d in (2, 4):
            psi = random_state(rng, 2 * d)
            before = schmidt_coefficients(psi)
            rotated = kron(random_unitary(rng, 2), random_unitary(rng, d)) @ psi
            after = schmidt_coefficients(rotated)
            np.testing.assert_allclose(before, after, atol=1e-10)

    def test_spread_determinant_identity(self):
        # (lam1 - lam2)^2 + 4 det(rho1) = 1 for every normalized pure state
        rng = np.random.default_rng(6)
        for d in (2, 3, 7):
            psi = random_state(rng, 2 * d)
            lam1, lam2 = schmidt_coefficients(psi)
            rho1 = partial_trace_probe(projector(psi), d)
            det = float(np.linalg.det(rho1).real)
            assert abs((lam1 - lam2) ** 2 + 4.0 * det - 1.0) <= 1e-10

    def test_rejects_unnormalized(self):
        with pytest.raises(ValidationError) as err:
            schmidt_coefficients(np.array([1.0, 0, 0, 1.0]))
        assert err.value.code == "not-normalized"

    def test_rejects_odd_dimension(self):
        with pytest.raises(ValidationError) as err:
            schmidt_coefficients(np.array([1.0, 0, 0, 0, 0, 0, 0]) )
        assert err.value.code == "bad-dims"


class TestConcurrence:
    def test_maximally_mixed_reduced_state(self):
        assert concurrence_from_reduced(np.eye(2) / 2) == 1.0

    def test_pure_reduced_state(self):
        assert concurrence_from_reduced(projector(np.array([1, 0]))) == 0.0

    def test_diagonal_example(self):
        assert abs(concurrence_from_reduced(np.diag([0.8, 0.2])) - 0.8) <= 1e-15

    def test_equals_schmidt_geometric_mean(self):
        rng = np.random.default_rng(8)
        for d in (2, 5):
            psi = random_state(rng, 2 * d)
            lam1, lam2 = schmidt_coefficients(psi)
            c = concurrence_from_reduced(partial_trace_probe(projector(psi), d))
            assert abs(c - 2.0 * math.sqrt(lam1 * lam2)) <= 1e-10

    def test_negative_determinant_raises(self):
        with pytest.raises(ValidationError) as err:
            concurrence_from_reduced(np.diag([1.5, -0.5]))
        assert err.value.code == "not-a-density"


class TestValidation:
    def test_clamp_within_tolerance(self):
        assert clamp01(-5e-13) == 0.0
        assert clamp01(1.0 + 5e-13) == 1.0
        assert clamp01(0.25) == 0.25

    def test_clamp_beyond_tolerance_raises(self):
        with pytest.raises(ValidationError):
            clamp01(-1e-6)
        with pytest.raises(ValidationError):
            clamp01(1.0 + 1e-6)

    def test_unitary_predicate(self):
        rng = np.random.default_rng(9)
        u = random_unitary(rng, 4)
        assert is_unitary(u)
        require_unitary(u)
        assert not is_unitary(u * 1.01)
        with pytest.raises(ValidationError) as err:
            require_unitary(u * 1.01)
        assert err.value.code == "not-unitary"

    def test_density_predicate(self):
        good = np.diag([0.3, 0.7]).astype(complex)
        assert is_density(good)
        require_density(good)
        assert not is_density(np.diag([1.2, -0.2]))
        with pytest.raises(ValidationError):
            require_density(np.diag([0.5, 0.6]))

    def test_normalization_predicate(self):
        require_normalized(np.array([1.0, 0.0]))
        with pytest.raises(ValidationError) as err:
            require_normalized(np.array([1.0, 1.0]))
        assert err.value.code == "not-normalized"

    def test_clamp_tolerance_matches_construction_constant(self):
        assert clamp01(-CONSTRUCTION_TOL) == 0.0
