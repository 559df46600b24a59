import numpy as np
import pytest

from cohwit import linalg
from cohwit.errors import DimensionError, InvalidOperator, InvalidParameter, InvalidState
from cohwit.states import random_hermitian, random_pure, random_unitary

PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)


class TestEigh:
    def test_diagonal(self):
        w, v = linalg.eigh(np.diag([2.0, 1.0]))
        assert np.allclose(w, [1.0, 2.0])
        assert np.allclose(np.abs(v), [[0.0, 1.0], [1.0, 0.0]])

    def test_antidiagonal_closed_form(self):
        # characteristic polynomial: lambda^2 - 1/4
        w, _ = linalg.eigh(np.array([[0.0, -0.5], [-0.5, 0.0]]))
        assert np.allclose(w, [-0.5, 0.5], atol=1e-14)

    def test_identity(self):
        w, _ = linalg.eigh(np.eye(3))
        assert np.allclose(w, 1.0)

    def test_ascending_order(self):
        w, _ = linalg.eigh(random_hermitian(9, seed=3))
        assert np.all(np.diff(w) >= 0)

    def test_rejects_non_square(self):
        with pytest.raises(InvalidOperator):
            linalg.eigh(np.zeros((2, 3)))

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvalidOperator):
            linalg.eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidOperator):
            linalg.eigh(np.array([[np.nan, 0.0], [0.0, 0.0]]))

    def test_reconstruction_500_random(self):
        rng = np.random.default_rng(42)
        for trial in range(500):
            dim = int(rng.integers(2, 17))
            m = random_hermitian(dim, seed=int(rng.integers(0, 2**31)))
            w, v = linalg.eigh(m)
            err = np.linalg.norm(m - (v * w) @ v.conj().T)
            assert err <= 1e-10 * max(1.0, np.linalg.norm(m))
            # orthonormal columns
            assert np.abs(v.conj().T @ v - np.eye(dim)).max() < 1e-12


class TestIsPsd:
    def test_zero(self):
        assert linalg.is_psd(np.zeros((2, 2)), tol=1e-10)

    def test_antidiagonal_not_psd(self):
        assert not linalg.is_psd(np.array([[0.0, -0.5], [-0.5, 0.0]]), tol=1e-10)

    def test_positive_diagonal(self):
        assert linalg.is_psd(np.diag([0.5, 0.5]), tol=1e-10)

    def test_negative_tol_rejected(self):
        with pytest.raises(InvalidParameter):
            linalg.is_psd(np.eye(2), tol=-1.0)

    def test_matches_cholesky_oracle(self):
        # Independent check: cholesky(M + tol I) succeeds iff min eig > -tol.
        rng = np.random.default_rng(11)
        tol = 1e-10
        checked = 0
        while checked < 200:
            dim = int(rng.integers(2, 9))
            lam = rng.uniform(-0.5, 1.0, size=dim)
            if np.abs(lam + tol).min() < 1e-6:
                continue
            u = random_unitary(dim, seed=int(rng.integers(0, 2**31)))
            m = (u * lam) @ u.conj().T
            m = (m + m.conj().T) / 2
            try:
                np.linalg.cholesky(m + tol * np.eye(dim))
                psd = True
            except np.linalg.LinAlgError:
                psd = False
            assert linalg.is_psd(m, tol) == psd == (lam.min() > -tol)
            checked += 1


class TestFidelityPure:
    def test_identical(self):
        zero = np.array([1.0, 0.0], dtype=complex)
        assert linalg.fidelity_pure(np.outer(zero, zero), zero) == 1.0

    def test_orthogonal(self):
        zero = np.array([1.0, 0.0], dtype=complex)
        one = np.array([0.0, 1.0], dtype=complex)
        assert linalg.fidelity_pure(np.outer(zero, zero), one) == 0.0

    def test_plus_against_zero(self):
        rho = np.outer(PLUS, PLUS.conj())
        assert linalg.fidelity_pure(rho, [1.0, 0.0]) == pytest.approx(0.5, abs=1e-14)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            linalg.fidelity_pure(np.eye(2) / 2, np.array([1.0, 0.0, 0.0]))

    def test_range_on_random_inputs(self):
        from cohwit.states import random_density

        rng = np.random.default_rng(5)
        for _ in range(100):
            dim = int(rng.integers(1, 12))
            rho = random_density(dim, seed=int(rng.integers(0, 2**31)))
            phi = random_pure(dim, seed=int(rng.integers(0, 2**31)))
            f = linalg.fidelity_pure(rho, phi)
            assert -1e-10 <= f <= 1 + 1e-10


class TestUnitaryExp:
    def test_relative_phase(self):
        u = linalg.unitary_exp(np.diag([0.0, 1.0]), np.pi)
        assert np.allclose(u, np.diag([1.0, -1.0]), atol=1e-14)

    def test_zero_angle(self):
        h = random_hermitian(5, seed=1)
        assert np.allclose(linalg.unitary_exp(h, 0.0), np.eye(5), atol=1e-14)

    def test_scalar_hamiltonian(self):
        u = linalg.unitary_exp(np.eye(2), np.pi / 2)
        assert np.allclose(u, -1j * np.eye(2), atol=1e-14)

    def test_unitarity_and_group_law(self):
        rng = np.random.default_rng(8)
        for _ in range(25):
            dim = int(rng.integers(2, 9))
            h = random_hermitian(dim, seed=int(rng.integers(0, 2**31)))
            a, b = rng.uniform(-3, 3, size=2)
            ua, ub = linalg.unitary_exp(h, a), linalg.unitary_exp(h, b)
            assert np.linalg.norm(ua.conj().T @ ua - np.eye(dim)) <= 1e-10
            assert np.linalg.norm(ua @ ub - linalg.unitary_exp(h, a + b)) <= 1e-10


class TestValidators:
    def test_state_vector_norm(self):
        with pytest.raises(InvalidState):
            linalg.require_state_vector([1.0, 1.0])
        linalg.require_state_vector(PLUS)

    def test_density_trace(self):
        with pytest.raises(InvalidState, match="trace"):
            linalg.require_density(np.eye(2))

    def test_density_negative_eigenvalue(self):
        with pytest.raises(InvalidState, match="eigenvalue"):
            linalg.require_density(np.diag([1.5, -0.5]))
