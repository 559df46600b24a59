import numpy as np
import pytest

from cohwit import check_block_incoherent, require_density, standard_basis
from cohwit.errors import InvalidDimension, InvalidParameter
from cohwit.states import (
    maximally_mixed,
    noisy_w_state,
    pure_density,
    random_block_incoherent,
    random_density,
    random_hermitian,
    random_projector_set,
    random_pure,
    random_unitary,
    w_state,
)

from conftest import random_sizes


def permute_qubits(vec: np.ndarray, perm: list[int]) -> np.ndarray:
    """Reorder tensor factors of an N-qubit state (big-endian bit indexing)."""
    n = len(perm)
    out = np.empty_like(vec)
    for index in range(vec.shape[0]):
        bits = [(index >> (n - 1 - q)) & 1 for q in range(n)]
        target = 0
        for q in range(n):
            target |= bits[perm[q]] << (n - 1 - q)
        out[target] = vec[index]
    return out


class TestWState:
    def test_two_qubits(self):
        # (|01> + |10>)/sqrt(2): amplitude on indices 1 and 2 only
        vec = w_state(2)
        expected = np.zeros(4, dtype=complex)
        expected[1] = expected[2] = 1 / np.sqrt(2)
        assert np.array_equal(vec, expected)

    def test_four_qubits_amplitudes(self):
        vec = w_state(4)
        support = [1, 2, 4, 8]
        assert np.allclose(vec[support], 0.5)
        assert np.count_nonzero(vec) == 4

    @pytest.mark.parametrize("n", range(2, 9))
    def test_unit_norm(self, n):
        assert np.linalg.norm(w_state(n)) == pytest.approx(1.0, abs=1e-14)

    def test_rejects_single_qubit(self):
        with pytest.raises(InvalidDimension):
            w_state(1)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_permutation_invariance(self, n):
        vec = w_state(n)
        rng = np.random.default_rng(n)
        perms = [list(range(n))[::-1]]
        for _ in range(4):
            perms.append(list(rng.permutation(n)))
        for perm in perms:
            assert np.array_equal(permute_qubits(vec, perm), vec)


class TestNoisyWState:
    def test_pure_limit(self):
        assert np.allclose(noisy_w_state(3, 1.0), pure_density(w_state(3)), atol=1e-14)

    def test_mixed_limit(self):
        assert np.allclose(noisy_w_state(3, 0.0), maximally_mixed(8), atol=1e-14)

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidParameter):
            noisy_w_state(3, 1.5)
        with pytest.raises(InvalidParameter):
            noisy_w_state(3, -0.1)

    def test_valid_density(self):
        require_density(noisy_w_state(4, 0.37))


class TestRandomFactories:
    def test_density_validity_many_draws(self):
        rng = np.random.default_rng(1)
        for _ in range(1000):
            dim = int(rng.integers(2, 33))
            require_density(random_density(dim, seed=int(rng.integers(0, 2**31))))

    def test_density_deterministic(self):
        assert np.array_equal(random_density(6, seed=9), random_density(6, seed=9))

    def test_density_scalar(self):
        assert np.allclose(random_density(1, seed=0), [[1.0]])

    def test_unitary_is_unitary(self):
        u = random_unitary(7, seed=2)
        assert np.linalg.norm(u @ u.conj().T - np.eye(7)) <= 1e-12

    def test_hermitian_is_hermitian(self):
        h = random_hermitian(6, seed=3)
        assert np.abs(h - h.conj().T).max() == 0.0

    def test_pure_is_normalized(self):
        assert np.linalg.norm(random_pure(5, seed=4)) == pytest.approx(1.0, abs=1e-14)

    def test_projector_set_ranks(self):
        blocks = random_projector_set([2, 3, 1], seed=5)
        assert blocks.ranks == (2, 3, 1)
        assert blocks.dim == 6

    def test_block_incoherent_passes_check(self):
        rng = np.random.default_rng(6)
        for _ in range(25):
            dim = int(rng.integers(2, 17))
            blocks = random_projector_set(random_sizes(rng, dim), seed=int(rng.integers(0, 2**31)))
            delta = random_block_incoherent(blocks, seed=int(rng.integers(0, 2**31)))
            require_density(delta)
            assert check_block_incoherent(delta, blocks, tol=1e-10).incoherent

    def test_block_incoherent_standard_basis_is_diagonal(self):
        delta = random_block_incoherent(standard_basis(5), seed=7)
        off = delta - np.diag(np.diag(delta))
        assert np.abs(off).max() <= 1e-14
