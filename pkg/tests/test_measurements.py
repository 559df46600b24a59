import numpy as np
import pytest

from cohwit import (
    PovmSet,
    ProjectorSet,
    check_block_incoherent,
    check_povm_incoherent,
    dephase_block,
    dephase_povm,
    standard_basis,
    wstate_projector_family,
)
from cohwit.errors import DimensionError, InvalidDimension, InvalidOperator
from cohwit.states import (
    random_block_incoherent,
    random_density,
    random_projector_set,
    w_state,
)

from conftest import brute_dephase, random_povm, random_sizes

PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
PLUS_DM = np.outer(PLUS, PLUS.conj())

# 2x2 non-projective POVM used in several hand-derived checks
E_HALF = PovmSet([np.diag([1.0, 0.5]), np.diag([0.0, 0.5])])


class TestStandardBasis:
    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_structure(self, dim):
        basis = standard_basis(dim)
        assert len(basis) == dim
        assert basis.ranks == (1,) * dim
        assert np.allclose(basis.operators.sum(axis=0), np.eye(dim))
        for i in range(dim):
            expected = np.zeros((dim, dim))
            expected[i, i] = 1.0
            assert np.array_equal(basis[i], expected)

    def test_rejects_dim_zero(self):
        with pytest.raises(InvalidDimension):
            standard_basis(0)


class TestProjectorSetValidation:
    def test_non_idempotent_named(self):
        with pytest.raises(InvalidOperator, match="projector 1 is not idempotent"):
            ProjectorSet([np.diag([1.0, 0.0]), np.diag([0.0, 0.9])])

    def test_non_orthogonal_named(self):
        with pytest.raises(InvalidOperator, match="not orthogonal"):
            ProjectorSet([np.diag([1.0, 0.0]), PLUS_DM])

    def test_incomplete_named(self):
        with pytest.raises(InvalidOperator, match="not complete"):
            ProjectorSet([np.diag([1.0, 0.0, 0.0]), np.diag([0.0, 1.0, 0.0])])

    def test_valid_round_trip(self):
        p = ProjectorSet([np.diag([1.0, 1.0, 0.0]), np.diag([0.0, 0.0, 1.0])])
        assert p.ranks == (2, 1)
        assert p.dim == 3

    def test_operators_read_only(self):
        p = standard_basis(2)
        with pytest.raises(ValueError):
            p.operators[0, 0, 0] = 5.0


class TestPovmSetValidation:
    def test_zero_effect_rejected(self):
        with pytest.raises(InvalidOperator, match="effect 1 is zero"):
            PovmSet([np.eye(2), np.zeros((2, 2))])

    def test_negative_effect_named(self):
        with pytest.raises(InvalidOperator, match="effect 0 is not positive"):
            PovmSet([np.diag([1.5, -0.5]), np.diag([-0.5, 1.5])])

    def test_incomplete_named(self):
        with pytest.raises(InvalidOperator, match="not complete"):
            PovmSet([np.eye(2) * 0.25, np.eye(2) * 0.25])


class TestDephaseBlock:
    def test_plus_state(self):
        out = dephase_block(PLUS_DM, standard_basis(2))
        assert np.allclose(out, np.diag([0.5, 0.5]), atol=1e-14)

    def test_fixed_point(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            dim = int(rng.integers(2, 12))
            blocks = random_projector_set(random_sizes(rng, dim), seed=int(rng.integers(0, 2**31)))
            delta = random_block_incoherent(blocks, seed=int(rng.integers(0, 2**31)))
            assert np.linalg.norm(dephase_block(delta, blocks) - delta) <= 1e-12

    def test_w4_overlap(self):
        # oracle: sum_s <W|P_s|W>^2 = (N+2)/N^2 at N=4
        w = w_state(4)
        family = wstate_projector_family(4)
        overlap_oracle = sum(float(np.vdot(w, p @ w).real) ** 2 for p in family)
        assert overlap_oracle == pytest.approx(0.375, abs=1e-12)
        dephased = dephase_block(np.outer(w, w.conj()), family)
        assert float(np.vdot(w, dephased @ w).real) == pytest.approx(0.375, abs=1e-12)
        assert float(dephased.trace().real) == pytest.approx(1.0, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            dephase_block(np.eye(3) / 3, standard_basis(2))

    def test_idempotence_and_trace_500_random(self):
        rng = np.random.default_rng(314)
        for _ in range(500):
            dim = int(rng.integers(2, 33))
            blocks = random_projector_set(random_sizes(rng, dim), seed=int(rng.integers(0, 2**31)))
            rho = random_density(dim, seed=int(rng.integers(0, 2**31)))
            once = dephase_block(rho, blocks)
            assert abs(once.trace().real - 1.0) <= 1e-10
            assert np.linalg.norm(dephase_block(once, blocks) - once) <= 1e-10


class TestDephasePovm:
    def test_projective_reduction(self):
        out = dephase_povm(PLUS_DM, standard_basis(2).to_povm())
        assert np.allclose(out, np.diag([0.5, 0.5]), atol=1e-14)

    def test_invariant_state(self):
        zero_dm = np.diag([1.0, 0.0]).astype(complex)
        assert np.allclose(dephase_povm(zero_dm, E_HALF), zero_dm, atol=1e-14)

    def test_plus_state_hand_value(self):
        out = dephase_povm(PLUS_DM, E_HALF)
        assert np.allclose(out, 0.5 * np.array([[1.0, 0.5], [0.5, 0.5]]), atol=1e-14)

    def test_reduces_to_block_for_projectors(self):
        rng = np.random.default_rng(21)
        for _ in range(30):
            dim = int(rng.integers(2, 16))
            blocks = random_projector_set(random_sizes(rng, dim), seed=int(rng.integers(0, 2**31)))
            rho = random_density(dim, seed=int(rng.integers(0, 2**31)))
            a = dephase_block(rho, blocks)
            b = dephase_povm(rho, blocks.to_povm())
            assert np.linalg.norm(a - b) <= 1e-12

    def test_positivity_preserved(self):
        rng = np.random.default_rng(22)
        for _ in range(30):
            dim = int(rng.integers(2, 10))
            povm = random_povm(dim, int(rng.integers(2, 5)), seed=int(rng.integers(0, 2**31)))
            rho = random_density(dim, seed=int(rng.integers(0, 2**31)))
            out = dephase_povm(rho, povm)
            assert np.linalg.eigvalsh((out + out.conj().T) / 2).min() >= -1e-10

    def test_matches_brute_force(self):
        rng = np.random.default_rng(23)
        povm = random_povm(6, 3, seed=9)
        rho = random_density(6, seed=10)
        assert np.linalg.norm(dephase_povm(rho, povm) - brute_dephase(povm, rho)) <= 1e-12


class TestIncoherenceChecks:
    def test_diagonal_state_block(self):
        report = check_block_incoherent(np.diag([0.5, 0.5]).astype(complex), standard_basis(2))
        assert report.incoherent
        assert report.residual == pytest.approx(0.0, abs=1e-14)

    def test_plus_state_block(self):
        report = check_block_incoherent(PLUS_DM, standard_basis(2))
        assert not report.incoherent
        assert report.residual == pytest.approx(np.sqrt(0.5), abs=1e-12)
        assert report.max_cross_norm == pytest.approx(0.5, abs=1e-12)

    def test_trivial_single_block(self):
        trivial = ProjectorSet([np.eye(2)])
        assert check_block_incoherent(PLUS_DM, trivial).incoherent

    def test_povm_invariant_state(self):
        assert check_povm_incoherent(np.diag([1.0, 0.0]).astype(complex), E_HALF).incoherent

    def test_povm_plus_state(self):
        report = check_povm_incoherent(PLUS_DM, E_HALF)
        assert not report.incoherent
        # ||E_1 rho E_2||_F = sqrt(5)/8 by direct 2x2 arithmetic
        assert report.max_cross_norm == pytest.approx(np.sqrt(5) / 8, abs=1e-12)

    def test_fixed_point_characterization(self):
        # incoherent => residual <= n * tol (Pythagoras over cross blocks);
        # residual <= tol => incoherent.
        rng = np.random.default_rng(77)
        tol = 1e-10
        for _ in range(50):
            dim = int(rng.integers(2, 17))
            blocks = random_projector_set(random_sizes(rng, dim), seed=int(rng.integers(0, 2**31)))
            rho = random_density(dim, seed=int(rng.integers(0, 2**31)))
            for state in (rho, random_block_incoherent(blocks, seed=int(rng.integers(0, 2**31)))):
                report = check_block_incoherent(state, blocks, tol)
                if report.incoherent:
                    assert report.residual <= len(blocks) * tol
                if report.residual <= tol:
                    assert report.incoherent

    def test_dephased_state_always_passes(self):
        rng = np.random.default_rng(99)
        for _ in range(30):
            dim = int(rng.integers(2, 17))
            blocks = random_projector_set(random_sizes(rng, dim), seed=int(rng.integers(0, 2**31)))
            rho = random_density(dim, seed=int(rng.integers(0, 2**31)))
            assert check_block_incoherent(dephase_block(rho, blocks), blocks).incoherent


class TestWStateFamily:
    def test_n2_structure(self):
        family = wstate_projector_family(2)
        assert family.ranks == (1, 1, 2)
        minus = np.zeros(4, dtype=complex)
        minus[1], minus[2] = 1 / np.sqrt(2), -1 / np.sqrt(2)
        assert np.linalg.norm(family[0] - np.outer(minus, minus.conj())) <= 1e-12
        rest = np.diag([1.0, 0.0, 0.0, 1.0])
        assert np.array_equal(family[2], rest.astype(complex))

    def test_n4_ranks(self):
        family = wstate_projector_family(4)
        assert len(family) == 5
        assert family.ranks == (1, 1, 1, 1, 12)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_completeness_and_validity(self, n):
        family = wstate_projector_family(n)
        # re-run the full invariant validation on the constructed stack
        ProjectorSet(family.operators, tol=1e-10)
        assert np.linalg.norm(family.operators.sum(axis=0) - np.eye(2**n)) <= 1e-10

    def test_single_excitation_ordering(self):
        family = wstate_projector_family(4)
        # P_2 .. P_{N-1} sit on indices 2^1 .. 2^{N-2}, ascending
        for j, position in enumerate([2, 4]):
            p = family[2 + j]
            assert p[position, position] == 1.0
            assert float(p.trace().real) == pytest.approx(1.0)

    def test_rejects_single_qubit(self):
        with pytest.raises(InvalidDimension):
            wstate_projector_family(1)
