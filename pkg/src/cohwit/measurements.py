"""Measurement references and dephasing maps.

A measurement reference is either a complete family of mutually orthogonal
projectors (:class:`ProjectorSet`) or a complete family of positive effects
(:class:`PovmSet`).  Each carries a dephasing map ``rho -> sum_i K_i rho K_i``
over its operators; a state is incoherent with respect to the reference when
all cross terms ``K_i rho K_j`` (i != j) vanish.

Measurement references are immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionError, InvalidDimension, InvalidOperator
from .linalg import HERMITICITY_TOL, as_complex_matrix

#: Default Frobenius-norm tolerance for measurement-set invariants and
#: incoherence certification.
MEASUREMENT_TOL = 1e-10

__all__ = [
    "MEASUREMENT_TOL",
    "ProjectorSet",
    "PovmSet",
    "IncoherenceReport",
    "standard_basis",
    "dephase_block",
    "dephase_povm",
    "check_block_incoherent",
    "check_povm_incoherent",
    "wstate_projector_family",
]


def _operator_stack(operators) -> np.ndarray:
    ops = [as_complex_matrix(op) for op in operators]
    if not ops:
        raise InvalidOperator("measurement set must contain at least one operator")
    dim = ops[0].shape[0]
    for index, op in enumerate(ops):
        if op.shape[0] != dim:
            raise DimensionError(
                f"operator {index} has dimension {op.shape[0]}, expected {dim}"
            )
    return np.ascontiguousarray(np.stack(ops))


class ProjectorSet:
    """Complete family of mutually orthogonal projectors {P_s}.

    Parameters
    ----------
    operators : sequence of array_like
        The projectors, in a fixed observable order.
    tol : float
        Frobenius tolerance for the idempotence/orthogonality/completeness
        invariants.
    validate : bool
        Skip invariant checks for construction-guaranteed families (used by
        the factory helpers in this package).
    """

    kind = "projectors"

    def __init__(self, operators, tol: float = MEASUREMENT_TOL, validate: bool = True):
        stack = _operator_stack(operators)
        n, dim = stack.shape[0], stack.shape[1]
        if validate:
            for i in range(n):
                p = stack[i]
                herm = float(np.abs(p - p.conj().T).max())
                if herm > HERMITICITY_TOL:
                    raise InvalidOperator(
                        f"projector {i} is not Hermitian: max deviation {herm:.3e}"
                    )
                idem = float(np.linalg.norm(p @ p - p))
                if idem > tol:
                    raise InvalidOperator(
                        f"projector {i} is not idempotent: ||P^2 - P||_F = {idem:.3e}"
                    )
            if n > 1:
                cross, i, j = kernels.max_cross_frobenius(stack, np.eye(dim, dtype=complex))
                if cross > tol:
                    raise InvalidOperator(
                        f"projectors {i} and {j} are not orthogonal: "
                        f"||P_i P_j||_F = {cross:.3e}"
                    )
            complete = float(np.linalg.norm(stack.sum(axis=0) - np.eye(dim)))
            if complete > tol:
                raise InvalidOperator(
                    f"projector family is not complete: ||sum P - I||_F = {complete:.3e}"
                )
        self.dim = dim
        self.ranks = tuple(int(round(float(p.trace().real))) for p in stack)
        self._stack = stack

    def __len__(self) -> int:
        return self._stack.shape[0]

    def __getitem__(self, index) -> np.ndarray:
        view = self._stack[index].view()
        view.flags.writeable = False
        return view

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    def __repr__(self) -> str:
        return f"ProjectorSet(dim={self.dim}, ranks={self.ranks})"

    @property
    def operators(self) -> np.ndarray:
        """Read-only (n, d, d) view of the projector stack."""
        view = self._stack.view()
        view.flags.writeable = False
        return view

    def to_povm(self) -> "PovmSet":
        """Reinterpret the projectors as POVM effects (they are valid effects)."""
        return PovmSet(self._stack, validate=False)


class PovmSet:
    """Complete family of positive effects {E_i} describing a general measurement."""

    kind = "povm"

    def __init__(self, effects, tol: float = MEASUREMENT_TOL, validate: bool = True):
        stack = _operator_stack(effects)
        n, dim = stack.shape[0], stack.shape[1]
        if validate:
            for i in range(n):
                e = stack[i]
                herm = float(np.abs(e - e.conj().T).max())
                if herm > HERMITICITY_TOL:
                    raise InvalidOperator(f"effect {i} is not Hermitian: max deviation {herm:.3e}")
                norm = float(np.linalg.norm(e))
                if norm <= tol:
                    raise InvalidOperator(f"effect {i} is zero (norm {norm:.3e}); drop it")
                lowest = float(np.linalg.eigvalsh(e)[0])
                if lowest < -tol:
                    raise InvalidOperator(
                        f"effect {i} is not positive semidefinite: lowest eigenvalue {lowest:.3e}"
                    )
            complete = float(np.linalg.norm(stack.sum(axis=0) - np.eye(dim)))
            if complete > tol:
                raise InvalidOperator(
                    f"POVM is not complete: ||sum E - I||_F = {complete:.3e}"
                )
        self.dim = dim
        self._stack = stack

    def __len__(self) -> int:
        return self._stack.shape[0]

    def __getitem__(self, index) -> np.ndarray:
        view = self._stack[index].view()
        view.flags.writeable = False
        return view

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    def __repr__(self) -> str:
        return f"PovmSet(dim={self.dim}, n={len(self)})"

    @property
    def operators(self) -> np.ndarray:
        """Read-only (n, d, d) view of the effect stack."""
        view = self._stack.view()
        view.flags.writeable = False
        return view


@dataclass(frozen=True)
class IncoherenceReport:
    """Outcome of an incoherence check against a measurement reference.

    ``max_cross_norm`` is the largest ``||K_i rho K_j||_F`` over ordered pairs
    i != j; ``residual`` is ``||rho - Delta(rho)||_F`` for the matching
    dephasing map.  ``incoherent`` holds iff ``max_cross_norm <= tol``.
    """

    incoherent: bool
    max_cross_norm: float
    residual: float


def standard_basis(dim: int) -> ProjectorSet:
    """Rank-1 projectors |i><i| onto the computational basis."""
    if dim < 1:
        raise InvalidDimension(f"dimension must be at least 1, got {dim}")
    stack = np.zeros((dim, dim, dim), dtype=complex)
    for i in range(dim):
        stack[i, i, i] = 1.0
    return ProjectorSet(stack, validate=False)


def dephase_block(rho, reference: ProjectorSet) -> np.ndarray:
    """Block dephasing sum_s P_s rho P_s.

    Trace preserving, idempotent, and the identity on states that are block
    diagonal with respect to the reference.
    """
    arr = as_complex_matrix(rho)
    if arr.shape[0] != reference.dim:
        raise DimensionError(f"state dimension {arr.shape[0]} != reference dimension {reference.dim}")
    return kernels.sandwich_sum(reference._stack, arr)


def dephase_povm(rho, reference) -> np.ndarray:
    """POVM dephasing sum_i E_i rho E_i.

    Hermiticity and positivity preserving, but *not* trace preserving for
    non-projective effects; the trace is left as computed, never renormalized.
    Coincides with :func:`dephase_block` when the reference is a ProjectorSet.
    """
    arr = as_complex_matrix(rho)
    if arr.shape[0] != reference.dim:
        raise DimensionError(f"state dimension {arr.shape[0]} != reference dimension {reference.dim}")
    return kernels.sandwich_sum(reference._stack, arr)


def _incoherence_report(arr: np.ndarray, reference, tol: float) -> IncoherenceReport:
    cross, _, _ = kernels.max_cross_frobenius(reference._stack, arr)
    dephased = kernels.sandwich_sum(reference._stack, arr)
    residual = float(np.linalg.norm(arr - dephased))
    return IncoherenceReport(incoherent=bool(cross <= tol), max_cross_norm=cross, residual=residual)


def check_block_incoherent(rho, reference: ProjectorSet, tol: float = MEASUREMENT_TOL) -> IncoherenceReport:
    """Certify block incoherence: all P_s rho P_s' (s != s') vanish within tol."""
    arr = as_complex_matrix(rho)
    if arr.shape[0] != reference.dim:
        raise DimensionError(f"state dimension {arr.shape[0]} != reference dimension {reference.dim}")
    return _incoherence_report(arr, reference, tol)


def check_povm_incoherent(rho, reference: PovmSet, tol: float = MEASUREMENT_TOL) -> IncoherenceReport:
    """Certify POVM incoherence: all E_i rho E_j (i != j) vanish within tol."""
    arr = as_complex_matrix(rho)
    if arr.shape[0] != reference.dim:
        raise DimensionError(f"state dimension {arr.shape[0]} != reference dimension {reference.dim}")
    return _incoherence_report(arr, reference, tol)


def wstate_projector_family(n_qubits: int) -> ProjectorSet:
    """Projector family adapted to detecting N-qubit W-state block coherence.

    On the 2^N-dimensional space (big-endian computational indexing, so the
    single-excitation kets sit at indices 2^j):

    * P_0 and P_1 project onto ``(|0...01> -+ |10...0>)/sqrt(2)``,
    * P_2 ... P_{N-1} are rank-1 projectors onto the remaining
      single-excitation kets, ordered by ascending index,
    * P_N is the complement, of rank 2^N - N.
    """
    if n_qubits < 2:
        raise InvalidDimension(f"need at least 2 qubits, got {n_qubits}")
    dim = 2**n_qubits
    lo, hi = 1, 2 ** (n_qubits - 1)
    stack = np.zeros((n_qubits + 1, dim, dim), dtype=complex)
    # Bell-like pair on the lowest/highest single-excitation kets; the entries
    # are exactly representable, keeping the family invariants exact.
    for sign, row in ((-1.0, 0), (1.0, 1)):
        stack[row, lo, lo] = 0.5
        stack[row, hi, hi] = 0.5
        stack[row, lo, hi] = 0.5 * sign
        stack[row, hi, lo] = 0.5 * sign
    for j in range(1, n_qubits - 1):
        idx = 2**j
        stack[j + 1, idx, idx] = 1.0
    stack[n_qubits] = np.eye(dim) - stack[:n_qubits].sum(axis=0)
    return ProjectorSet(stack, validate=False)
