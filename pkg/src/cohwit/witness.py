"""Coherence witnesses for block and POVM measurement references.

A witness is a Hermitian operator with nonnegative expectation on every
incoherent state of its reference; measuring a negative expectation therefore
certifies coherence.  Witnesses are built by dephasing an arbitrary Hermitian
seed operator (``W = Delta(A) - A``) and certified through positivity of
their own dephasing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionError, UncertifiedWitness
from .linalg import fidelity_pure, require_hermitian, require_state_vector
from .measurements import (
    MEASUREMENT_TOL,
    PovmSet,
    ProjectorSet,
    dephase_block,
    dephase_povm,
)

#: A state counts as detected only when the witness expectation falls below
#: this margin, so exactly-incoherent states never trip on rounding noise.
DETECTION_TOL = 1e-10

__all__ = [
    "DETECTION_TOL",
    "Witness",
    "DetectionResult",
    "PovmViolationCertificate",
    "construct_witness",
    "certify_witness",
    "witness_from_pure",
    "evaluate",
    "violating_state",
    "povm_violation_certificate",
]


@dataclass(frozen=True, eq=False)
class Witness:
    """Hermitian witness candidate bound to its measurement reference.

    ``certified`` records the outcome of the positivity test on the dephased
    operator; only certified witnesses may be evaluated against states.
    ``target`` holds the pure state the witness was built from, when any, and
    switches on the fidelity fields of :class:`DetectionResult`.
    """

    operator: np.ndarray
    reference: ProjectorSet | PovmSet
    certified: bool
    dephased_min_eigenvalue: float
    target: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.operator.shape[0]


@dataclass(frozen=True, eq=False)
class DetectionResult:
    """Witness expectation on a state and the resulting detection verdict.

    The fidelity fields are populated only for witnesses built from a pure
    target, in which case ``expectation = fidelity_dephased - fidelity_raw``.
    """

    expectation: float
    detection_value: float
    detected: bool
    fidelity_dephased: float | None = None
    fidelity_raw: float | None = None


@dataclass(frozen=True, eq=False)
class PovmViolationCertificate:
    """Raw converse certificate for an uncertified POVM witness candidate.

    ``state`` is the dephased eigenvector projector; for non-projective
    effects it need not be normalized nor exactly incoherent, so its trace
    and worst cross norm are attached and no incoherence claim is made.
    """

    state: np.ndarray
    trace: float
    max_cross_norm: float
    expectation: float


def _dephase(operator: np.ndarray, reference) -> np.ndarray:
    if isinstance(reference, ProjectorSet):
        return dephase_block(operator, reference)
    if isinstance(reference, PovmSet):
        return dephase_povm(operator, reference)
    raise TypeError(f"reference must be a ProjectorSet or PovmSet, got {type(reference).__name__}")


def _expectation(rho: np.ndarray, operator: np.ndarray) -> float:
    return float(np.einsum("ij,ji->", rho, operator).real)


def _certified(operator, reference, tol, target=None) -> Witness:
    dephased = _dephase(operator, reference)
    lowest = float(np.linalg.eigvalsh((dephased + dephased.conj().T) / 2.0)[0])
    return Witness(
        operator=operator,
        reference=reference,
        certified=bool(lowest >= -tol),
        dephased_min_eigenvalue=lowest,
        target=target,
    )


def construct_witness(seed_operator, reference, tol: float = MEASUREMENT_TOL) -> Witness:
    """Build the witness ``Delta(A) - A`` from a Hermitian seed operator A.

    The result has zero mean on every incoherent state of the reference and,
    for block references, always passes certification (its block dephasing is
    the zero operator).
    """
    a = require_hermitian(seed_operator)
    if a.shape[0] != reference.dim:
        raise DimensionError(f"operator dimension {a.shape[0]} != reference dimension {reference.dim}")
    w = _dephase(a, reference) - a
    w = (w + w.conj().T) / 2.0
    return _certified(w, reference, tol)


def certify_witness(operator, reference, tol: float = MEASUREMENT_TOL) -> Witness:
    """Test an arbitrary Hermitian operator for witness-hood.

    The candidate is certified iff its dephased image is positive
    semidefinite down to ``-tol``.
    """
    w = require_hermitian(operator)
    if w.shape[0] != reference.dim:
        raise DimensionError(f"operator dimension {w.shape[0]} != reference dimension {reference.dim}")
    return _certified(w, reference, tol)


def witness_from_pure(phi, reference, tol: float = MEASUREMENT_TOL) -> Witness:
    """Witness built from a pure target state, enabling the fidelity readout."""
    vec = require_state_vector(phi)
    if vec.shape[0] != reference.dim:
        raise DimensionError(f"state dimension {vec.shape[0]} != reference dimension {reference.dim}")
    projector = np.outer(vec, vec.conj())
    witness = construct_witness(projector, reference, tol)
    return Witness(
        operator=witness.operator,
        reference=witness.reference,
        certified=witness.certified,
        dephased_min_eigenvalue=witness.dephased_min_eigenvalue,
        target=vec,
    )


def evaluate(witness: Witness, rho, detection_tol: float = DETECTION_TOL) -> DetectionResult:
    """Expectation of a certified witness on a state, with detection verdict.

    Raises UncertifiedWitness for candidates that failed certification: a
    negative expectation of an uncertified operator proves nothing.
    """
    if not witness.certified:
        raise UncertifiedWitness(
            "witness failed certification "
            f"(dephased min eigenvalue {witness.dephased_min_eigenvalue:.3e}); refusing to evaluate"
        )
    arr = np.asarray(rho, dtype=complex)
    if arr.shape != witness.operator.shape:
        raise DimensionError(f"state dimension {arr.shape[0]} != witness dimension {witness.dim}")
    expectation = _expectation(arr, witness.operator)
    fidelity_dephased = fidelity_raw = None
    if witness.target is not None:
        fidelity_dephased = fidelity_pure(_dephase(arr, witness.reference), witness.target)
        fidelity_raw = fidelity_pure(arr, witness.target)
    return DetectionResult(
        expectation=expectation,
        detection_value=-expectation,
        detected=bool(expectation < -detection_tol),
        fidelity_dephased=fidelity_dephased,
        fidelity_raw=fidelity_raw,
    )


def violating_state(operator, reference: ProjectorSet, tol: float = MEASUREMENT_TOL) -> np.ndarray | None:
    """Block-incoherent state with negative expectation, if the candidate fails.

    Returns ``Delta(|v><v|)`` for the lowest eigenvector v of the dephased
    candidate; its expectation equals that lowest eigenvalue.  Returns None
    when the candidate is certified.
    """
    w = require_hermitian(operator)
    if not isinstance(reference, ProjectorSet):
        raise TypeError("violating_state is defined for block references only; "
                        "use povm_violation_certificate for POVMs")
    if w.shape[0] != reference.dim:
        raise DimensionError(f"operator dimension {w.shape[0]} != reference dimension {reference.dim}")
    dephased = dephase_block(w, reference)
    eigenvalues, vectors = np.linalg.eigh((dephased + dephased.conj().T) / 2.0)
    if eigenvalues[0] >= -tol:
        return None
    vec = vectors[:, 0]
    delta = dephase_block(np.outer(vec, vec.conj()), reference)
    return (delta + delta.conj().T) / 2.0


def povm_violation_certificate(
    operator, reference: PovmSet, tol: float = MEASUREMENT_TOL
) -> PovmViolationCertificate | None:
    """Raw converse certificate for a POVM candidate that fails certification.

    The returned state is the POVM dephasing of the lowest eigenvector
    projector.  Unlike the block case it may have non-unit trace and nonzero
    cross terms, so those diagnostics are attached instead of any
    incoherence claim.
    """
    w = require_hermitian(operator)
    if w.shape[0] != reference.dim:
        raise DimensionError(f"operator dimension {w.shape[0]} != reference dimension {reference.dim}")
    dephased = dephase_povm(w, reference)
    eigenvalues, vectors = np.linalg.eigh((dephased + dephased.conj().T) / 2.0)
    if eigenvalues[0] >= -tol:
        return None
    vec = vectors[:, 0]
    state = dephase_povm(np.outer(vec, vec.conj()), reference)
    state = (state + state.conj().T) / 2.0
    cross, _, _ = kernels.max_cross_frobenius(reference._stack, state)
    return PovmViolationCertificate(
        state=state,
        trace=float(state.trace().real),
        max_cross_norm=cross,
        expectation=_expectation(state, w),
    )
