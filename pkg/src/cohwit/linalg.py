"""Dense complex linear algebra for finite-dimensional quantum operators.

Everything operates on plain ``numpy.ndarray`` values (complex128).  All
functions are pure and never mutate their arguments, so values can be shared
freely across threads.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, InvalidOperator, InvalidParameter, InvalidState

#: Max-norm tolerance for accepting an operator as Hermitian.
HERMITICITY_TOL = 1e-12
#: Eigenvalue floor for positive-semidefiniteness decisions.
PSD_TOL = 1e-10
#: Allowed deviation of a density-matrix trace from 1.
TRACE_TOL = 1e-10
#: Allowed deviation of a state-vector norm from 1.
STATE_NORM_TOL = 1e-12

__all__ = [
    "HERMITICITY_TOL",
    "PSD_TOL",
    "TRACE_TOL",
    "STATE_NORM_TOL",
    "as_complex_matrix",
    "as_complex_vector",
    "require_hermitian",
    "require_state_vector",
    "require_density",
    "require_same_dim",
    "eigh",
    "is_psd",
    "fidelity_pure",
    "unitary_exp",
]


def as_complex_matrix(matrix) -> np.ndarray:
    """Coerce ``matrix`` to a finite square complex array.

    Raises
    ------
    InvalidOperator
        If the array is not square, is empty, or contains NaN/Inf entries.
    """
    arr = np.asarray(matrix, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidOperator(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise InvalidOperator("matrix dimension must be at least 1")
    if not np.isfinite(arr).all():
        raise InvalidOperator("matrix contains non-finite entries")
    return arr


def as_complex_vector(vector) -> np.ndarray:
    """Coerce ``vector`` to a finite 1-D complex array."""
    arr = np.asarray(vector, dtype=np.complex128).ravel()
    if arr.shape[0] < 1:
        raise InvalidState("state vector must have dimension at least 1")
    if not np.isfinite(arr).all():
        raise InvalidState("state vector contains non-finite entries")
    return arr


def require_hermitian(matrix, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate hermiticity in max norm and return the array unchanged."""
    arr = as_complex_matrix(matrix)
    deviation = float(np.abs(arr - arr.conj().T).max())
    if deviation > tol:
        raise InvalidOperator(
            f"operator is not Hermitian: max |M - M^dag| = {deviation:.3e} exceeds {tol:.1e}"
        )
    return arr


def require_state_vector(vector, tol: float = STATE_NORM_TOL) -> np.ndarray:
    """Validate unit normalization of a pure-state amplitude vector."""
    arr = as_complex_vector(vector)
    norm = float(np.linalg.norm(arr))
    if abs(norm - 1.0) > tol:
        raise InvalidState(f"state vector norm {norm!r} deviates from 1 by more than {tol:.1e}")
    return arr


def require_density(
    matrix,
    trace_tol: float = TRACE_TOL,
    psd_tol: float = PSD_TOL,
    herm_tol: float = HERMITICITY_TOL,
) -> np.ndarray:
    """Validate the density-matrix invariants (hermiticity, unit trace, positivity)."""
    arr = require_hermitian(matrix, herm_tol)
    trace = float(arr.trace().real)
    if abs(trace - 1.0) > trace_tol:
        raise InvalidState(
            f"density matrix trace {trace!r} deviates from 1 by more than {trace_tol:.1e}"
        )
    lowest = float(np.linalg.eigvalsh(arr)[0])
    if lowest < -psd_tol:
        raise InvalidState(
            f"density matrix has negative eigenvalue {lowest:.3e} below the -{psd_tol:.1e} floor"
        )
    return arr


def require_same_dim(a: np.ndarray, b: np.ndarray) -> int:
    """Return the shared dimension of two arrays or raise DimensionError."""
    da = a.shape[0]
    db = b.shape[0]
    if da != db:
        raise DimensionError(f"dimension mismatch: {da} vs {db}")
    return da


def eigh(matrix, tol: float = HERMITICITY_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian operator.

    Parameters
    ----------
    matrix : array_like
        Hermitian operator (validated against ``tol`` in max norm).

    Returns
    -------
    (eigenvalues, eigenvectors)
        Eigenvalues ascending; eigenvectors as orthonormal columns, so that
        ``M = V @ diag(w) @ V.conj().T``.  Inside a degenerate eigenspace the
        basis is arbitrary; callers must not rely on a particular choice.
    """
    arr = require_hermitian(matrix, tol)
    return np.linalg.eigh(arr)


def is_psd(matrix, tol: float = PSD_TOL) -> bool:
    """True iff the smallest eigenvalue of the Hermitian ``matrix`` is >= -tol."""
    if tol < 0:
        raise InvalidParameter(f"tolerance must be nonnegative, got {tol!r}")
    eigenvalues, _ = eigh(matrix)
    return bool(eigenvalues[0] >= -tol)


def fidelity_pure(rho, phi, clamp_tol: float = PSD_TOL) -> float:
    """Fidelity <phi|rho|phi> between a state and a pure reference.

    The value is real up to eigensolver noise; the imaginary residue is
    discarded and the result is clamped into [0, 1] only when it lies within
    ``clamp_tol`` of the boundary.
    """
    arr = as_complex_matrix(rho)
    vec = as_complex_vector(phi)
    require_same_dim(arr, vec)
    value = float(np.vdot(vec, arr @ vec).real)
    if -clamp_tol <= value < 0.0:
        value = 0.0
    elif 1.0 < value <= 1.0 + clamp_tol:
        value = 1.0
    return value


def unitary_exp(hamiltonian, phi: float) -> np.ndarray:
    """Unitary evolution operator exp(-i * H * phi) for Hermitian H.

    Computed by eigendecomposition, which is exact for Hermitian generators
    and keeps ``U @ U.conj().T`` at the identity to eigensolver precision.
    """
    eigenvalues, vectors = eigh(hamiltonian)
    phases = np.exp(-1j * eigenvalues * float(phi))
    return (vectors * phases) @ vectors.conj().T
