"""Parameter estimation under degenerate Hamiltonians.

The degenerate eigenspaces of a Hamiltonian define a natural block reference;
an input state can pick up the phase written by ``exp(-i H phi)`` iff it has
block coherence with respect to those eigenspaces, and its quantum Fisher
information vanishes exactly when it does not.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import DegeneracyAmbiguous, DimensionError, InvalidParameter, UncertifiedWitness
from .linalg import as_complex_matrix, require_hermitian
from .measurements import ProjectorSet, check_block_incoherent
from .witness import Witness

#: Default gap threshold for clustering eigenvalues into degenerate levels.
GROUPING_TOL = 1e-8
#: Pairs whose summed state eigenvalues fall at or below this are excluded
#: from the SLD and QFI sums (support restriction for rank-deficient states).
NULL_SPACE_TOL = 1e-12

__all__ = [
    "GROUPING_TOL",
    "NULL_SPACE_TOL",
    "DegenerateHamiltonian",
    "EnergyLevel",
    "QfiResult",
    "EstimabilityResult",
    "SweepPoint",
    "group_eigenspaces",
    "hamiltonian_blocks",
    "evolve",
    "is_estimable",
    "sld",
    "qfi",
    "sweep",
]


class EnergyLevel(NamedTuple):
    """One degenerate level: representative energy, multiplicity, eigenbasis columns."""

    energy: float
    multiplicity: int
    basis: np.ndarray


class EstimabilityResult(NamedTuple):
    """Whether a parameter imprinted by the Hamiltonian is readable from the state."""

    estimable: bool
    off_block_norm: float


class SweepPoint(NamedTuple):
    phi: float
    expectation: float
    detection_value: float


@dataclass(frozen=True, eq=False)
class QfiResult:
    """Quantum Fisher information with the state spectrum it was computed from.

    ``skipped_pairs`` counts eigenvalue pairs excluded by the null-space rule
    (diagonal pairs included).
    """

    value: float
    eigen_spectrum: np.ndarray
    skipped_pairs: int


class DegenerateHamiltonian:
    """Hermitian generator with its spectrum grouped into degenerate levels.

    Built by :func:`group_eigenspaces`.  ``levels`` lists the distinct
    energies ascending with their multiplicities and orthonormal eigenbases;
    the basis inside each level is an arbitrary orthonormal choice and must
    not be relied upon.
    """

    def __init__(self, operator: np.ndarray, levels: tuple[EnergyLevel, ...], grouping_tol: float):
        self.operator = operator
        self.levels = levels
        self.grouping_tol = grouping_tol
        self._basis = np.hstack([level.basis for level in levels])
        self._energies = np.concatenate(
            [np.full(level.multiplicity, level.energy) for level in levels]
        )
        self._blocks: ProjectorSet | None = None

    @property
    def dim(self) -> int:
        return self.operator.shape[0]

    @property
    def energies(self) -> tuple[float, ...]:
        return tuple(level.energy for level in self.levels)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(level.multiplicity for level in self.levels)

    def __repr__(self) -> str:
        spectrum = ", ".join(f"{e:.6g} (x{k})" for e, k in zip(self.energies, self.multiplicities))
        return f"DegenerateHamiltonian(dim={self.dim}, levels=[{spectrum}])"

    def propagator(self, phi: float) -> np.ndarray:
        """Evolution operator exp(-i H phi) built from the grouped spectrum."""
        phases = np.exp(-1j * self._energies * float(phi))
        return (self._basis * phases) @ self._basis.conj().T

    def blocks(self) -> ProjectorSet:
        """Eigenspace projectors P_s = sum_g |s,g><s,g| (cached)."""
        if self._blocks is None:
            stack = np.empty((len(self.levels), self.dim, self.dim), dtype=complex)
            for i, level in enumerate(self.levels):
                stack[i] = level.basis @ level.basis.conj().T
            self._blocks = ProjectorSet(stack, validate=False)
        return self._blocks


def group_eigenspaces(hamiltonian, tol: float = GROUPING_TOL) -> DegenerateHamiltonian:
    """Cluster the spectrum of a Hermitian operator into degenerate levels.

    Single-linkage clustering on the sorted eigenvalues: adjacent gaps at or
    below ``tol`` merge.  The representative energy of a level is the cluster
    mean.  A chain whose total spread exceeds ``tol`` has no unambiguous
    grouping and raises DegeneracyAmbiguous.
    """
    if tol <= 0:
        raise InvalidParameter(f"grouping tolerance must be positive, got {tol!r}")
    arr = require_hermitian(hamiltonian)
    eigenvalues, vectors = np.linalg.eigh(arr)
    gaps = np.diff(eigenvalues)
    splits = np.nonzero(gaps > tol)[0]
    bounds = [0, *(int(s) + 1 for s in splits), len(eigenvalues)]
    levels = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        diameter = float(eigenvalues[hi - 1] - eigenvalues[lo])
        if diameter > tol:
            chain = ", ".join(f"{g:.3e}" for g in gaps[lo : hi - 1])
            raise DegeneracyAmbiguous(
                f"eigenvalues in [{eigenvalues[lo]!r}, {eigenvalues[hi - 1]!r}] chain together "
                f"(adjacent gaps {chain} all <= {tol:.1e}) but span {diameter:.3e} > {tol:.1e}; "
                "adjust the grouping tolerance"
            )
        basis = np.ascontiguousarray(vectors[:, lo:hi])
        levels.append(EnergyLevel(float(eigenvalues[lo:hi].mean()), hi - lo, basis))
    return DegenerateHamiltonian(arr, tuple(levels), float(tol))


def hamiltonian_blocks(hamiltonian: DegenerateHamiltonian) -> ProjectorSet:
    """Subspace projectors of the degenerate levels, in ascending energy order."""
    return hamiltonian.blocks()


def _check_dim(arr: np.ndarray, hamiltonian: DegenerateHamiltonian) -> None:
    if arr.shape[0] != hamiltonian.dim:
        raise DimensionError(
            f"state dimension {arr.shape[0]} != Hamiltonian dimension {hamiltonian.dim}"
        )


def evolve(rho_in, hamiltonian: DegenerateHamiltonian, phi: float) -> np.ndarray:
    """Black-box evolution rho_phi = U rho U^dag with U = exp(-i H phi)."""
    arr = as_complex_matrix(rho_in)
    _check_dim(arr, hamiltonian)
    u = hamiltonian.propagator(phi)
    out = u @ arr @ u.conj().T
    return (out + out.conj().T) / 2.0


def is_estimable(rho_in, hamiltonian: DegenerateHamiltonian, tol: float = 1e-10) -> EstimabilityResult:
    """Phase readability test: true iff the input has block coherence w.r.t. H.

    ``off_block_norm`` is ``||rho - Delta(rho)||_F`` against the eigenspace
    blocks; the evolved state depends on phi iff it exceeds ``tol``.
    """
    arr = as_complex_matrix(rho_in)
    _check_dim(arr, hamiltonian)
    report = check_block_incoherent(arr, hamiltonian.blocks(), tol)
    return EstimabilityResult(estimable=bool(report.residual > tol), off_block_norm=report.residual)


def sld(rho_in, hamiltonian: DegenerateHamiltonian, phi: float, null_tol: float = NULL_SPACE_TOL) -> np.ndarray:
    """Symmetric logarithmic derivative L of the evolved state at ``phi``.

    L solves ``d(rho_phi)/d(phi) = (L rho_phi + rho_phi L)/2`` on the support
    of the state; eigenvalue pairs with ``c_m + c_n <= null_tol`` are
    excluded.  The sign convention is pinned by that defining identity.
    """
    arr = as_complex_matrix(rho_in)
    _check_dim(arr, hamiltonian)
    c, vectors = np.linalg.eigh(arr)
    h = hamiltonian.operator
    commutator = h @ arr - arr @ h
    b_eig = vectors.conj().T @ commutator @ vectors
    denominator = c[:, None] + c[None, :]
    keep = denominator > null_tol
    coefficients = np.zeros_like(b_eig)
    np.divide(b_eig, denominator, out=coefficients, where=keep)
    l0 = vectors @ (-2j * coefficients * keep) @ vectors.conj().T
    u = hamiltonian.propagator(phi)
    l_phi = u @ l0 @ u.conj().T
    return (l_phi + l_phi.conj().T) / 2.0


def qfi(rho_in, hamiltonian: DegenerateHamiltonian, null_tol: float = NULL_SPACE_TOL) -> QfiResult:
    """Quantum Fisher information of the evolved state (phi independent).

    Computed in the eigenbasis of the input state as
    ``sum 4 c_m ((c_n - c_m)/(c_n + c_m))^2 |<m|H|n>|^2`` with the null-space
    rule of :func:`sld`.  Negative eigenvalue dust below zero is clipped
    before summing; the reported spectrum is unclipped.
    """
    arr = as_complex_matrix(rho_in)
    _check_dim(arr, hamiltonian)
    c, vectors = np.linalg.eigh(arr)
    h_eig = vectors.conj().T @ hamiltonian.operator @ vectors
    clipped = np.clip(c, 0.0, None)
    value, skipped = kernels.qfi_pair_sum(clipped, np.ascontiguousarray(h_eig), null_tol)
    spectrum = c.copy()
    spectrum.flags.writeable = False
    return QfiResult(value=value, eigen_spectrum=spectrum, skipped_pairs=skipped)


def sweep(rho_in, hamiltonian: DegenerateHamiltonian, witness: Witness, phis) -> list[SweepPoint]:
    """Witness expectation along a phi grid of the black-box evolution.

    Rows are independent and keep the grid order.  For block-incoherent
    inputs the expectation column is constant: the witness readout carries no
    information about phi.
    """
    if not witness.certified:
        raise UncertifiedWitness("sweep requires a certified witness")
    arr = as_complex_matrix(rho_in)
    _check_dim(arr, hamiltonian)
    if witness.dim != hamiltonian.dim:
        raise DimensionError(
            f"witness dimension {witness.dim} != Hamiltonian dimension {hamiltonian.dim}"
        )
    grid = np.atleast_1d(np.asarray(phis, dtype=float))
    points = []
    for phi in grid:
        rho_phi = evolve(arr, hamiltonian, float(phi))
        expectation = float(np.einsum("ij,ji->", rho_phi, witness.operator).real)
        points.append(SweepPoint(float(phi), expectation, -expectation))
    return points
