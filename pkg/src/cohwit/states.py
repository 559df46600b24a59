"""State and operator factory: W states, noisy mixtures, seeded random fixtures.

Computational-basis indexing is big-endian: the ket ``|b_{N-1} ... b_1 b_0>``
written left to right maps to the integer with ``b_{N-1}`` as the most
significant bit, so ``|10...0>`` is index ``2^(N-1)``.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidDimension, InvalidParameter
from .linalg import as_complex_vector
from .measurements import ProjectorSet, dephase_block


def w_state(n_qubits: int) -> np.ndarray:
    """Equal superposition of the N single-excitation basis states."""
    if n_qubits < 2:
        raise InvalidDimension(f"need at least 2 qubits, got {n_qubits}")
    vec = np.zeros(2**n_qubits, dtype=complex)
    vec[[2**j for j in range(n_qubits)]] = 1.0 / np.sqrt(n_qubits)
    return vec


def pure_density(phi) -> np.ndarray:
    """Projector |phi><phi| onto a pure state."""
    vec = as_complex_vector(phi)
    return np.outer(vec, vec.conj())


def maximally_mixed(dim: int) -> np.ndarray:
    """The state I/d."""
    if dim < 1:
        raise InvalidDimension(f"dimension must be at least 1, got {dim}")
    return np.eye(dim, dtype=complex) / dim


def noisy_w_state(n_qubits: int, p: float) -> np.ndarray:
    """White-noise mixture p |W_N><W_N| + (1-p) I/2^N."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParameter(f"mixing weight must lie in [0, 1], got {p!r}")
    dim = 2**n_qubits
    return p * pure_density(w_state(n_qubits)) + (1.0 - p) * maximally_mixed(dim)


def random_density(dim: int, seed: int) -> np.ndarray:
    """Seeded random density matrix G G^dag / tr(G G^dag) with Gaussian G."""
    if dim < 1:
        raise InvalidDimension(f"dimension must be at least 1, got {dim}")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / rho.trace().real


def random_pure(dim: int, seed: int) -> np.ndarray:
    """Seeded random unit vector (Gaussian direction)."""
    if dim < 1:
        raise InvalidDimension(f"dimension must be at least 1, got {dim}")
    rng = np.random.default_rng(seed)
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return vec / np.linalg.norm(vec)


def random_hermitian(dim: int, seed: int, scale: float = 1.0) -> np.ndarray:
    """Seeded random Hermitian matrix (Gaussian entries, symmetrized)."""
    if dim < 1:
        raise InvalidDimension(f"dimension must be at least 1, got {dim}")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (g + g.conj().T) / 2.0


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Seeded Haar-ish random unitary via QR of a complex Gaussian matrix."""
    if dim < 1:
        raise InvalidDimension(f"dimension must be at least 1, got {dim}")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_projector_set(sizes, seed: int) -> ProjectorSet:
    """Random block structure: a Haar-rotated partition into the given ranks."""
    sizes = [int(s) for s in sizes]
    if any(s < 1 for s in sizes):
        raise InvalidParameter(f"block sizes must be positive, got {sizes}")
    dim = sum(sizes)
    u = random_unitary(dim, seed)
    stack = np.empty((len(sizes), dim, dim), dtype=complex)
    start = 0
    for i, size in enumerate(sizes):
        cols = u[:, start : start + size]
        stack[i] = cols @ cols.conj().T
        start += size
    return ProjectorSet(stack, validate=False)


def random_block_incoherent(reference: ProjectorSet, seed: int) -> np.ndarray:
    """Random state fixed by the block dephasing map of ``reference``."""
    rho = dephase_block(random_density(reference.dim, seed), reference)
    return (rho + rho.conj().T) / 2.0
