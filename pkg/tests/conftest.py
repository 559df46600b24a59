"""Shared test helpers: independent brute-force oracles and random fixtures."""

from __future__ import annotations

import numpy as np

from cohwit import PovmSet
from cohwit.states import random_unitary


def brute_dephase(operators, rho) -> np.ndarray:
    """Plain-loop sum K @ rho @ K, independent of the kernel dispatch."""
    out = np.zeros_like(np.asarray(rho, dtype=complex))
    for op in operators:
        out += np.asarray(op) @ rho @ np.asarray(op)
    return out


def random_sizes(rng: np.random.Generator, dim: int) -> list[int]:
    """Random composition of ``dim`` into positive block sizes."""
    sizes = []
    left = dim
    while left > 0:
        s = int(rng.integers(1, left + 1))
        sizes.append(s)
        left -= s
    return sizes


def random_povm(dim: int, n_effects: int, seed: int) -> PovmSet:
    """Random full-rank POVM: normalized Wishart effects E_i = S^-1/2 A_i S^-1/2."""
    rng = np.random.default_rng(seed)
    parts = []
    for _ in range(n_effects):
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        parts.append(g @ g.conj().T)
    total = np.sum(parts, axis=0)
    w, v = np.linalg.eigh(total)
    inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    return PovmSet([inv_sqrt @ p @ inv_sqrt for p in parts])


def commuting_exclusive_povm(dim: int, n_effects: int, seed: int) -> tuple[PovmSet, np.ndarray]:
    """Commuting non-projective POVM plus a state that is exactly incoherent for it.

    Built diagonally and conjugated by a random unitary: each effect owns one
    exclusive basis slot (weight 1 there, 0 for the others) while the
    remaining slots carry strictly fractional weights shared by all effects.
    A state supported on the exclusive slots then satisfies
    E_i delta E_j = 0 for all i != j up to rounding.
    """
    if dim < n_effects + 1:
        raise ValueError("need at least one shared slot")
    rng = np.random.default_rng(seed)
    weights = np.zeros((n_effects, dim))
    for i in range(n_effects):
        weights[i, i] = 1.0
    for k in range(n_effects, dim):
        share = rng.dirichlet(np.ones(n_effects)) * 0.8 + 0.2 / n_effects
        weights[:, k] = share / share.sum()
    populations = np.zeros(dim)
    populations[:n_effects] = rng.dirichlet(np.ones(n_effects))
    u = random_unitary(dim, seed + 1)
    effects = [u @ np.diag(weights[i]).astype(complex) @ u.conj().T for i in range(n_effects)]
    delta = u @ np.diag(populations).astype(complex) @ u.conj().T
    delta = (delta + delta.conj().T) / 2.0
    return PovmSet(effects), delta
