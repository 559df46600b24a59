"""Pure-numpy reference implementations of the hot kernels.

Semantics (pair ordering, skip rules, returned norms) must match
``cohwit._native`` exactly; the dispatcher in :mod:`cohwit.kernels` treats
the two as interchangeable.
"""

from __future__ import annotations

import numpy as np


def sandwich_sum(ops: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Sum of K_i @ rho @ K_i over the operator stack ``ops`` (n, d, d)."""
    return np.asarray((ops @ rho @ ops).sum(axis=0))


def max_cross_frobenius(ops: np.ndarray, rho: np.ndarray) -> tuple[float, int, int]:
    """Largest Frobenius norm of K_i @ rho @ K_j over ordered pairs i != j.

    Returns ``(norm, i, j)``; ``(0.0, -1, -1)`` when there are no pairs.
    Ties resolve to the first maximal pair in row-major pair order.
    """
    n = ops.shape[0]
    if n < 2:
        return 0.0, -1, -1
    left = ops @ rho
    best = -1.0
    bi = bj = -1
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            norm = float(np.linalg.norm(left[i] @ ops[j]))
            if norm > best:
                best, bi, bj = norm, i, j
    return best, bi, bj


def qfi_pair_sum(evals: np.ndarray, h_eig: np.ndarray, null_tol: float) -> tuple[float, int]:
    """Sum 4*c_m*((c_n-c_m)/(c_n+c_m))^2*|H_mn|^2 over pairs with c_m+c_n > null_tol.

    ``evals`` are the state eigenvalues c, ``h_eig`` the generator expressed in
    the same eigenbasis.  Skipped pairs (denominator at or below ``null_tol``,
    diagonal included) are counted, not summed.
    """
    c = np.asarray(evals, dtype=float)
    den = c[:, None] + c[None, :]
    keep = den > null_tol
    ratio = np.zeros_like(den)
    np.divide(c[None, :] - c[:, None], den, out=ratio, where=keep)
    terms = 4.0 * c[:, None] * ratio * ratio * np.abs(h_eig) ** 2
    value = float(terms[keep].sum())
    skipped = int(keep.size - np.count_nonzero(keep))
    return value, skipped
