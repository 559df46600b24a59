"""Kernel dispatch: compiled extension when available, numpy fallback otherwise.

The backend is selected once at import time.  Setting the environment
variable ``COHWIT_PURE=1`` forces the numpy fallback even when the compiled
module is installed; :func:`set_backend` switches at runtime (used by the
benchmark and the backend-parity tests).
"""

from __future__ import annotations

import os

import numpy as np

from . import _purekernels

try:
    from . import _native
except ImportError:  # extension not built on this install
    _native = None

_PURE_ENV = "COHWIT_PURE"


def _initial_backend() -> str:
    if _native is None:
        return "pure"
    if os.environ.get(_PURE_ENV, "").strip().lower() in {"1", "true", "yes", "on"}:
        return "pure"
    return "native"


_backend = _initial_backend()


def available_backends() -> tuple[str, ...]:
    return ("native", "pure") if _native is not None else ("pure",)


def active_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available; choose from {available_backends()}")
    _backend = name


def _as_stack(ops) -> np.ndarray:
    arr = np.ascontiguousarray(ops, dtype=np.complex128)
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ValueError(f"operator stack must have shape (n, d, d), got {arr.shape}")
    if not arr.flags.writeable:
        arr = arr.copy()
    return arr


def _as_matrix(m) -> np.ndarray:
    arr = np.ascontiguousarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not arr.flags.writeable:
        arr = arr.copy()
    return arr


def sandwich_sum(ops, rho) -> np.ndarray:
    """Sum of K_i @ rho @ K_i over the stack; the common core of all dephasing maps."""
    ops = _as_stack(ops)
    rho = _as_matrix(rho)
    if ops.shape[1] != rho.shape[0]:
        raise ValueError("operator stack and matrix dimensions differ")
    if _backend == "native":
        return _native.sandwich_sum(ops, rho)
    return _purekernels.sandwich_sum(ops, rho)


def max_cross_frobenius(ops, rho) -> tuple[float, int, int]:
    """Largest ||K_i @ rho @ K_j||_F over ordered pairs i != j, with the argmax pair."""
    ops = _as_stack(ops)
    rho = _as_matrix(rho)
    if ops.shape[1] != rho.shape[0]:
        raise ValueError("operator stack and matrix dimensions differ")
    if _backend == "native":
        norm, i, j = _native.max_cross_frobenius(ops, rho)
        return float(norm), int(i), int(j)
    return _purekernels.max_cross_frobenius(ops, rho)


def qfi_pair_sum(evals, h_eig, null_tol: float) -> tuple[float, int]:
    """Spectral pair sum for the quantum Fisher information; see _purekernels."""
    c = np.ascontiguousarray(evals, dtype=float)
    h = _as_matrix(h_eig)
    if c.ndim != 1 or c.shape[0] != h.shape[0]:
        raise ValueError("eigenvalue vector and matrix dimensions differ")
    if not c.flags.writeable:
        c = c.copy()
    if _backend == "native":
        value, skipped = _native.qfi_pair_sum(c, h, float(null_tol))
        return float(value), int(skipped)
    return _purekernels.qfi_pair_sum(c, h, float(null_tol))
