# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""BLAS-backed kernels: dephasing sums, pairwise cross norms, QFI pair sums.

Mirrors cohwit._purekernels; keep the two in lockstep.
"""

import numpy as np

from libc.math cimport sqrt
from scipy.linalg.cython_blas cimport zgemm

ctypedef double complex zcomplex


cdef void _matmul(zcomplex* a, zcomplex* b, zcomplex* c, int d, zcomplex beta) noexcept nogil:
    # Row-major C = A @ B + beta*C.  zgemm is column-major, so compute
    # C^T = B^T @ A^T by swapping the operand order.
    cdef char cn = b'N'
    cdef zcomplex one = 1.0
    zgemm(&cn, &cn, &d, &d, &d, &one, b, &d, a, &d, &beta, c, &d)


cdef double _fro_sq(zcomplex* a, int m) noexcept nogil:
    cdef double acc = 0.0
    cdef int k
    for k in range(m):
        acc += a[k].real * a[k].real + a[k].imag * a[k].imag
    return acc


def sandwich_sum(zcomplex[:, :, ::1] ops, zcomplex[:, ::1] rho):
    """Sum of K_i @ rho @ K_i over the operator stack ``ops`` (n, d, d)."""
    cdef int n = ops.shape[0]
    cdef int d = ops.shape[1]
    out_arr = np.zeros((d, d), dtype=np.complex128)
    tmp_arr = np.empty((d, d), dtype=np.complex128)
    cdef zcomplex[:, ::1] out = out_arr
    cdef zcomplex[:, ::1] tmp = tmp_arr
    cdef int i
    with nogil:
        for i in range(n):
            _matmul(&ops[i, 0, 0], &rho[0, 0], &tmp[0, 0], d, 0.0)
            _matmul(&tmp[0, 0], &ops[i, 0, 0], &out[0, 0], d, 1.0)
    return out_arr


def max_cross_frobenius(zcomplex[:, :, ::1] ops, zcomplex[:, ::1] rho):
    """Largest Frobenius norm of K_i @ rho @ K_j over ordered pairs i != j.

    Returns ``(norm, i, j)``; ``(0.0, -1, -1)`` when there are no pairs.
    """
    cdef int n = ops.shape[0]
    cdef int d = ops.shape[1]
    if n < 2:
        return 0.0, -1, -1
    left_arr = np.empty((n, d, d), dtype=np.complex128)
    tmp_arr = np.empty((d, d), dtype=np.complex128)
    cdef zcomplex[:, :, ::1] left = left_arr
    cdef zcomplex[:, ::1] tmp = tmp_arr
    cdef double best = -1.0, cur
    cdef int bi = -1, bj = -1, i, j
    with nogil:
        for i in range(n):
            _matmul(&ops[i, 0, 0], &rho[0, 0], &left[i, 0, 0], d, 0.0)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                _matmul(&left[i, 0, 0], &ops[j, 0, 0], &tmp[0, 0], d, 0.0)
                cur = _fro_sq(&tmp[0, 0], d * d)
                if cur > best:
                    best = cur
                    bi = i
                    bj = j
    return sqrt(best), bi, bj


def qfi_pair_sum(double[::1] evals, zcomplex[:, ::1] h_eig, double null_tol):
    """Sum 4*c_m*((c_n-c_m)/(c_n+c_m))^2*|H_mn|^2 over pairs with c_m+c_n > null_tol."""
    cdef int d = evals.shape[0]
    cdef double total = 0.0, cm, cn, den, ratio
    cdef long skipped = 0
    cdef zcomplex z
    cdef int m, n
    with nogil:
        for m in range(d):
            cm = evals[m]
            for n in range(d):
                cn = evals[n]
                den = cm + cn
                if den <= null_tol:
                    skipped += 1
                    continue
                ratio = (cn - cm) / den
                z = h_eig[m, n]
                total += 4.0 * cm * ratio * ratio * (z.real * z.real + z.imag * z.imag)
    return total, skipped
