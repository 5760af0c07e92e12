# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled scatter kernels for the dense exterior-algebra hot loops."""

import numpy as np


def wedge_scatter(const Py_ssize_t[::1] ia, const Py_ssize_t[::1] ib,
                  const Py_ssize_t[::1] iout, const double[::1] sign,
                  const double complex[::1] a, const double complex[::1] b,
                  Py_ssize_t nout):
    out_arr = np.zeros(nout, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t k = 0, n = ia.shape[0], cur
    cdef double complex acc
    # table entries are grouped by output index, so each slot is a single
    # register reduction instead of a read-modify-write per entry
    while k < n:
        cur = iout[k]
        acc = 0
        while k < n and iout[k] == cur:
            acc = acc + sign[k] * a[ia[k]] * b[ib[k]]
            k += 1
        out[cur] = out[cur] + acc
    return out_arr


def contract_scatter(const Py_ssize_t[::1] iin, const Py_ssize_t[::1] icomp,
                     const Py_ssize_t[::1] iout, const double[::1] sign,
                     const double complex[::1] v, const double complex[::1] a,
                     Py_ssize_t nout):
    out_arr = np.zeros(nout, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t k, n = iin.shape[0]
    for k in range(n):
        out[iout[k]] = out[iout[k]] + sign[k] * v[icomp[k]] * a[iin[k]]
    return out_arr
