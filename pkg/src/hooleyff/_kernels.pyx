# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled quadratic-time kernels over residue-index digit tables.

Both kernels walk indices in counting order and maintain base-p digit
counters, so the per-step phase/index update is O(D) at worst and O(1)
amortized: bumping input digit i (and rolling lower digits p-1 -> 0, which
shifts any linear functional by -(p-1) == +1 times its weight mod p) touches
one weight per visited digit position.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def dft_bilinear(const cnp.complex128_t[::1] values, const cnp.uint8_t[:, ::1] digits,
                 const cnp.int64_t[:, ::1] phase_matrix, int p):
    """out[h] = sum_f values[f] * zeta_p^(dig(f)^T M dig(h))."""
    cdef Py_ssize_t N = values.shape[0]
    cdef Py_ssize_t D = digits.shape[1]
    out_arr = np.empty(N, dtype=np.complex128)
    zeta_arr = np.exp(2j * np.pi * np.arange(p) / p)
    w_arr = np.zeros(D + 1, dtype=np.int64)
    counter_arr = np.zeros(D + 1, dtype=np.int64)
    cdef cnp.complex128_t[::1] out = out_arr
    cdef cnp.complex128_t[::1] zeta = zeta_arr
    cdef cnp.int64_t[::1] w = w_arr
    cdef cnp.int64_t[::1] counter = counter_arr
    cdef Py_ssize_t h, f, i, t
    cdef cnp.int64_t acc, s
    cdef cnp.complex128_t total
    for h in range(N):
        for i in range(D):
            acc = 0
            for t in range(D):
                acc += phase_matrix[i, t] * digits[h, t]
            w[i] = acc % p
        w[D] = 0
        for i in range(D + 1):
            counter[i] = 0
        s = 0
        total = 0
        for f in range(N):
            total = total + values[f] * zeta[s]
            i = 0
            while counter[i] == p - 1:
                counter[i] = 0
                s += w[i]
                i += 1
            counter[i] += 1
            s += w[i]
            s = s % p
        out[h] = total
    return out_arr


def mult_convolve(const cnp.complex128_t[::1] v, const cnp.complex128_t[::1] w,
                  const cnp.int64_t[::1] unit_indices,
                  const cnp.int64_t[:, :, ::1] unit_matrices,
                  const cnp.uint8_t[:, ::1] digits, int p,
                  const cnp.int64_t[::1] p_pows):
    """out[x*y] += v[x] * w[y] over unit x and all y (index-level product)."""
    cdef Py_ssize_t N = w.shape[0]
    cdef Py_ssize_t U = unit_indices.shape[0]
    cdef Py_ssize_t D = digits.shape[1]
    out_arr = np.zeros(N, dtype=np.complex128)
    M_arr = np.zeros((max(D, 1), D + 1), dtype=np.int64)
    od_arr = np.zeros(max(D, 1), dtype=np.int64)
    counter_arr = np.zeros(D + 1, dtype=np.int64)
    cdef cnp.complex128_t[::1] out = out_arr
    cdef cnp.int64_t[:, ::1] M = M_arr
    cdef cnp.int64_t[::1] od = od_arr
    cdef cnp.int64_t[::1] counter = counter_arr
    cdef Py_ssize_t j, y, i, t
    cdef cnp.int64_t idx, delta
    cdef cnp.complex128_t c
    for j in range(U):
        c = v[unit_indices[j]]
        if c.real == 0 and c.imag == 0:
            continue
        # column i of M is the output-digit shift when input digit i is bumped;
        # a zero padding column absorbs the final counter overflow
        for t in range(D):
            for i in range(D):
                M[t, i] = unit_matrices[j, t, i]
            M[t, D] = 0
        for i in range(D + 1):
            counter[i] = 0
        for t in range(D):
            od[t] = 0
        idx = 0
        for y in range(N):
            out[idx] = out[idx] + c * w[y]
            i = 0
            while counter[i] == p - 1:
                counter[i] = 0
                for t in range(D):
                    delta = M[t, i]
                    if delta:
                        od[t] += delta
                        if od[t] >= p:
                            od[t] -= p
                            idx += (delta - p) * p_pows[t]
                        else:
                            idx += delta * p_pows[t]
                i += 1
            counter[i] += 1
            for t in range(D):
                delta = M[t, i]
                if delta:
                    od[t] += delta
                    if od[t] >= p:
                        od[t] -= p
                        idx += (delta - p) * p_pows[t]
                    else:
                        idx += delta * p_pows[t]
    return out_arr
