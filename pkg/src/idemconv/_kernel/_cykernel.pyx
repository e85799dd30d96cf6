# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact convolution kernel over int64 numerator matrices.

Same contract as _pykernel.convolve_exact, but the caller must have checked
the 64-bit magnitude bound first; no overflow detection happens here.
"""


def convolve(long long[:, ::1] mul,
             long long[:, ::1] a,
             long long[:, ::1] b,
             long long[::1] a_nz,
             long long[::1] b_nz,
             long long[:, ::1] red,
             long long[:, ::1] acc,
             long long[:, ::1] out):
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t d = a.shape[1]
    cdef Py_ssize_t width = 2 * d - 1
    cdef Py_ssize_t g, h, i, j, k, t
    cdef long long ai, c
    for g in range(n):
        if a_nz[g] == 0:
            continue
        for h in range(n):
            if b_nz[h] == 0:
                continue
            t = mul[g, h]
            for i in range(d):
                ai = a[g, i]
                if ai != 0:
                    for j in range(d):
                        acc[t, i + j] += ai * b[h, j]
    for t in range(n):
        for j in range(d):
            out[t, j] += acc[t, j]
        for j in range(d, width):
            c = acc[t, j]
            if c != 0:
                for k in range(d):
                    out[t, k] += c * red[j, k]
    return 0
