# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled depth-first lattice enumeration over CSR-packed constraints."""

import numpy as np
cimport numpy as cnp

from libc.stdlib cimport malloc, free

cnp.import_array()

ctypedef long long i64

# coordinates beyond this magnitude abort the run; keeps every partial sum inside int64
cdef i64 VALUE_LIMIT = (<i64>1) << 40


cdef inline i64 floordiv(i64 a, i64 b) nogil:
    cdef i64 q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef int bounds(int v, i64* x, const i64[::1] grp_ptr, const i64[::1] term_ptr,
                const i64[::1] term_var, const i64[::1] term_coef,
                const i64[::1] last_coef, const i64[::1] rhs, const signed char[::1] is_eq,
                i64* lo, i64* hi) nogil:
    """Returns 0 if bounds were set, 1 if infeasible, 2 on overflow."""
    cdef i64 c, t, s, a, val
    cdef bint have_lo = False, have_hi = False
    for c in range(grp_ptr[v], grp_ptr[v + 1]):
        s = rhs[c]
        for t in range(term_ptr[c], term_ptr[c + 1]):
            s -= term_coef[t] * x[term_var[t]]
        a = last_coef[c]
        if is_eq[c]:
            if s % a != 0:
                return 1
            val = s / a
            if not have_lo or val > lo[0]:
                lo[0] = val
            if not have_hi or val < hi[0]:
                hi[0] = val
            have_lo = True
            have_hi = True
        elif a > 0:
            val = -floordiv(-s, a)
            if not have_lo or val > lo[0]:
                lo[0] = val
            have_lo = True
        else:
            val = floordiv(s, a)
            if not have_hi or val < hi[0]:
                hi[0] = val
            have_hi = True
    if lo[0] <= hi[0] and (lo[0] < -VALUE_LIMIT or hi[0] > VALUE_LIMIT):
        return 2
    return 0


def enumerate_points(int nvars, const i64[::1] grp_ptr, const i64[::1] term_ptr,
                     const i64[::1] term_var, const i64[::1] term_coef,
                     const i64[::1] last_coef, const i64[::1] rhs, const signed char[::1] is_eq,
                     bint count_only=False):
    """Enumerate in lexicographic order; returns an ``(m, nvars)`` int64 array or a count."""
    if nvars == 0:
        return 1 if count_only else np.zeros((1, 0), dtype=np.int64)
    cdef i64* x = <i64*> malloc(nvars * sizeof(i64))
    cdef i64* nxt = <i64*> malloc(nvars * sizeof(i64))
    cdef i64* top = <i64*> malloc(nvars * sizeof(i64))
    cdef i64 count = 0, cap = 1024, lo = 0, hi = 0
    cdef int v = 0, status, k
    cdef cnp.ndarray[i64, ndim=2] buf
    if not count_only:
        buf = np.empty((cap, nvars), dtype=np.int64)
    try:
        status = bounds(0, x, grp_ptr, term_ptr, term_var, term_coef, last_coef, rhs, is_eq, &lo, &hi)
        if status == 2:
            raise OverflowError("lattice coordinate exceeds the int64-safe range")
        if status == 1:
            lo, hi = 0, -1
        nxt[0] = lo
        top[0] = hi
        while v >= 0:
            if nxt[v] > top[v]:
                v -= 1
                continue
            x[v] = nxt[v]
            nxt[v] += 1
            if v == nvars - 1:
                if not count_only:
                    if count == cap:
                        cap *= 2
                        buf = np.resize(buf, (cap, nvars))
                    for k in range(nvars):
                        buf[count, k] = x[k]
                count += 1
                continue
            v += 1
            status = bounds(v, x, grp_ptr, term_ptr, term_var, term_coef, last_coef, rhs, is_eq, &lo, &hi)
            if status == 2:
                raise OverflowError("lattice coordinate exceeds the int64-safe range")
            if status == 1:
                lo, hi = 0, -1
            nxt[v] = lo
            top[v] = hi
    finally:
        free(x)
        free(nxt)
        free(top)
    if count_only:
        return count
    return buf[:count].copy()
