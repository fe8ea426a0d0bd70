"""Pure-Python depth-first lattice enumeration (fallback for the compiled kernel)."""

from __future__ import annotations


def enumerate_points(nvars, groups, count_only=False):
    """
    ``groups[v]`` lists ``(terms, coef, rhs, eq)`` for constraints whose last
    variable is ``v``: ``sum(c*x[k] for k, c in terms) + coef*x[v] >= rhs``
    (``==`` when ``eq``). Returns the points in lexicographic order, or their
    number when ``count_only``.
    """
    x = [0] * nvars
    out = []
    count = 0

    def bounds(v):
        lo = hi = None
        for terms, a, rhs, eq in groups[v]:
            s = rhs
            for k, c in terms:
                s -= c * x[k]
            if eq:
                if s % a:
                    return 0, -1
                val = s // a
                lo = val if lo is None else max(lo, val)
                hi = val if hi is None else min(hi, val)
            elif a > 0:
                val = -((-s) // a)
                lo = val if lo is None else max(lo, val)
            else:
                val = s // a  # floor(s / a) for a < 0
                hi = val if hi is None else min(hi, val)
        return lo, hi

    if nvars == 0:
        return 1 if count_only else [()]

    # explicit stack of (v, next value, hi)
    stack_next = [0] * nvars
    stack_hi = [0] * nvars
    v = 0
    lo, hi = bounds(0)
    stack_next[0], stack_hi[0] = lo, hi
    while v >= 0:
        if stack_next[v] > stack_hi[v]:
            v -= 1
            continue
        x[v] = stack_next[v]
        stack_next[v] += 1
        if v == nvars - 1:
            if count_only:
                count += 1
            else:
                out.append(tuple(x))
            continue
        v += 1
        lo, hi = bounds(v)
        stack_next[v], stack_hi[v] = lo, hi
    return count if count_only else out
