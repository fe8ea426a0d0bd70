"""
Gelfand-Tsetlin polytopes.

The first row is pinned to the partition, ``x_1j = lambda_j``, and every
lower entry interlaces: ``x_(i-1,j-1) >= x_ij >= x_(i-1,j)``.

>>> len(enumerate_lattice(gt_system(Partition((2, 1, 0)))))
8
>>> schur(Partition((2, 1)), 2)
x1^2*x2 + x1*x2^2
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .combinatorics import Partition
from .lattice import (
    Constraint, InequalitySystem, LatticePointSet, TrianglePoint, enumerate_lattice, triangle,
)
from .poly import LaurentPolynomial

__all__ = [
    "gt_system", "gt_points", "integer_point_transform", "specialize", "specialize_point",
    "weight", "schur", "sumset", "check_gt_minkowski", "check_gt_additivity",
]


def gt_system(lam: Partition) -> InequalitySystem:
    if not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    return _gt_system(lam)


@lru_cache(maxsize=512)
def _gt_system(lam: Partition) -> InequalitySystem:
    n = lam.n
    tri = triangle(n)
    cons = [Constraint.make({tri.index(1, j): 1}, lam[j], equality=True) for j in range(1, n + 1)]
    for i in range(2, n + 1):
        for j in range(i, n + 1):
            x = tri.index(i, j)
            cons.append(Constraint.make({tri.index(i - 1, j - 1): 1, x: -1}, 0))
            cons.append(Constraint.make({x: 1, tri.index(i - 1, j): -1}, 0))
            cons.append(Constraint.make({x: 1}, 0))
    return InequalitySystem(n, tuple(cons))


def gt_points(lam: Partition) -> LatticePointSet:
    return enumerate_lattice(gt_system(lam))


def integer_point_transform(points: LatticePointSet) -> LaurentPolynomial:
    """``sum over points c of prod x_ij^c_ij`` in ``n(n+1)/2`` variables."""
    arity = points.n * (points.n + 1) // 2
    return LaurentPolynomial(((p, 1) for p in points.points), arity)


def _row_sums_from_flat(exp: Sequence[int], n: int) -> list[int]:
    tri = triangle(n)
    return [sum(exp[k] for k in tri.row(i)) for i in range(1, n + 1)] + [0]


def specialize_point(p: Sequence[int], n: int) -> tuple[int, ...]:
    """Exponent vector ``C_i - C_(i+1)`` where ``C_i`` is the sum of row ``i``."""
    C = _row_sums_from_flat(p, n)
    return tuple(C[i] - C[i + 1] for i in range(n))


def specialize(sigma: LaurentPolynomial) -> LaurentPolynomial:
    """Image under ``x_1j -> x_1`` and ``x_ij -> x_(i-1)^-1 x_i`` for ``i > 1``."""
    m = sigma.arity
    n = 0
    while n * (n + 1) // 2 < m:
        n += 1
    if n * (n + 1) // 2 != m:
        raise ValueError(f"arity {m} is not a triangular number")
    acc: dict[tuple[int, ...], int] = {}
    for exp, c in sigma.items():
        e = specialize_point(exp, n)
        acc[e] = acc.get(e, 0) + c
    return LaurentPolynomial(acc, n)


def weight(p: TrianglePoint) -> tuple[int, ...]:
    """``wt_i = sum_(j>=i) x_ij - sum_(j>=i+1) x_(i+1,j)``."""
    n = p.n
    return tuple(p.row_sum(i) - p.row_sum(i + 1) for i in range(1, n + 1))


def schur(lam: Partition, n: int | None = None) -> LaurentPolynomial:
    if not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    if n is not None and n != lam.n:
        raise ValueError(f"partition has {lam.n} parts but n = {n}")
    acc: dict[tuple[int, ...], int] = {}
    for p in gt_points(lam).triangle_points():
        w = weight(p)
        acc[w] = acc.get(w, 0) + 1
    return LaurentPolynomial(acc, lam.n)


def sumset(sets: Sequence[LatticePointSet], n: int | None = None) -> LatticePointSet:
    """
    All sums ``p_1 + ... + p_r`` with ``p_k`` drawn from ``sets[k]``.

    The empty list yields ``{origin}`` (``n`` is then required).
    """
    if not sets:
        if n is None:
            raise ValueError("n is required for an empty sumset")
        size = n * (n + 1) // 2
        return LatticePointSet(n, ((0,) * size,))
    n = sets[0].n
    acc = set(sets[0].points)
    for s in sets[1:]:
        if s.n != n:
            raise ValueError("sumset of sets in different triangles")
        acc = {tuple(a + b for a, b in zip(p, q)) for p in acc for q in s.points}
    return LatticePointSet(n, tuple(acc))


def _unit_column(k: int, n: int) -> Partition:
    return Partition((1,) * k + (0,) * (n - k))


def check_gt_minkowski(lam: Partition) -> bool:
    """``GT(lam)`` equals the sum of ``lam_k - lam_(k+1)`` copies of ``GT(1^k 0^(n-k))`` at lattice level."""
    n = lam.n
    summands = []
    for k in range(1, n + 1):
        piece = gt_points(_unit_column(k, n))
        summands.extend([piece] * (lam[k] - lam[k + 1]))
    return sumset(summands, n).as_set() == gt_points(lam).as_set()


def check_gt_additivity(lam: Partition, mu: Partition) -> bool:
    """``GT(lam) + GT(mu) == GT(lam + mu)`` at lattice level."""
    if lam.n != mu.n:
        raise ValueError("partitions of different lengths")
    return sumset([gt_points(lam), gt_points(mu)]).as_set() == gt_points(lam + mu).as_set()
