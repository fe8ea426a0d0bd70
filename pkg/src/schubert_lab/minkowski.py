"""
The polytope ``P_D = GT(lambda^(1)) + ... + GT(lambda^(n))`` of a column-convex
diagram, its zigzag inequality description, the slices ``P_D^(m)`` and the
check that its specialized integer point transform is the Schubert polynomial.

The size-``k`` summand sits right-aligned in the size-``n`` triangle:
``y_ij -> x_(i, j+n-k)``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Optional, Union

from .combinatorics import (
    Diagram, NotColumnConvexError, ParFamily, Permutation, find_pattern, grassmannian_shape,
    is_column_convex, par_family, reduce_diagram, rothe_diagram,
)
from .gt import gt_points, integer_point_transform, specialize, sumset
from .lattice import (
    Constraint, InequalitySystem, LatticePointSet, TrianglePoint, UnboundedSystemError,
    enumerate_lattice, triangle,
)
from .poly import LaurentPolynomial, flagged_character, schubert

__all__ = [
    "ZigzagSequence", "Parallelepiped", "ParapolytopeViolation", "Theorem1Report",
    "embed", "embed_points", "zigzag_sequences", "q_system", "p_d_points", "embedded_summands",
    "minkowski_oracle", "slice_system", "fiber_box", "verify_theorem1",
]


@dataclass(frozen=True)
class ZigzagSequence:
    """``0 <= i_k < ... < i_1 < j_1 < ... < j_k <= n``; ``i[s-1]`` is ``i_s``."""

    i: tuple[int, ...]
    j: tuple[int, ...]

    def __post_init__(self):
        k = len(self.i)
        if k < 1 or len(self.j) != k:
            raise ValueError("a zigzag sequence needs k >= 1 values of each kind")
        chain = tuple(reversed(self.i)) + self.j
        if chain[0] < 0 or any(a >= b for a, b in zip(chain, chain[1:])):
            raise ValueError(f"not strictly interleaved: i={self.i}, j={self.j}")

    @property
    def k(self) -> int:
        return len(self.i)

    def lhs(self) -> dict[tuple[int, int], int]:
        """Coefficients of the left side, keyed by coordinate ``(row, column)``."""
        coeffs: dict[tuple[int, int], int] = {}
        for s in range(self.k):
            c = (self.j[s] - self.i[s], self.j[s])
            coeffs[c] = coeffs.get(c, 0) + 1
        for s in range(self.k - 1):
            c = (self.j[s + 1] - self.i[s], self.j[s + 1])
            coeffs[c] = coeffs.get(c, 0) - 1
        return coeffs

    def rhs(self, fam: ParFamily) -> int:
        """``sum_(s=0..i_k) lambda^(n-s)_(j_1-s)``."""
        n = fam.n
        return sum(fam.lam(n - s, self.j[0] - s) for s in range(self.i[-1] + 1))

    def is_equality(self) -> bool:
        return self.k == 1 and self.j[0] == self.i[0] + 1


@dataclass(frozen=True)
class Parallelepiped:
    """Integer box ``lower[t] <= x_(k, k+t) <= upper[t]`` of a row-``k`` fiber."""

    row: int
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise ValueError("bound vectors differ in length")
        for lo, hi in zip(self.lower, self.upper):
            if lo > hi:
                raise ValueError("empty parallelepiped")

    def count(self) -> int:
        return math.prod(hi - lo + 1 for lo, hi in zip(self.lower, self.upper))


class ParapolytopeViolation(ValueError):
    """A fiber constraint couples two coordinates of the same row."""


def embed(k: int, n: int, p: TrianglePoint) -> TrianglePoint:
    if k > n:
        raise ValueError(f"cannot embed a size-{k} triangle into size {n}")
    if p.n != k:
        raise ValueError("point size does not match k")
    entries = {(i, j + n - k): p[i, j] for i in range(1, k + 1) for j in range(i, k + 1)}
    return TrianglePoint.from_dict(n, entries)


def embed_points(k: int, n: int, pts: LatticePointSet) -> LatticePointSet:
    if k > n:
        raise ValueError(f"cannot embed a size-{k} triangle into size {n}")
    src = triangle(k)
    dst = triangle(n)
    target = [dst.index(i, j + n - k) for (i, j) in src.coords]
    size = len(dst)
    out = []
    for p in pts.points:
        v = [0] * size
        for t, val in zip(target, p):
            v[t] = val
        out.append(tuple(v))
    return LatticePointSet(n, tuple(out))


def zigzag_sequences(n: int) -> list[ZigzagSequence]:
    """Every strictly interleaved sequence, ordered by ``k`` then lexicographically."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for k in range(1, (n + 1) // 2 + 1):
        for chosen in combinations(range(n + 1), 2 * k):
            i_part = tuple(reversed(chosen[:k]))
            out.append(ZigzagSequence(i_part, tuple(chosen[k:])))
    return out


def _zigzag_constraint(z: ZigzagSequence, fam: ParFamily) -> Constraint:
    tri = triangle(fam.n)
    return Constraint.make(
        {tri.index(*c): v for c, v in z.lhs().items()}, z.rhs(fam), equality=z.is_equality()
    )


def q_system(fam: ParFamily) -> InequalitySystem:
    """Interlacing ``x_(i-1,j-1) >= x_ij`` plus one zigzag inequality per sequence."""
    n = fam.n
    tri = triangle(n)
    cons = []
    for i in range(2, n + 1):
        for j in range(i, n + 1):
            cons.append(Constraint.make({tri.index(i - 1, j - 1): 1, tri.index(i, j): -1}, 0))
    cons.extend(_zigzag_constraint(z, fam) for z in zigzag_sequences(n))
    return InequalitySystem(n, tuple(cons))


def p_d_points(fam: ParFamily) -> LatticePointSet:
    return enumerate_lattice(q_system(fam))


def embedded_summands(fam: ParFamily) -> list[LatticePointSet]:
    return [embed_points(k, fam.n, gt_points(fam[k])) for k in range(1, fam.n + 1)]


def minkowski_oracle(fam: ParFamily) -> LatticePointSet:
    """Brute-force lattice Minkowski sum of the embedded summands."""
    return sumset(embedded_summands(fam))


def _family(D: Union[Diagram, ParFamily]) -> ParFamily:
    return D if isinstance(D, ParFamily) else par_family(D)


def slice_system(D: Union[Diagram, ParFamily], m: int) -> InequalitySystem:
    """
    ``P_D^(m)``: the zigzag system without constraints touching ``x_in`` for
    ``i <= m``, with those coordinates set to zero.
    """
    fam = _family(D)
    n = fam.n
    if any(fam.lam(k, k) for k in range(1, n + 1)):
        raise ValueError("slice_system needs a diagram without boxes in the first row")
    if not 1 <= m <= n:
        raise ValueError(f"m must lie in 1..{n}")
    tri = triangle(n)
    dropped = {tri.index(i, n) for i in range(1, m + 1)}
    cons = [c for c in q_system(fam).constraints if not dropped.intersection(c.variables())]
    cons.extend(Constraint.make({v: 1}, 0, equality=True) for v in sorted(dropped))
    return InequalitySystem(n, tuple(cons))


def fiber_box(system: InequalitySystem, k: int, fixed: Union[TrianglePoint, Mapping[tuple[int, int], int]]) -> Optional[Parallelepiped]:
    """
    The lattice fiber over fixed values of every coordinate outside row ``k``.

    Returns None for an empty fiber. Only constraints meeting row ``k`` in at
    most one coordinate are allowed; anything else raises
    ``ParapolytopeViolation``.
    """
    n = system.n
    tri = triangle(n)
    if isinstance(fixed, TrianglePoint):
        values = list(fixed.values)
    else:
        values = [0] * len(tri)
        for ij, v in fixed.items():
            if ij[0] != k:
                values[tri.index(*ij)] = v
    free = list(tri.row(k))
    free_set = set(free)
    lo: dict[int, Optional[int]] = {v: None for v in free}
    hi: dict[int, Optional[int]] = {v: None for v in free}
    empty = False
    for con in system.constraints:
        inside = [(v, c) for v, c in con.coeffs if v in free_set]
        rest = sum(c * values[v] for v, c in con.coeffs if v not in free_set)
        if len(inside) > 1:
            raise ParapolytopeViolation(f"constraint {con.describe(n)} couples row-{k} coordinates")
        if not inside:
            ok = rest == con.rhs if con.equality else rest >= con.rhs
            empty = empty or not ok
            continue
        v, a = inside[0]
        s = con.rhs - rest
        if con.equality:
            if s % a:
                empty = True
                continue
            val = s // a
            lo[v] = val if lo[v] is None else max(lo[v], val)
            hi[v] = val if hi[v] is None else min(hi[v], val)
        elif a > 0:
            val = -((-s) // a)
            lo[v] = val if lo[v] is None else max(lo[v], val)
        else:
            val = s // a
            hi[v] = val if hi[v] is None else min(hi[v], val)
    for v in free:
        if lo[v] is None or hi[v] is None:
            i, j = tri.coords[v]
            raise UnboundedSystemError(f"fiber coordinate x_{i}{j} is unbounded")
        if lo[v] > hi[v]:
            empty = True
    if empty:
        return None
    return Parallelepiped(k, tuple(lo[v] for v in free), tuple(hi[v] for v in free))


@dataclass
class Theorem1Report:
    w: Permutation
    column_convex: bool
    lattice_count: int
    polytope_side: LaurentPolynomial
    schubert: LaurentPolynomial
    character: LaurentPolynomial
    equal_schubert: bool
    equal_character: bool
    equal_reduced: bool
    millis: float
    grassmannian_match: Optional[bool] = None

    @property
    def ok(self) -> bool:
        checks = [self.equal_schubert, self.equal_character, self.equal_reduced]
        if self.grassmannian_match is not None:
            checks.append(self.grassmannian_match)
        return all(checks)

    def to_json(self) -> dict:
        out = {
            "w": self.w.to_json(),
            "columnConvex": self.column_convex,
            "latticeCount": self.lattice_count,
            "equalSchubert": self.equal_schubert,
            "equalCharacter": self.equal_character,
            "equalReduced": self.equal_reduced,
            "millis": round(self.millis, 3),
        }
        if self.grassmannian_match is not None:
            out["grassmannianMatch"] = self.grassmannian_match
        if not self.ok:
            out["polytopeSide"] = self.polytope_side.to_json()
            out["schubert"] = self.schubert.to_json()
            out["character"] = self.character.to_json()
        return out


def _strip_first_row(D: Diagram) -> Diagram:
    cols = D.columns()
    return Diagram(frozenset((i, j) for j, rs in cols.items() if rs[0] != 1 for i in rs), D.rows)


def verify_theorem1(w: Permutation) -> Theorem1Report:
    """
    Compare the specialized transform of ``P_D(w)`` with the Schubert polynomial
    and the flagged character; also redo it after removing first-row columns
    and multiplying back by ``x^mu``.
    """
    start = time.perf_counter()
    D = rothe_diagram(w)
    if not is_column_convex(D):
        pattern, positions = find_pattern(w)
        raise NotColumnConvexError(
            f"{w} is not column-convex: contains {''.join(map(str, pattern))} at positions {positions}"
        )
    fam = par_family(D)
    pts = p_d_points(fam)
    s = specialize(integer_point_transform(pts))
    S = schubert(w)
    ch = flagged_character(D)
    mu = reduce_diagram(D).mu
    stripped = p_d_points(par_family(_strip_first_row(D)))
    reduced = specialize(integer_point_transform(stripped)).shift(mu.parts)
    shape = grassmannian_shape(w)
    grass = None
    if shape is not None:
        grass = pts.as_set() == embed_points(shape.n, w.n, gt_points(shape)).as_set()
    return Theorem1Report(
        w=w, column_convex=True, lattice_count=len(pts), polytope_side=s, schubert=S,
        character=ch, equal_schubert=s == S, equal_character=s == ch,
        equal_reduced=reduced == S, millis=(time.perf_counter() - start) * 1000,
        grassmannian_match=grass,
    )
