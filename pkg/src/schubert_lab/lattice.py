"""
Triangle coordinates ``x_ij`` (``1 <= i <= j <= n``), linear systems over them
and lattice-point enumeration.

Coordinates are flattened row-major: ``(1,1), (1,2), ..., (1,n), (2,2), ...``.
Enumeration runs in the compiled kernel when it is importable and falls back
to pure Python otherwise; set ``SCHUBERT_LAB_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import _enum_py

try:
    from . import _enum_c
except ImportError:  # extension not built
    _enum_c = None

__all__ = [
    "Triangle", "TrianglePoint", "Constraint", "InequalitySystem", "LatticePointSet",
    "UnboundedSystemError", "enumerate_lattice", "backend_name", "set_backend",
]

_backend = "python" if (_enum_c is None or os.environ.get("SCHUBERT_LAB_PURE")) else "cython"


def backend_name() -> str:
    return _backend


def set_backend(name: str) -> None:
    """Select ``"cython"`` or ``"python"`` for subsequent enumerations."""
    global _backend
    if name == "cython" and _enum_c is None:
        raise RuntimeError("compiled kernel is not available")
    if name not in ("cython", "python"):
        raise ValueError(name)
    _backend = name


class UnboundedSystemError(ValueError):
    """No finite bound on some coordinate can be derived from earlier coordinates."""


class Triangle:
    """Index arithmetic for a size-``n`` triangle."""

    def __init__(self, n: int):
        self.n = n
        self.coords = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
        self._index = {c: k for k, c in enumerate(self.coords)}

    def __len__(self) -> int:
        return len(self.coords)

    def index(self, i: int, j: int) -> int:
        try:
            return self._index[(i, j)]
        except KeyError:
            raise KeyError(f"x_{i}{j} is not a coordinate of a size-{self.n} triangle") from None

    def __contains__(self, ij) -> bool:
        return ij in self._index

    def row(self, i: int) -> range:
        start = self._index[(i, i)]
        return range(start, start + self.n - i + 1)


@lru_cache(maxsize=None)
def triangle(n: int) -> Triangle:
    return Triangle(n)


@dataclass(frozen=True)
class TrianglePoint:
    """Values ``x_ij`` of a size-``n`` triangle, stored row-major."""

    n: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.n * (self.n + 1) // 2:
            raise ValueError(f"a size-{self.n} triangle has {self.n * (self.n + 1) // 2} entries")

    @classmethod
    def from_dict(cls, n: int, entries: Mapping[tuple[int, int], object]) -> "TrianglePoint":
        tri = triangle(n)
        vals = [0] * len(tri)
        for (i, j), v in entries.items():
            vals[tri.index(i, j)] = v
        return cls(n, tuple(vals))

    @classmethod
    def zero(cls, n: int) -> "TrianglePoint":
        return cls(n, (0,) * (n * (n + 1) // 2))

    def __getitem__(self, ij: tuple[int, int]):
        return self.values[triangle(self.n).index(*ij)]

    def get(self, i: int, j: int, default=0):
        if (i, j) in triangle(self.n):
            return self.values[triangle(self.n).index(i, j)]
        return default

    def row_sum(self, i: int):
        if i > self.n:
            return 0
        return sum(self.values[k] for k in triangle(self.n).row(i))

    def rows(self) -> list[list]:
        return [[self[i, j] for j in range(i, self.n + 1)] for i in range(1, self.n + 1)]

    def to_json(self) -> dict:
        return {"n": self.n, "x": list(self.values)}


@dataclass(frozen=True)
class Constraint:
    """``sum(coef * x[idx]) >= rhs``, or ``==`` when ``equality``; indices are flat."""

    coeffs: tuple[tuple[int, int], ...]
    rhs: int
    equality: bool = False

    @classmethod
    def make(cls, terms: Mapping[int, int] | Iterable[tuple[int, int]], rhs: int, equality: bool = False) -> "Constraint":
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            acc[k] = acc.get(k, 0) + c
        return cls(tuple(sorted((k, c) for k, c in acc.items() if c)), int(rhs), equality)

    def value(self, x: Sequence[int]) -> int:
        return sum(c * x[k] for k, c in self.coeffs)

    def holds(self, x: Sequence[int]) -> bool:
        v = self.value(x)
        return v == self.rhs if self.equality else v >= self.rhs

    def variables(self) -> list[int]:
        return [k for k, _ in self.coeffs]

    def describe(self, n: int) -> str:
        coords = triangle(n).coords
        lhs = " ".join(
            f"{'+' if c > 0 else '-'} {'' if abs(c) == 1 else abs(c)}x{coords[k][0]}{coords[k][1]}"
            for k, c in self.coeffs
        ).lstrip("+ ")
        return f"{lhs or '0'} {'=' if self.equality else '>='} {self.rhs}"


@dataclass(frozen=True)
class InequalitySystem:
    n: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        size = self.n * (self.n + 1) // 2
        for con in self.constraints:
            for k, _ in con.coeffs:
                if not 0 <= k < size:
                    raise ValueError(f"constraint references coordinate {k} outside the triangle")

    @property
    def nvars(self) -> int:
        return self.n * (self.n + 1) // 2

    def contains(self, x: Sequence[int]) -> bool:
        return all(c.holds(x) for c in self.constraints)

    def with_constraints(self, extra: Iterable[Constraint]) -> "InequalitySystem":
        return InequalitySystem(self.n, self.constraints + tuple(extra))

    def to_json(self) -> dict:
        coords = triangle(self.n).coords
        return {
            "n": self.n,
            "constraints": [
                {
                    "coeffs": [[coords[k][0], coords[k][1], c] for k, c in con.coeffs],
                    "sense": "==" if con.equality else ">=",
                    "rhs": con.rhs,
                }
                for con in self.constraints
            ],
        }


@dataclass(frozen=True)
class LatticePointSet:
    """Integer points of a size-``n`` triangle, kept sorted lexicographically."""

    n: int
    points: tuple[tuple[int, ...], ...]
    _set: frozenset = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        pts = tuple(sorted(set(self.points)))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_set", frozenset(pts))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.points)

    def __contains__(self, p) -> bool:
        if isinstance(p, TrianglePoint):
            p = p.values
        return tuple(p) in self._set

    def as_set(self) -> frozenset:
        return self._set

    def triangle_points(self) -> list[TrianglePoint]:
        return [TrianglePoint(self.n, p) for p in self.points]

    def to_json(self) -> dict:
        return {"n": self.n, "points": [list(p) for p in self.points]}


def _compile(system: InequalitySystem):
    """Group constraints by their last variable; reject variables lacking a bound."""
    nvars = system.nvars
    groups: list[list] = [[] for _ in range(nvars)]
    for con in system.constraints:
        if not con.coeffs:
            if not (0 == con.rhs if con.equality else 0 >= con.rhs):
                return None  # infeasible constant constraint
            continue
        *head, (last, a) = con.coeffs
        groups[last].append((tuple(head), a, con.rhs, con.equality))
    coords = triangle(system.n).coords
    for v, grp in enumerate(groups):
        lower = any(eq or a > 0 for _, a, _, eq in grp)
        upper = any(eq or a < 0 for _, a, _, eq in grp)
        if not (lower and upper):
            i, j = coords[v]
            side = "lower" if not lower else "upper"
            raise UnboundedSystemError(f"no {side} bound derivable for x_{i}{j}")
    return groups


def _pack(nvars: int, groups):
    grp_ptr = [0]
    term_ptr = [0]
    term_var, term_coef, last_coef, rhs, is_eq = [], [], [], [], []
    for grp in groups:
        for head, a, r, eq in grp:
            for k, c in head:
                term_var.append(k)
                term_coef.append(c)
            term_ptr.append(len(term_var))
            last_coef.append(a)
            rhs.append(r)
            is_eq.append(1 if eq else 0)
        grp_ptr.append(len(last_coef))
    if any(abs(c) >= 1 << 15 for c in term_coef + last_coef) or any(abs(r) >= 1 << 40 for r in rhs):
        return None
    as64 = lambda xs: np.asarray(xs, dtype=np.int64)
    return (
        as64(grp_ptr), as64(term_ptr), as64(term_var), as64(term_coef),
        as64(last_coef), as64(rhs), np.asarray(is_eq, dtype=np.int8),
    )


def enumerate_lattice(system: InequalitySystem, count_only: bool = False):
    """
    All integer points of ``system``, scanning coordinates row by row.

    Each coordinate is bounded by the constraints whose remaining coordinates
    come earlier in row-major order; every constraint is therefore checked as
    soon as its last coordinate is assigned.

    Raises ``UnboundedSystemError`` if some coordinate has no derivable bound.
    """
    groups = _compile(system)
    if groups is None:
        return 0 if count_only else LatticePointSet(system.n, ())
    nvars = system.nvars
    if _backend == "cython":
        packed = _pack(nvars, groups)
        if packed is not None:
            res = _enum_c.enumerate_points(nvars, *packed, count_only)
            if count_only:
                return int(res)
            return LatticePointSet(system.n, tuple(map(tuple, res.tolist())))
    res = _enum_py.enumerate_points(nvars, groups, count_only)
    if count_only:
        return res
    return LatticePointSet(system.n, tuple(res))
