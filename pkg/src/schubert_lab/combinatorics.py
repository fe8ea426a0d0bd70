"""
Permutations, partitions and diagrams in the 1-based matrix convention.

Box ``(i, j)`` is row ``i`` (counted from the top) and column ``j``.

>>> w = Permutation.parse("3142")
>>> sorted(rothe_diagram(w).boxes)
[(1, 1), (1, 2), (3, 2)]
>>> is_column_convex(rothe_diagram(w)), avoids_patterns(w)
(False, False)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Optional, Sequence

__all__ = [
    "Permutation", "Partition", "Diagram", "ParFamily", "ReducedDiagram",
    "NotColumnConvexError",
    "rothe_diagram", "is_column_convex", "avoids_patterns", "find_pattern",
    "par_family", "reduce_diagram", "grassmannian_shape", "diagram_from_family",
    "all_permutations", "partitions_in_box", "all_families",
]

FORBIDDEN_PATTERNS = ((3, 1, 4, 2), (4, 1, 3, 2))


class NotColumnConvexError(ValueError):
    """Raised when an operation needs a column-convex diagram."""


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    text = text.strip()
    if text.startswith("["):
        text = text.strip("[]")
    if "," in text or " " in text.strip():
        tokens = [t for t in text.replace(",", " ").split()]
    else:
        # compact form "256413"; only meaningful for single digits
        tokens = list(text)
    values = []
    for tok in tokens:
        try:
            values.append(int(tok))
        except ValueError:
            raise ValueError(f"malformed {what}: bad token {tok!r}") from None
    return tuple(values)


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``1..n`` in one-line notation."""

    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(v) for v in self.word)
        object.__setattr__(self, "word", word)
        seen = set()
        for v in word:
            if not 1 <= v <= len(word):
                raise ValueError(f"not a permutation: token {v} out of range 1..{len(word)}")
            if v in seen:
                raise ValueError(f"not a permutation: token {v} repeated")
            seen.add(v)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return cls(_parse_ints(text, "permutation"))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __str__(self) -> str:
        if self.n < 10:
            return "".join(map(str, self.word))
        return ",".join(map(str, self.word))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.word, 1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def times_s(self, i: int) -> "Permutation":
        """Right multiplication by ``s_i``: swap positions ``i`` and ``i+1``."""
        w = list(self.word)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(tuple(w))

    def descents(self) -> list[int]:
        return [i for i in range(1, self.n) if self.word[i - 1] > self.word[i]]

    def ascents(self) -> list[int]:
        return [i for i in range(1, self.n) if self.word[i - 1] < self.word[i]]

    def length(self) -> int:
        """Number of inversions."""
        w = self.word
        return sum(1 for a, b in combinations(range(self.n), 2) if w[a] > w[b])

    def to_json(self) -> list[int]:
        return list(self.word)


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing nonnegative parts with a declared length (trailing zeros kept)."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        for p in parts:
            if p < 0:
                raise ValueError(f"not a partition: negative part {p}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"not a partition: part {b} follows smaller part {a}")

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return cls(_parse_ints(text, "partition"))

    @classmethod
    def zero(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        """1-based part access; ``lam[n+1]`` is 0 by convention."""
        if i == self.n + 1:
            return 0
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return self.parts[i - 1]

    def __add__(self, other: "Partition") -> "Partition":
        if self.n != other.n:
            raise ValueError("partitions of different lengths")
        return Partition(tuple(a + b for a, b in zip(self.parts, other.parts)))

    def scaled(self, t: int) -> "Partition":
        return Partition(tuple(t * p for p in self.parts))

    def size(self) -> int:
        return sum(self.parts)

    def is_zero(self) -> bool:
        return not any(self.parts)

    def to_json(self) -> list[int]:
        return list(self.parts)


@dataclass(frozen=True)
class Diagram:
    """A finite set of boxes with an explicit number of rows."""

    boxes: frozenset
    rows: int

    def __post_init__(self):
        boxes = frozenset((int(i), int(j)) for i, j in self.boxes)
        object.__setattr__(self, "boxes", boxes)
        for i, j in boxes:
            if not 1 <= i <= self.rows or j < 1:
                raise ValueError(f"box {(i, j)} outside a diagram with {self.rows} rows")

    @classmethod
    def from_json(cls, data: dict) -> "Diagram":
        return cls(frozenset(tuple(b) for b in data["boxes"]), int(data["rows"]))

    def to_json(self) -> dict:
        return {"rows": self.rows, "boxes": [list(b) for b in sorted(self.boxes)]}

    def columns(self) -> dict[int, list[int]]:
        cols: dict[int, list[int]] = {}
        for i, j in self.boxes:
            cols.setdefault(j, []).append(i)
        return {j: sorted(rs) for j, rs in sorted(cols.items())}

    def __len__(self) -> int:
        return len(self.boxes)


@dataclass(frozen=True)
class ParFamily:
    """Shapes ``lambda^(1), ..., lambda^(n)`` where shape ``i`` has exactly ``i`` parts."""

    shapes: tuple[Partition, ...]

    def __post_init__(self):
        shapes = tuple(s if isinstance(s, Partition) else Partition(tuple(s)) for s in self.shapes)
        object.__setattr__(self, "shapes", shapes)
        for i, s in enumerate(shapes, 1):
            if s.n != i:
                raise ValueError(f"shape {i} has {s.n} parts, expected {i}")

    @classmethod
    def from_lists(cls, lists: Iterable[Sequence[int]]) -> "ParFamily":
        return cls(tuple(Partition(tuple(x)) for x in lists))

    @classmethod
    def zero(cls, n: int) -> "ParFamily":
        return cls(tuple(Partition.zero(i) for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.shapes)

    def __getitem__(self, i: int) -> Partition:
        """``fam[i]`` is ``lambda^(i)`` (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return self.shapes[i - 1]

    def lam(self, i: int, j: int) -> int:
        """The part ``lambda^(i)_j``."""
        return self.shapes[i - 1][j]

    def to_json(self) -> list[list[int]]:
        return [s.to_json() for s in self.shapes]


@dataclass(frozen=True)
class ReducedDiagram:
    tilde: Diagram
    mu: Partition


def all_permutations(n: int) -> Iterator[Permutation]:
    for word in permutations(range(1, n + 1)):
        yield Permutation(word)


def rothe_diagram(w: Permutation) -> Diagram:
    winv = w.inverse()
    n = w.n
    boxes = frozenset(
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if w(i) > j and winv(j) > i
    )
    return Diagram(boxes, n)


def is_column_convex(D: Diagram) -> bool:
    for rows in D.columns().values():
        if rows[-1] - rows[0] + 1 != len(rows):
            return False
    return True


def find_pattern(w: Permutation) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """First occurrence of 3142 or 4132 as ``(pattern, positions)``, or None."""
    for pos in combinations(range(w.n), 4):
        vals = [w.word[p] for p in pos]
        ranks = tuple(sorted(vals).index(v) + 1 for v in vals)
        if ranks in FORBIDDEN_PATTERNS:
            return ranks, tuple(p + 1 for p in pos)
    return None


def avoids_patterns(w: Permutation) -> bool:
    return find_pattern(w) is None


def _require_convex(D: Diagram) -> None:
    if not is_column_convex(D):
        bad = next(j for j, rs in D.columns().items() if rs[-1] - rs[0] + 1 != len(rs))
        raise NotColumnConvexError(f"column {bad} of the diagram is not an interval")


def _conjugate(heights: list[int], length: int) -> Partition:
    return Partition(tuple(sum(1 for h in heights if h >= r) for r in range(1, length + 1)))


def par_family(D: Diagram) -> ParFamily:
    """
    Group the columns of ``D`` by their lowest row ``i`` and read the group as a
    bottom-justified Young diagram: part ``r`` of ``lambda^(i)`` counts the
    columns of height at least ``r``.

    >>> par_family(Diagram(frozenset({(1, 1), (2, 1)}), 3)).to_json()
    [[0], [1, 1], [0, 0, 0]]
    """
    _require_convex(D)
    heights: dict[int, list[int]] = {i: [] for i in range(1, D.rows + 1)}
    for rows in D.columns().values():
        heights[rows[-1]].append(len(rows))
    return ParFamily(tuple(_conjugate(heights[i], i) for i in range(1, D.rows + 1)))


def diagram_from_family(fam: ParFamily) -> Diagram:
    """A canonical column-convex diagram whose family is ``fam``."""
    boxes = set()
    col = 0
    for i in range(1, fam.n + 1):
        lam = fam[i]
        # column heights are the conjugate of lam
        heights = [sum(1 for p in lam.parts if p >= c) for c in range(1, (lam.parts[0] if lam.n else 0) + 1)]
        for h in heights:
            col += 1
            boxes.update((r, col) for r in range(i - h + 1, i + 1))
    return Diagram(frozenset(boxes), fam.n)


def reduce_diagram(D: Diagram) -> ReducedDiagram:
    """
    Drop every column meeting row 1 and shift the rest up one row.

    ``mu`` is the conjugate of the heights of the dropped columns, i.e.
    ``mu_k = sum(lambda^(i)_i for i >= k)``.
    """
    _require_convex(D)
    if D.rows < 1:
        raise ValueError("cannot reduce a diagram with no rows")
    cols = D.columns()
    first = [rs for rs in cols.values() if rs[0] == 1]
    kept = {(i - 1, j) for j, rs in cols.items() if rs[0] != 1 for i in rs}
    mu = _conjugate([len(rs) for rs in first], D.rows)
    return ReducedDiagram(Diagram(frozenset(kept), D.rows - 1), mu)


def grassmannian_shape(w: Permutation) -> Optional[Partition]:
    """
    Shape of a permutation with at most one descent, or None.

    With the descent at ``d`` the shape has ``d`` parts ``w(d+1-i) - (d+1-i)``.
    The identity gets the zero partition of length ``n``.
    """
    desc = w.descents()
    if len(desc) > 1:
        return None
    if not desc:
        return Partition.zero(w.n)
    d = desc[0]
    return Partition(tuple(w(d + 1 - i) - (d + 1 - i) for i in range(1, d + 1)))


def partitions_in_box(length: int, max_part: int) -> Iterator[Partition]:
    """All weakly decreasing sequences of ``length`` parts in ``0..max_part``."""
    def rec(prefix: list[int], bound: int):
        if len(prefix) == length:
            yield Partition(tuple(prefix))
            return
        for p in range(bound, -1, -1):
            yield from rec(prefix + [p], p)
    yield from rec([], max_part)


def all_families(n: int, max_part: int) -> Iterator[ParFamily]:
    def rec(prefix: list[Partition]):
        i = len(prefix) + 1
        if i > n:
            yield ParFamily(tuple(prefix))
            return
        for lam in partitions_in_box(i, max_part):
            yield from rec(prefix + [lam])
    yield from rec([])
