"""
Sparse Laurent polynomials over the integers, divided differences, Demazure
operators, Schubert polynomials and flagged Schur characters.

>>> x1, x2 = LaurentPolynomial.variable(1, 2), LaurentPolynomial.variable(2, 2)
>>> divided_difference(x1 * x1 * x2, 1)
x1*x2
>>> demazure(x1, 1)
x1 + x2
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .combinatorics import (
    Diagram, Permutation, is_column_convex, NotColumnConvexError, reduce_diagram,
)

__all__ = [
    "LaurentPolynomial", "DemazureParams",
    "divided_difference", "demazure", "schubert", "schubert_along",
    "flagged_character", "lemma_di_sides", "verify_lemma_di",
]

Exponent = tuple[int, ...]


class LaurentPolynomial:
    """
    Immutable map from exponent vectors to nonzero integer coefficients.

    All exponent vectors share the declared ``arity``. Exponents may be negative.
    """

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = (), arity: Optional[int] = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if arity is None:
                arity = len(exp)
            elif len(exp) != arity:
                raise ValueError(f"exponent {exp} does not have arity {arity}")
            acc[exp] = acc.get(exp, 0) + int(c)
        if arity is None:
            raise ValueError("arity is required for the zero polynomial")
        self.arity = arity
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self._hash = None

    # construction helpers

    @classmethod
    def _raw(cls, terms: dict[Exponent, int], arity: int) -> "LaurentPolynomial":
        # terms must already be free of zeros
        p = cls.__new__(cls)
        p.arity = arity
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, arity: int) -> "LaurentPolynomial":
        return cls._raw({}, arity)

    @classmethod
    def one(cls, arity: int) -> "LaurentPolynomial":
        return cls._raw({(0,) * arity: 1}, arity)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int = 1) -> "LaurentPolynomial":
        return cls({tuple(exp): coeff})

    @classmethod
    def variable(cls, i: int, arity: int) -> "LaurentPolynomial":
        exp = [0] * arity
        exp[i - 1] = 1
        return cls._raw({tuple(exp): 1}, arity)

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPolynomial":
        return cls(((tuple(t["exp"]), t["coeff"]) for t in data["terms"]), int(data["arity"]))

    # inspection

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(e >= 0 for exp in self._terms for e in exp)

    def has_nonnegative_coefficients(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def evaluate(self, values: Sequence) -> object:
        total = 0
        for exp, c in self._terms.items():
            term = c
            for v, e in zip(values, exp):
                term = term * v ** e
            total += term
        return total

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in decreasing lexicographic order of exponents."""
        return sorted(self._terms.items(), reverse=True)

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "terms": [{"exp": list(e), "coeff": c} for e, c in self.sorted_terms()],
        }

    # arithmetic

    def _check(self, other: "LaurentPolynomial") -> None:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.one(self.arity) * other
        self._check(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return LaurentPolynomial._raw(acc, self.arity)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({e: -c for e, c in self._terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPolynomial.zero(self.arity)
            return LaurentPolynomial._raw({e: c * other for e, c in self._terms.items()}, self.arity)
        self._check(other)
        acc: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPolynomial._raw({e: c for e, c in acc.items() if c}, self.arity)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = LaurentPolynomial.one(self.arity)
        for _ in range(k):
            result = result * self
        return result

    def shift(self, exp: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial ``x^exp``."""
        exp = tuple(exp)
        if len(exp) != self.arity:
            raise ValueError("shift exponent has the wrong arity")
        return LaurentPolynomial._raw(
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()}, self.arity
        )

    def swap(self, i: int) -> "LaurentPolynomial":
        """``s_i f``: exchange ``x_i`` and ``x_{i+1}``."""
        out = {}
        for e, c in self._terms.items():
            e = list(e)
            e[i - 1], e[i] = e[i], e[i - 1]
            out[tuple(e)] = c
        return LaurentPolynomial._raw(out, self.arity)

    def extend(self, arity: int) -> "LaurentPolynomial":
        """Pad exponent vectors with zeros up to ``arity``."""
        if arity < self.arity:
            raise ValueError("cannot shrink arity")
        pad = (0,) * (arity - self.arity)
        return LaurentPolynomial._raw({e + pad: c for e, c in self._terms.items()}, arity)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == LaurentPolynomial.one(self.arity) * other
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "0"
        out = []
        for exp, c in self.sorted_terms():
            factors = []
            for k, e in enumerate(exp, 1):
                if e == 1:
                    factors.append(f"x{k}")
                elif e:
                    factors.append(f"x{k}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text


def divided_difference(f: LaurentPolynomial, i: int) -> LaurentPolynomial:
    """
    ``(f - s_i f) / (x_i - x_{i+1})``, computed monomial by monomial.

    For ``x_i^a x_{i+1}^b`` with ``a > b`` the quotient is
    ``x_i^b x_{i+1}^b (x_i^(a-b-1) + x_i^(a-b-2) x_{i+1} + ... + x_{i+1}^(a-b-1))``;
    ``a < b`` is the negative of the swapped case and ``a == b`` gives 0.
    """
    if not 1 <= i < f.arity:
        raise ValueError(f"index {i} out of range for arity {f.arity}")
    p, q = i - 1, i
    acc: dict[Exponent, int] = {}
    for exp, c in f.items():
        a, b = exp[p], exp[q]
        if a == b:
            continue
        if a < b:
            a, b, c = b, a, -c
        base = list(exp)
        for t in range(a - b):
            base[p] = a - 1 - t
            base[q] = b + t
            e = tuple(base)
            acc[e] = acc.get(e, 0) + c
    return LaurentPolynomial._raw({e: c for e, c in acc.items() if c}, f.arity)


def demazure(f: LaurentPolynomial, i: int) -> LaurentPolynomial:
    """``pi_i f = d_i(x_i f)``."""
    unit = [0] * f.arity
    unit[i - 1] = 1
    return divided_difference(f.shift(unit), i)


def _schubert_recursive(word: tuple[int, ...], pick: Callable[[list[int]], int]) -> LaurentPolynomial:
    n = len(word)
    w = Permutation(word)
    asc = w.ascents()
    if not asc:
        return LaurentPolynomial.monomial(tuple(n - k for k in range(1, n + 1)))
    i = pick(asc)
    return divided_difference(_schubert_recursive(w.times_s(i).word, pick), i)


@lru_cache(maxsize=None)
def _schubert_cached(word: tuple[int, ...]) -> LaurentPolynomial:
    w = Permutation(word)
    asc = w.ascents()
    if not asc:
        return LaurentPolynomial.monomial(tuple(w.n - k for k in range(1, w.n + 1)))
    i = asc[0]
    return divided_difference(_schubert_cached(w.times_s(i).word), i)


def schubert(w: Permutation) -> LaurentPolynomial:
    """
    Schubert polynomial in ``x_1..x_n``, descending from ``x_1^(n-1) x_2^(n-2) ... x_(n-1)``.

    >>> schubert(Permutation.parse("132"))
    x1 + x2
    """
    return _schubert_cached(w.word)


def schubert_along(w: Permutation, pick: Callable[[list[int]], int]) -> LaurentPolynomial:
    """Schubert polynomial where ``pick`` chooses the ascent used at each step (uncached)."""
    return _schubert_recursive(w.word, pick)


def flagged_character(D: Diagram) -> LaurentPolynomial:
    """
    Character of the flagged Schur module of a column-convex diagram, by the
    recursion ``s_D = x^mu pi_1 pi_2 ... pi_(n-1) s_Dtilde``.

    >>> from .combinatorics import rothe_diagram
    >>> flagged_character(rothe_diagram(Permutation.parse("132")))
    x1 + x2
    """
    if not is_column_convex(D):
        raise NotColumnConvexError("flagged_character needs a column-convex diagram")
    return _flagged(D)


@lru_cache(maxsize=4096)
def _flagged(D: Diagram) -> LaurentPolynomial:
    n = D.rows
    if n == 0:
        return LaurentPolynomial.one(0)
    red = reduce_diagram(D)
    f = _flagged(red.tilde).extend(n)
    for i in range(n - 1, 0, -1):
        f = demazure(f, i)
    return f.shift(red.mu.parts)


@dataclass(frozen=True)
class DemazureParams:
    n1: int
    n2: int
    bounds: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple((int(a), int(b)) for a, b in self.bounds))
        if self.n1 < 0 or self.n2 < 0:
            raise ValueError("N1 and N2 must be nonnegative")
        for mu, nu in self.bounds:
            if not 0 <= mu <= nu:
                raise ValueError(f"bad bound pair {(mu, nu)}")
        if self.spare() < 0:
            raise ValueError("sum of bounds exceeds N1 + N2")

    def spare(self) -> int:
        """``nu_(k+1) = N1 + N2 - sum(mu_i + nu_i)``."""
        return self.n1 + self.n2 - sum(mu + nu for mu, nu in self.bounds)


def lemma_di_sides(p: DemazureParams) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    """The box sum ``f`` and the claimed value of ``pi_1 f`` (both in two variables)."""
    ranges = [range(mu, nu + 1) for mu, nu in p.bounds]
    f: dict[Exponent, int] = {}
    g: dict[Exponent, int] = {}
    for cs in product(*ranges):
        s = sum(cs)
        e = (p.n1 - s, s - p.n2)
        f[e] = f.get(e, 0) + 1
        for extra in range(p.spare() + 1):
            e = (p.n1 - s - extra, s + extra - p.n2)
            g[e] = g.get(e, 0) + 1
    return LaurentPolynomial(f, 2), LaurentPolynomial(g, 2)


def verify_lemma_di(p: DemazureParams) -> bool:
    f, claimed = lemma_di_sides(p)
    return demazure(f, 1) == claimed
