"""Coordinate rules for functions living on a lattice Z g_1 + ... + Z g_s.

A rule is a rational combination of monomials; a monomial is a product over
coordinates of one factor each:

    ONE            1
    (POW, d)       k_i ** d        (d >= 1)
    (GT, t)        [k_i > t]       (t integer)

A power and a step in the same coordinate are never multiplied together.
With that restriction the monomials are linearly independent functions on
Z^s (each univariate family {1, k, k^2, ..., [k > t]} is independent on Z and
tensor products of independent families stay independent), so a rule is the
zero function exactly when its coefficient table is empty.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from ..errors import RepresentabilityError
from ..exact import as_fraction, render_rational

ONE = (0, 0)
POW = 1
GT = 2


def _mul_factor(a, b):
    if a == ONE:
        return b
    if b == ONE:
        return a
    if a[0] == POW and b[0] == POW:
        return (POW, a[1] + b[1])
    if a[0] == GT and b[0] == GT:
        return (GT, max(a[1], b[1]))
    raise RepresentabilityError("k_i * [k_i > t] products are outside the rule class")


class Rule:
    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = dim
        clean = {}
        for mono, c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                clean[tuple(mono)] = clean.get(tuple(mono), 0) + c
        self.terms = {m: c for m, c in clean.items() if c}

    # -- builders --------------------------------------------------------------
    def _one(self):
        return (ONE,) * self.dim

    @classmethod
    def constant(cls, dim: int, c) -> "Rule":
        return cls(dim, {(ONE,) * dim: c})

    @classmethod
    def _atom(cls, dim: int, i: int, factor) -> "Rule":
        if not 0 <= i < dim:
            raise IndexError(f"coordinate k{i + 1} outside rule of dimension {dim}")
        mono = [ONE] * dim
        mono[i] = factor
        return cls(dim, {tuple(mono): 1})

    @classmethod
    def coord(cls, dim: int, i: int, power: int = 1) -> "Rule":
        if power == 0:
            return cls.constant(dim, 1)
        return cls._atom(dim, i, (POW, power))

    @classmethod
    def greater(cls, dim: int, i: int, t: int = 0) -> "Rule":
        """[k_i > t]."""
        return cls._atom(dim, i, (GT, int(t)))

    @classmethod
    def equals(cls, dim: int, i: int, t: int) -> "Rule":
        """[k_i == t]."""
        return cls.greater(dim, i, t - 1) - cls.greater(dim, i, t)

    @classmethod
    def count_positive(cls, dim: int, indices) -> "Rule":
        """|{i in indices : k_i > 0}|."""
        out = cls(dim)
        for i in indices:
            out = out + cls.greater(dim, i, 0)
        return out

    # -- algebra ---------------------------------------------------------------
    def __add__(self, other: "Rule") -> "Rule":
        if isinstance(other, (int, Fraction)):
            other = Rule.constant(self.dim, other)
        if other.dim != self.dim:
            raise ValueError("rules of different dimension")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Rule(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Rule(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Rule":
        c = as_fraction(c)
        return Rule(self.dim, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Rule):
            return self.scale(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(_mul_factor(a, b) for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Rule(self.dim, out)

    __rmul__ = __mul__

    def shift(self, offset) -> "Rule":
        """The rule k -> self(k + offset) for an integer vector offset."""
        offset = tuple(offset)
        out: dict = {}
        for mono, c in self.terms.items():
            partial = [((), c)]
            for f, o in zip(mono, offset):
                options = _shift_factor(f, o)
                partial = [(m + (g,), v * w) for m, v in partial for g, w in options]
            for m, v in partial:
                out[m] = out.get(m, 0) + v
        return Rule(self.dim, out)

    def __call__(self, k) -> Fraction:
        total = Fraction(0)
        for mono, c in self.terms.items():
            v = c
            for f, ki in zip(mono, k):
                if f == ONE:
                    continue
                if f[0] == POW:
                    v *= ki ** f[1]
                elif ki <= f[1]:
                    v = 0
                    break
            total += v
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def thresholds(self, i: int) -> list[int]:
        return sorted({m[i][1] for m in self.terms if m[i][0] == GT})

    def degree(self, i: int) -> int:
        return max((m[i][1] for m in self.terms if m[i][0] == POW), default=0)

    def __eq__(self, other):
        if not isinstance(other, Rule):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.terms.items()))))

    # -- rendering -------------------------------------------------------------
    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            factors = []
            for i, f in enumerate(mono):
                if f == ONE:
                    continue
                if f[0] == POW:
                    factors.append(f"k{i + 1}" if f[1] == 1 else f"k{i + 1}^{f[1]}")
                else:
                    factors.append(f"gt(k{i + 1},{f[1]})")
            mag = abs(c)
            if not factors:
                body = render_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = render_rational(mag) + "*" + "*".join(factors)
            pieces.append((c < 0, body))
        neg, body = pieces[0]
        out = ("-" if neg else "") + body
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"Rule({self.render()})"


def _shift_factor(f, o: int):
    if f == ONE or not o:
        return [(f, 1)]
    if f[0] == GT:
        return [((GT, f[1] - o), 1)]
    d = f[1]
    out = []
    for e in range(d + 1):
        w = comb(d, e) * o ** (d - e)
        out.append(((POW, e) if e else ONE, w))
    return out
