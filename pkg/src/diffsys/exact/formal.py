"""Formal reals: exact rational vectors over a declared independent basis.

Coordinate index 0 is the implicit basis element ``1`` (the pure rational
direction); the declared symbols occupy indices ``1..k``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from ..errors import ContextError

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {value!r}")


def render_rational(q: Fraction) -> str:
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class BasisContext:
    """Ordered symbols assumed linearly independent over the rationals.

    Independence is an axiom of the context; it is never checked.
    """

    symbols: tuple[str, ...]

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate basis symbols in {symbols}")
        for name in symbols:
            if not _NAME.match(name):
                raise ValueError(f"invalid basis symbol {name!r}")

    @classmethod
    def of(cls, *symbols: str) -> "BasisContext":
        return cls(tuple(symbols))

    @classmethod
    def numbered(cls, k: int, prefix: str = "b") -> "BasisContext":
        return cls(tuple(f"{prefix}{i}" for i in range(1, k + 1)))

    @property
    def dim(self) -> int:
        """Ambient dimension, counting the implicit rational direction."""
        return len(self.symbols) + 1

    def index(self, name: str) -> int:
        try:
            return self.symbols.index(name) + 1
        except ValueError:
            raise KeyError(name) from None

    def symbol(self, name: str) -> "FormalReal":
        return FormalReal(self, ((self.index(name), Fraction(1)),))

    def basis(self) -> tuple["FormalReal", ...]:
        return tuple(self.symbol(s) for s in self.symbols)

    def rational(self, q) -> "FormalReal":
        return FormalReal.from_mapping(self, {0: as_fraction(q)})

    def zero(self) -> "FormalReal":
        return FormalReal(self, ())

    def real(self, const=0, **coeffs) -> "FormalReal":
        data = {0: as_fraction(const)}
        for name, c in coeffs.items():
            data[self.index(name)] = as_fraction(c)
        return FormalReal.from_mapping(self, data)

    def from_vector(self, vec: Iterable) -> "FormalReal":
        vec = list(vec)
        if len(vec) != self.dim:
            raise ValueError(f"vector of length {len(vec)} in a context of dimension {self.dim}")
        return FormalReal.from_mapping(self, dict(enumerate(vec)))


class FormalReal:
    """An exact real number sum_i q_i * basis_i with rational q_i."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: BasisContext, terms: tuple):
        # terms: sorted tuple of (index, nonzero Fraction); use from_mapping otherwise
        self.ctx = ctx
        self.terms = terms
        self._hash = None

    @classmethod
    def from_mapping(cls, ctx: BasisContext, data: Mapping[int, object]) -> "FormalReal":
        terms = []
        for i in sorted(data):
            if not 0 <= i < ctx.dim:
                raise IndexError(f"coordinate {i} outside context of dimension {ctx.dim}")
            q = as_fraction(data[i])
            if q:
                terms.append((i, q))
        return cls(ctx, tuple(terms))

    # -- accessors -----------------------------------------------------------
    def coeff(self, index: int) -> Fraction:
        for i, q in self.terms:
            if i == index:
                return q
        return Fraction(0)

    def vector(self) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.ctx.dim
        for i, q in self.terms:
            out[i] = q
        return tuple(out)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_rational(self) -> bool:
        return all(i == 0 for i, _ in self.terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not a pure rational")
        return self.coeff(0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.terms)

    def sort_key(self):
        return self.terms

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: "FormalReal"):
        if not isinstance(other, FormalReal):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ContextError(f"mixed basis contexts {self.ctx.symbols} and {other.ctx.symbols}")
        return other

    def _combine(self, other: "FormalReal", sign: int) -> "FormalReal":
        data = dict(self.terms)
        for i, q in other.terms:
            data[i] = data.get(i, 0) + sign * q
        return FormalReal.from_mapping(self.ctx, data)

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self):
        return FormalReal(self.ctx, tuple((i, -q) for i, q in self.terms))

    def scale(self, c) -> "FormalReal":
        c = as_fraction(c)
        if not c:
            return FormalReal(self.ctx, ())
        return FormalReal(self.ctx, tuple((i, c * q) for i, q in self.terms))

    def __mul__(self, c):
        if isinstance(c, FormalReal):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FormalReal):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.symbols, self.terms))
        return self._hash

    def __lt__(self, other: "FormalReal"):
        return self.terms < other.terms

    def __repr__(self):
        return f"FormalReal({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        ordered = [t for t in self.terms if t[0] != 0] + [t for t in self.terms if t[0] == 0]
        for i, q in ordered:
            sign = "-" if q < 0 else "+"
            mag = abs(q)
            if i == 0:
                body = render_rational(mag)
            else:
                name = self.ctx.symbols[i - 1]
                body = name if mag == 1 else f"{render_rational(mag)}*{name}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def formal_real_arith(a: FormalReal, b, op: str) -> FormalReal:
    """Dispatch ``add``/``sub``/``negate``/``scaleByRational``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "negate":
        return -a
    if op in ("scale", "scaleByRational"):
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")
