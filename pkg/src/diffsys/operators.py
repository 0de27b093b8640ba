"""The commutative algebra of difference operators sum_i a_i T_{b_i}.

Coefficients are rationals and shifts are formal reals.  Every operator is
kept canonical: shifts distinct, coefficients nonzero, terms sorted by the
shift's coordinate tuple.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import ContextError, LatticeError
from .exact import BasisContext, FormalReal, Lattice, as_fraction, render_rational


class DifferenceOperator:
    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: BasisContext, terms: tuple):
        # trusted constructor; use canonicalize() for raw input
        self.ctx = ctx
        self.terms = terms
        self._hash = None

    @classmethod
    def canonicalize(cls, raw, ctx: BasisContext | None = None) -> "DifferenceOperator":
        raw = list(raw)
        if ctx is None:
            if not raw:
                raise ValueError("a context is required for an empty term list")
            ctx = raw[0][1].ctx
        merged: dict[FormalReal, Fraction] = {}
        for coeff, shift in raw:
            if shift.ctx != ctx:
                raise ContextError("operator terms from different contexts")
            merged[shift] = merged.get(shift, 0) + as_fraction(coeff)
        terms = tuple(
            (c, s) for s, c in sorted(merged.items(), key=lambda kv: kv[0].terms) if c
        )
        return cls(ctx, terms)

    # -- constructors ----------------------------------------------------------
    @classmethod
    def zero(cls, ctx: BasisContext) -> "DifferenceOperator":
        return cls(ctx, ())

    @classmethod
    def translation(cls, shift: FormalReal, coeff=1) -> "DifferenceOperator":
        return cls.canonicalize([(coeff, shift)], shift.ctx)

    @classmethod
    def identity(cls, ctx: BasisContext) -> "DifferenceOperator":
        return cls.translation(ctx.zero())

    @classmethod
    def delta(cls, shift: FormalReal) -> "DifferenceOperator":
        """f(x + b) - f(x)."""
        return cls.canonicalize([(1, shift), (-1, shift.ctx.zero())], shift.ctx)

    # -- structure -------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def shifts(self) -> tuple[FormalReal, ...]:
        return tuple(s for _, s in self.terms)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(c for c, _ in self.terms)

    def delta_shift(self):
        """b when this operator is exactly Delta_b, else None."""
        if len(self.terms) != 2:
            return None
        (c1, s1), (c2, s2) = self.terms
        if s1.is_zero and c1 == -1 and c2 == 1:
            return s2
        if s2.is_zero and c2 == -1 and c1 == 1:
            return s1
        return None

    def norm(self) -> Fraction:
        return sum((abs(c) for c, _ in self.terms), Fraction(0))

    def support_in(self, predicate) -> bool:
        return all(predicate(s) for s in self.shifts)

    # -- algebra ---------------------------------------------------------------
    def _same(self, other: "DifferenceOperator"):
        if other.ctx != self.ctx:
            raise ContextError("operators from different contexts")

    def __add__(self, other):
        if not isinstance(other, DifferenceOperator):
            return NotImplemented
        self._same(other)
        return DifferenceOperator.canonicalize(self.terms + other.terms, self.ctx)

    def __neg__(self):
        return DifferenceOperator(self.ctx, tuple((-c, s) for c, s in self.terms))

    def __sub__(self, other):
        if not isinstance(other, DifferenceOperator):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "DifferenceOperator":
        c = as_fraction(c)
        if not c:
            return DifferenceOperator.zero(self.ctx)
        return DifferenceOperator(self.ctx, tuple((c * a, s) for a, s in self.terms))

    def compose(self, other: "DifferenceOperator") -> "DifferenceOperator":
        """T_a o T_b = T_{a+b}, extended bilinearly."""
        self._same(other)
        raw = [(a * b, s + t) for a, s in self.terms for b, t in other.terms]
        return DifferenceOperator.canonicalize(raw, self.ctx)

    def __mul__(self, other):
        if isinstance(other, DifferenceOperator):
            return self.compose(other)
        if isinstance(other, (Rational, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Rational, Fraction)):
            return self.scale(other)
        return NotImplemented

    def translate(self, shift: FormalReal) -> "DifferenceOperator":
        """T_shift o self."""
        return DifferenceOperator(self.ctx, tuple((c, s + shift) for c, s in self.terms))

    def __eq__(self, other):
        if not isinstance(other, DifferenceOperator):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.symbols, self.terms))
        return self._hash

    # -- Laurent correspondence --------------------------------------------------
    def to_laurent(self, lattice: Lattice) -> "LaurentPoly":
        mons = {}
        for c, s in self.terms:
            e = lattice.member(s)
            if e is None:
                raise LatticeError(f"shift {s} is not in {lattice!r}")
            mons[e] = c
        return LaurentPoly(lattice.rank, mons)

    @classmethod
    def from_laurent(cls, poly: "LaurentPoly", lattice: Lattice) -> "DifferenceOperator":
        raw = [(c, lattice.point(e)) for e, c in poly.monomials.items()]
        return cls.canonicalize(raw, lattice.ctx)

    # -- rendering ---------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        # highest shift first, so Delta_b reads T[b] - T[0]
        for i, (c, s) in enumerate(reversed(self.terms)):
            mag = abs(c)
            body = f"T[{s}]" if mag == 1 else f"{render_rational(mag)}*T[{s}]"
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"DifferenceOperator({self})"


class LaurentPoly:
    """Sparse Laurent polynomial over Q in ``nvars`` variables."""

    __slots__ = ("nvars", "monomials")

    def __init__(self, nvars: int, monomials: dict | None = None):
        self.nvars = nvars
        self.monomials = {}
        for e, c in (monomials or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            c = as_fraction(c)
            if c:
                self.monomials[e] = self.monomials.get(e, 0) + c
        self.monomials = {e: c for e, c in self.monomials.items() if c}

    @classmethod
    def monomial(cls, exps, coeff=1) -> "LaurentPoly":
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    def is_zero(self) -> bool:
        return not self.monomials

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.monomials)
        for e, c in other.monomials.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.nvars, out)

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self.monomials.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out: dict = {}
            for e1, c1 in self.monomials.items():
                for e2, c2 in other.monomials.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
            return LaurentPoly(self.nvars, out)
        c = as_fraction(other)
        return LaurentPoly(self.nvars, {e: c * v for e, v in self.monomials.items()})

    __rmul__ = __mul__

    def min_exponents(self) -> tuple[int, ...]:
        if not self.monomials:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.monomials) for i in range(self.nvars))

    def shifted(self, exps) -> "LaurentPoly":
        """Multiply by the monomial x^exps."""
        return LaurentPoly(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.monomials.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.monomials == other.monomials

    def __repr__(self):
        items = sorted(self.monomials.items())
        return "LaurentPoly(" + " + ".join(f"{c}*x^{e}" for e, c in items) + ")"


def canonicalize(raw, ctx: BasisContext | None = None) -> DifferenceOperator:
    return DifferenceOperator.canonicalize(raw, ctx)


def operator_arith(a: DifferenceOperator, b, op: str) -> DifferenceOperator:
    """Dispatch ``add``/``scale``/``compose``."""
    if op == "add":
        return a + b
    if op == "scale":
        return a.scale(b)
    if op == "compose":
        return a.compose(b)
    raise ValueError(f"unknown operation {op!r}")


def operator_norm(d: DifferenceOperator) -> Fraction:
    return d.norm()


def to_laurent(d: DifferenceOperator, lattice: Lattice) -> LaurentPoly:
    return d.to_laurent(lattice)
