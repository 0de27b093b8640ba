"""Finitely generated subgroups of the formal reals, kept in Hermite normal form."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import product
from math import floor

from ..errors import ContextError
from .formal import BasisContext, FormalReal
from .linalg import integer_kernel, lcm, pivots, rank, row_hnf


def _denominator(x: FormalReal) -> int:
    d = 1
    for _, q in x.terms:
        d = lcm(d, q.denominator)
    return d


class Lattice:
    """The additive group generated by finitely many formal reals.

    Stored as ``basis / scale`` where ``basis`` is an integer row-HNF matrix
    (one row per basis vector) and ``scale`` is the least positive integer
    clearing all denominators, so equal lattices have equal fields.
    """

    __slots__ = ("ctx", "basis", "scale", "__dict__")

    def __init__(self, ctx: BasisContext, basis: tuple, scale: int):
        self.ctx = ctx
        self.basis = basis
        self.scale = scale

    @classmethod
    def from_generators(cls, gens, ctx: BasisContext | None = None) -> "Lattice":
        gens = list(gens)
        if ctx is None:
            if not gens:
                raise ValueError("a context is required for an empty generator list")
            ctx = gens[0].ctx
        for g in gens:
            if g.ctx != ctx:
                raise ContextError("generators from different contexts")
        scale = 1
        for g in gens:
            scale = lcm(scale, _denominator(g))
        rows = [[int(q * scale) for q in g.vector()] for g in gens]
        hnf = row_hnf(rows)
        return cls(ctx, tuple(tuple(r) for r in hnf), scale)

    @classmethod
    def trivial(cls, ctx: BasisContext) -> "Lattice":
        return cls(ctx, (), 1)

    # -- structure -----------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return self.ctx.dim

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(pivots([list(r) for r in self.basis]))

    @cached_property
    def basis_reals(self) -> tuple[FormalReal, ...]:
        return tuple(
            self.ctx.from_vector(Fraction(a, self.scale) for a in row) for row in self.basis
        )

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return (self.ctx, self.basis, self.scale) == (other.ctx, other.basis, other.scale)

    def __hash__(self):
        return hash((self.ctx.symbols, self.basis, self.scale))

    def __repr__(self):
        gens = ", ".join(str(b) for b in self.basis_reals)
        return f"Lattice(<{gens}>)"

    # -- points --------------------------------------------------------------
    def _scaled(self, x: FormalReal):
        if x.ctx != self.ctx:
            raise ContextError("point and lattice live in different contexts")
        vec = [0] * self.ctx.dim
        for i, q in x.terms:
            q = q * self.scale
            if q.denominator != 1:
                return None
            vec[i] = q.numerator
        return vec

    def member(self, x: FormalReal):
        """Coordinates of ``x`` in the HNF basis, or None when x is not in the lattice."""
        vec = self._scaled(x)
        if vec is None:
            return None
        return self.member_vector(vec)

    def member_vector(self, vec):
        vec = list(vec)
        coords = []
        for p, row in zip(self.pivots, self.basis):
            h = row[p]
            c, r = divmod(vec[p], h)
            if r:
                return None
            coords.append(c)
            if c:
                for j in range(p, len(vec)):
                    vec[j] -= c * row[j]
        if any(vec):
            return None
        return tuple(coords)

    def __contains__(self, x: FormalReal) -> bool:
        return self.member(x) is not None

    def point(self, coords) -> FormalReal:
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        vec = [0] * self.ctx.dim
        for c, row in zip(coords, self.basis):
            if c:
                for j, a in enumerate(row):
                    vec[j] += c * a
        return self.ctx.from_vector(Fraction(a, self.scale) for a in vec)

    def reduce(self, x: FormalReal) -> FormalReal:
        """Canonical representative of the coset ``x + L``."""
        vec = [q * self.scale for q in x.vector()]
        for p, row in zip(self.pivots, self.basis):
            c = floor(vec[p] / row[p])
            if c:
                for j in range(p, len(vec)):
                    vec[j] -= c * row[j]
        return self.ctx.from_vector(q / self.scale for q in vec)

    # -- lattice algebra -----------------------------------------------------
    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice.from_generators(self.basis_reals + other.basis_reals, self.ctx)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(b in self for b in other.basis_reals)

    def intersection(self, other: "Lattice") -> "Lattice":
        if other.ctx != self.ctx:
            raise ContextError("lattices from different contexts")
        if not self.rank or not other.rank:
            return Lattice.trivial(self.ctx)
        scale = lcm(self.scale, other.scale)
        a = [[x * (scale // self.scale) for x in r] for r in self.basis]
        b = [[-x * (scale // other.scale) for x in r] for r in other.basis]
        kern = integer_kernel(a + b)
        gens = []
        for u in kern:
            gens.append(self.point(u[: self.rank]))
        return Lattice.from_generators(gens, self.ctx) if gens else Lattice.trivial(self.ctx)

    def coords_in(self, sub: "Lattice"):
        """Integer coordinates of ``sub``'s basis in this lattice's basis."""
        out = []
        for b in sub.basis_reals:
            c = self.member(b)
            if c is None:
                raise ValueError("sublattice is not contained in this lattice")
            out.append(list(c))
        return out

    def coset_representatives(self, sub: "Lattice"):
        """Representatives of L / sub; requires ``sub`` to have finite index."""
        if sub.rank != self.rank:
            raise ValueError("sublattice has infinite index")
        rows = row_hnf(self.coords_in(sub)) if sub.rank else []
        diag = [rows[i][i] for i in range(self.rank)]
        for combo in product(*(range(d) for d in diag)):
            yield self.point(combo)

    def index_of(self, sub: "Lattice") -> int:
        if sub.rank != self.rank:
            return 0
        rows = row_hnf(self.coords_in(sub)) if sub.rank else []
        out = 1
        for i in range(self.rank):
            out *= rows[i][i]
        return out

    def rational_span(self) -> tuple:
        """Canonical reduced-row-echelon basis of the Q-span (hashable key)."""
        from .linalg import rref

        if not self.rank:
            return ()
        red, _ = rref([list(map(Fraction, r)) for r in self.basis], self.ctx.dim)
        return tuple(tuple(r) for r in red)


def lattice_from_generators(gens, ctx: BasisContext | None = None) -> Lattice:
    return Lattice.from_generators(gens, ctx)


def lattice_member(lattice: Lattice, x: FormalReal):
    return lattice.member(x)


def span_contains(span: tuple, x: FormalReal) -> bool:
    """Whether ``x`` lies in the rational span given by ``Lattice.rational_span``."""
    rows = [list(r) for r in span]
    vec = list(x.vector())
    if not rows:
        return not any(vec)
    return rank(rows + [vec]) == len(rows)


def reduce_mod_span(span: tuple, x: FormalReal) -> tuple:
    """Canonical representative of ``x`` modulo a rational subspace (RREF rows)."""
    vec = list(x.vector())
    for row in span:
        p = next(i for i, a in enumerate(row) if a)
        c = vec[p]
        if c:
            vec = [a - c * b for a, b in zip(vec, row)]
    return tuple(vec)
