"""Equation systems, windows, deductions and certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import lcm

import numpy as np

from ..errors import ContextError, DiffsysError
from ..exact import BasisContext, FormalReal, Lattice
from ..functions import (
    Constant,
    CosetIndicator,
    SymbolicFunction,
    WindowTable,
    apply_operator,
    combine,
    evaluate,
    zero_test,
)
from ..operators import DifferenceOperator


class EquationSystem:
    """A finite list of equations D_i f = g_i over one basis context."""

    __slots__ = ("ctx", "equations", "name", "__dict__")

    def __init__(self, equations, ctx: BasisContext | None = None, name: str = ""):
        eqs = []
        for op, g in equations:
            if not isinstance(g, SymbolicFunction):
                g = Constant(g)
            eqs.append((op, g))
        if ctx is None:
            if not eqs:
                raise ValueError("an empty system needs an explicit context")
            ctx = eqs[0][0].ctx
        for op, g in eqs:
            if op.ctx != ctx or (g.ctx is not None and g.ctx != ctx):
                raise ContextError("equations from different contexts")
        self.ctx = ctx
        self.equations = tuple(eqs)
        self.name = name

    def __len__(self):
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)

    def __getitem__(self, i):
        return self.equations[i]

    @cached_property
    def shift_lattice(self) -> Lattice:
        shifts = [s for op, _ in self.equations for s in op.shifts]
        if not shifts:
            return Lattice.trivial(self.ctx)
        return Lattice.from_generators(shifts, self.ctx)

    def operators(self):
        return [op for op, _ in self.equations]

    def rhs(self):
        return [g for _, g in self.equations]

    def subsystem(self, indices, name: str | None = None) -> "EquationSystem":
        return EquationSystem(
            [self.equations[i] for i in indices], self.ctx, self.name if name is None else name
        )

    def is_delta_shape(self) -> bool:
        return all(op.delta_shift() is not None for op, _ in self.equations)

    def __eq__(self, other):
        return (
            isinstance(other, EquationSystem)
            and self.ctx == other.ctx
            and self.equations == other.equations
        )

    def __hash__(self):
        return hash((self.ctx.symbols, self.equations))

    def __repr__(self):
        body = "; ".join(f"{op} f = {g}" for op, g in self.equations)
        return f"EquationSystem({body})"


@dataclass(frozen=True)
class Window:
    """Lattice points whose HNF coordinates all lie in [-radius, radius]."""

    radius: int = 4

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("window radius must be non-negative")

    def coordinates(self, lattice: Lattice):
        r = range(-self.radius, self.radius + 1)
        return list(product(r, repeat=lattice.rank))

    def points(self, lattice: Lattice):
        return [lattice.point(c) for c in self.coordinates(lattice)]

    def contains(self, coords) -> bool:
        return all(-self.radius <= c <= self.radius for c in coords)


@dataclass(frozen=True)
class VanishingSet:
    """Where a solution is required to vanish: a union of cosets, and/or off a lattice."""

    cosets: tuple = ()
    off_lattice: Lattice | None = None

    def contains(self, x: FormalReal) -> bool:
        if any(c.contains(x) for c in self.cosets):
            return True
        return self.off_lattice is not None and x not in self.off_lattice

    def describe(self) -> str:
        parts = [c.render() for c in self.cosets]
        if self.off_lattice is not None:
            gens = ", ".join(str(g) for g in self.off_lattice.basis_reals)
            parts.append(f"off <{gens}>")
        return " | ".join(parts) or "nothing"


@dataclass(frozen=True)
class Certificate:
    """A deduction sum_i A_i (D_{idx_i}, g_{idx_i}) with its combined pair."""

    entries: tuple
    combined_operator: DifferenceOperator
    combined_rhs: SymbolicFunction
    note: str = field(default="", compare=False)

    @classmethod
    def from_entries(cls, system: EquationSystem, entries, note: str = "") -> "Certificate":
        entries = tuple((a, int(i)) for a, i in entries)
        op, g = deduce(system, entries)
        return cls(entries, op, g, note)

    def value_at_zero(self):
        return evaluate(self.combined_rhs, self.combined_operator.ctx.zero())


@dataclass(frozen=True)
class Solution:
    f: SymbolicFunction
    window: Window | None = None
    window_only: bool = False
    note: str = ""

    verdict = "solvable"


@dataclass(frozen=True)
class Unsolvable:
    cert: Certificate
    note: str = ""

    verdict = "unsolvable"


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    partial: object = None

    verdict = "inconclusive"


def deduce(system: EquationSystem, entries):
    """(sum A_i D_{idx_i}, sum A_i g_{idx_i}) in canonical form."""
    ctx = system.ctx
    op = DifferenceOperator.zero(ctx)
    parts = []
    for a, i in entries:
        if not 0 <= i < len(system):
            raise IndexError(f"equation index {i} out of range")
        d, g = system.equations[i]
        op = op + a.compose(d)
        parts.append((1, apply_operator(a, g)))
    return op, combine(parts) if parts else Constant(0)


def verify_certificate(system: EquationSystem, cert: Certificate, vanish_on: VanishingSet | None = None) -> bool:
    """Whether ``cert`` proves that ``system`` has no solution.

    Without ``vanish_on`` the combined operator must be zero and the combined
    right-hand side a nonzero function.  With it, the combined operator must
    only use shifts inside the vanishing set and the right-hand side must be
    nonzero at 0; such a pair rules out solutions vanishing on that set.
    """
    try:
        op, g = deduce(system, cert.entries)
        if op != cert.combined_operator:
            return False
        if not zero_test(combine([(1, g), (-1, cert.combined_rhs)])):
            return False
        if vanish_on is None:
            return op.is_zero and not zero_test(g)
        if not all(vanish_on.contains(s) for s in op.shifts):
            return False
        return evaluate(g, system.ctx.zero()) != 0
    except DiffsysError:
        return False
    except (TypeError, ValueError, IndexError):
        return False


def rhs_vanishes_off(g: SymbolicFunction, lattice: Lattice) -> bool:
    """Whether g is zero at every point outside ``lattice``."""
    from ..functions.zerotest import vanishes_off_lattice

    return vanishes_off_lattice(g, lattice)


def check_on_window(system: EquationSystem, f: SymbolicFunction, window: Window, lattice: Lattice | None = None) -> bool:
    """D_i f = g_i at every window point whose stencil stays in the window."""
    lattice = lattice or system.shift_lattice
    stencils = []
    for op, _ in system.equations:
        ks = [lattice.member(s) for _, s in op.terms]
        if any(k is None for k in ks):
            raise ValueError("operator shifts leave the lattice")
        stencils.append([(c, k) for (c, _), k in zip(op.terms, ks)])
    table = f.values if isinstance(f, WindowTable) and f.lattice == lattice else None
    coords_list = window.coordinates(lattice)
    if table is not None and lattice.rank and all(c in table for c in coords_list):
        return _check_full_table(system, table, coords_list, stencils, window.radius, lattice)
    for coords in coords_list:
        x = None
        for (op, g), stencil in zip(system.equations, stencils):
            pts = [tuple(a + b for a, b in zip(coords, k)) for _, k in stencil]
            if not all(window.contains(p) for p in pts):
                continue
            vals = [table.get(p) for p in pts] if table is not None else [None]
            if None in vals:
                vals = [evaluate(f, lattice.point(p)) for p in pts]
            lhs = sum((c * v for (c, _), v in zip(stencil, vals)), Fraction(0))
            if isinstance(g, Constant):
                rhs = g.value
            else:
                x = x if x is not None else lattice.point(coords)
                rhs = evaluate(g, x)
            if lhs != rhs:
                return False
    return True


def _check_full_table(system, table, coords_list, stencils, radius, lattice) -> bool:
    """check_on_window for a table covering the whole window, in integer arithmetic.

    Values and coefficients are scaled to integers, and each stencil is
    evaluated for all window points at once on object arrays (exact ints).
    """
    npts = len(coords_list)
    vals = [table[c] for c in coords_list]
    den = lcm(*(v.denominator for v in vals))
    V = np.array([v.numerator * (den // v.denominator) for v in vals] + [0], dtype=object)
    arr = np.array(coords_list, dtype=np.int64)
    weights = (2 * radius + 1) ** np.arange(lattice.rank - 1, -1, -1, dtype=np.int64)
    for (op, g), stencil in zip(system.equations, stencils):
        scale = lcm(*(c.denominator for c, _ in stencil)) if stencil else 1
        ok = np.ones(npts, dtype=bool)
        lhs = np.zeros(npts, dtype=object)
        for c, k in stencil:
            moved = arr + np.array(k, dtype=np.int64)
            inside = np.all(np.abs(moved) <= radius, axis=1)
            ok &= inside
            pos = np.where(inside, (moved + radius) @ weights, npts)
            lhs = lhs + int(c * scale) * V[pos]
        idx = np.nonzero(ok)[0]
        if isinstance(g, Constant):
            want = g.value * scale * den
            if want.denominator != 1:
                if len(idx):
                    return False
                continue
            if np.any(lhs[idx] != want.numerator):
                return False
            continue
        for j in idx.tolist():
            if Fraction(lhs[j]) != evaluate(g, lattice.point(coords_list[j])) * scale * den:
                return False
    return True
