"""Applying difference operators to symbolic functions, and point evaluation."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational

import numpy as np

from ..errors import ContextError, LatticeError, RepresentabilityError, ResourceError
from ..exact import CyclotomicNumber, FormalReal, as_fraction
from ..operators import DifferenceOperator
from .classes import (
    Constant,
    CosetIndicator,
    LatticeFunction,
    LinComb,
    Polynomial,
    SymbolicFunction,
    TrigPoly,
    WindowTable,
    combine,
)


def _rational_shifts(op: DifferenceOperator, what: str):
    out = []
    for c, s in op.terms:
        if not s.is_rational:
            raise RepresentabilityError(
                f"{what} can only be translated by rational shifts, got {s}"
            )
        out.append((c, s.rational_value()))
    return out


def apply_operator(op: DifferenceOperator, f: SymbolicFunction) -> SymbolicFunction:
    """(op f)(x) = sum_i a_i f(x + b_i), staying inside the class of f."""
    if isinstance(f, Rational):
        f = Constant(f)
    if f.ctx is not None and f.ctx != op.ctx:
        raise ContextError("operator and function live in different contexts")
    if isinstance(f, Constant):
        return Constant(f.value * sum(op.coefficients, Fraction(0)))
    if isinstance(f, Polynomial):
        out = Polynomial(())
        for c, b in _rational_shifts(op, "a polynomial"):
            out = combine([(1, out), (c, f.shifted(b))])
        return out if isinstance(out, Polynomial) else Polynomial(())
    if isinstance(f, TrigPoly):
        shifts = _rational_shifts(op, "a trigonometric polynomial")
        total = sum((c for c, _ in shifts), Fraction(0))
        terms = []
        for lam, coeff in f.terms:
            mult = CyclotomicNumber.rational(0)
            for c, b in shifts:
                mult = mult + CyclotomicNumber.phase(lam * b) * c
            terms.append((lam, coeff * mult))
        return TrigPoly(f.const * total, terms)
    if isinstance(f, CosetIndicator):
        return combine([(c, CosetIndicator(f.lattice, f.offset - s)) for c, s in op.terms])
    if isinstance(f, LatticeFunction):
        rule = None
        for c, s in op.terms:
            k = f.coords(s)
            if k is None:
                raise LatticeError(f"shift {s} is not in the lattice of {f.render()}")
            part = f.rule.shift(k).scale(c)
            rule = part if rule is None else rule + part
        if rule is None:
            return Constant(0)
        total = sum(op.coefficients, Fraction(0))
        return LatticeFunction(f.gens, rule, f.off * total)
    if isinstance(f, WindowTable):
        return _apply_table(op, f)
    if isinstance(f, LinComb):
        return combine([(a, apply_operator(op, g)) for a, g in f.items])
    raise TypeError(f"cannot apply an operator to {type(f).__name__}")


def _apply_table(op: DifferenceOperator, f: WindowTable) -> WindowTable:
    steps = []
    for c, s in op.terms:
        k = f.lattice.member(s)
        if k is None:
            raise LatticeError(f"shift {s} is not in the table's lattice")
        steps.append((c, k))
    values = {}
    for p in f.values:
        acc = Fraction(0)
        for c, k in steps:
            q = tuple(a + b for a, b in zip(p, k))
            v = f.values.get(q)
            if v is None:
                break
            acc += c * v
        else:
            values[p] = acc
    off = None if f.off is None else f.off * sum(op.coefficients, Fraction(0))
    return WindowTable(f.lattice, values, off, f.radius)


# -- evaluation ----------------------------------------------------------------


def _as_point(f: SymbolicFunction, x):
    if isinstance(x, FormalReal):
        return x
    x = as_fraction(x)
    if f.ctx is None:
        return x
    return f.ctx.rational(x)


def _numeric(x, what: str) -> Fraction:
    if isinstance(x, FormalReal):
        if not x.is_rational:
            raise RepresentabilityError(f"{what} has no value at the symbolic point {x}")
        return x.rational_value()
    return as_fraction(x)


def _trig_value(f: TrigPoly, x: Fraction):
    exact = Fraction(f.const)
    floats = 0.0
    inexact = False
    for lam, c in f.terms:
        try:
            v = (c * CyclotomicNumber.phase(lam * x)).real_part()
            q = v.as_rational()
        except ResourceError:
            q = None
        if q is not None:
            exact += q
        else:
            inexact = True
            theta = 2 * math.pi * float(lam * x % 1)
            floats += (complex(c) * cmath.exp(1j * theta)).real
    if inexact:
        return float(exact) + floats
    return exact


def evaluate(f: SymbolicFunction, x):
    """f(x) as a Fraction, or as a float for irrational trigonometric values.

    The float path reduces lam * x modulo 1 exactly before calling cos/sin,
    so the only rounding is the usual double precision of libm.
    """
    if isinstance(f, Rational):
        return as_fraction(f)
    x = _as_point(f, x)
    if isinstance(f, Constant):
        return f.value
    if isinstance(f, Polynomial):
        return f(_numeric(x, "a polynomial"))
    if isinstance(f, TrigPoly):
        return _trig_value(f, _numeric(x, "a trigonometric polynomial"))
    if isinstance(f, CosetIndicator):
        return Fraction(1) if f.contains(x) else Fraction(0)
    if isinstance(f, LatticeFunction):
        k = f.coords(x)
        return f.off if k is None else f.rule(k)
    if isinstance(f, WindowTable):
        k = f.lattice.member(x)
        if k is None:
            if f.off is None:
                raise RepresentabilityError("the table is undefined off its lattice")
            return f.off
        v = f.values.get(k)
        if v is None:
            raise RepresentabilityError(f"the table is undefined at {x}")
        return v
    if isinstance(f, LinComb):
        total = Fraction(0)
        for a, g in f.items:
            v = evaluate(g, x)
            total = total + a * v if isinstance(v, Fraction) else float(total) + float(a) * v
        return total
    raise TypeError(f"cannot evaluate {type(f).__name__}")


def sample_trig(f: TrigPoly, xs) -> np.ndarray:
    """Vectorised float evaluation of a trigonometric polynomial."""
    xs = np.asarray(xs, dtype=float)
    out = np.full(xs.shape, float(f.const))
    for lam, c in f.terms:
        z = complex(c)
        t = 2 * np.pi * float(lam) * xs
        out += z.real * np.cos(t) - z.imag * np.sin(t)
    return out
