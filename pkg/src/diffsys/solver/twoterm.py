"""Two-term equations a_1 f(x + s_1) + a_2 f(x + s_2) = g.

After the substitution y = x + s_2 and division by a_1 the equation reads
f(y + b) - a f(y) = g(y - s_2) / a_1 with b = s_1 - s_2 and a = -a_2 / a_1.
Writing f(y) = c^y h(y) with c = |a|^(1/b) turns it into

    h(y + b) - sign(a) h(y) = g(y - s_2) / (a_1 c^(y + b)),

a forward difference when a > 0 and an anti-periodic equation when a < 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..errors import ShapeError
from ..exact import as_fraction, render_rational
from ..functions import SymbolicFunction, apply_operator, combine, evaluate
from ..operators import DifferenceOperator


def _rational_power_equal(x: Fraction, m: int, y: Fraction, n: int) -> bool:
    """x**m == y**n for positive rationals and nonzero integers m, n."""
    g = math.gcd(m, n)
    m //= g
    n //= g
    if m < 0:
        m = -m
        x = 1 / x
    if n < 0:
        n = -n
        y = 1 / y
    return x**m == y**n


def two_term_base_compare(a1, b1, a2, b2) -> str:
    """'equal' iff |a1|^(1/b1) == |a2|^(1/b2), decided exactly."""
    a1, b1, a2, b2 = map(as_fraction, (a1, b1, a2, b2))
    if not (a1 and b1 and a2 and b2):
        raise ValueError("coefficients and shifts must be nonzero")
    # |a1|^(b2) == |a2|^(b1); clear the denominators of the exponents
    q = b1.denominator * b2.denominator // math.gcd(b1.denominator, b2.denominator)
    e1 = int(b2 * q)
    e2 = int(b1 * q)
    return "equal" if _rational_power_equal(abs(a1), e1, abs(a2), e2) else "distinct"


@dataclass(frozen=True)
class TwoTermForm:
    kind: str                      # "delta" or "antiperiodic"
    base: tuple                    # (|a|, b)
    operator: DifferenceOperator   # Delta_b or T_b + T_0, acting on h
    rhs_exact: SymbolicFunction | None
    rhs_numeric: Callable[[float], float]
    a: Fraction
    b: Fraction

    @property
    def scale_is_one(self) -> bool:
        return abs(self.a) == 1

    def describe(self) -> str:
        mag, b = self.base
        tag = f"c = {render_rational(mag)}^(1/{render_rational(b)})"
        return f"{self.kind}: {self.operator} h = g~, f(x) = c^x h(x), {tag}"


def normalize_two_term(op: DifferenceOperator, g: SymbolicFunction) -> TwoTermForm:
    if len(op.terms) != 2:
        raise ShapeError("a two-term equation needs exactly two translation terms")
    (a2, s2), (a1, s1) = op.terms
    if s1.is_zero:
        (a1, s1), (a2, s2) = (a2, s2), (a1, s1)
    b_real = s1 - s2
    if not b_real.is_rational:
        raise ShapeError("the shift difference of a two-term equation must be rational")
    b = b_real.rational_value()
    if b < 0:
        # use the other term as the leading one
        (a1, s1), (a2, s2) = (a2, s2), (a1, s1)
        b = -b
    a = -a2 / a1
    ctx = op.ctx
    # g~(y) before the exponential rescaling: g(y - s_2) / a_1
    shifted = apply_operator(DifferenceOperator.translation(-s2), g) if not s2.is_zero else g
    base_rhs = combine([(1 / a1, shifted)])
    sign = 1 if a > 0 else -1
    bshift = ctx.rational(b)
    if sign > 0:
        new_op = DifferenceOperator.delta(bshift)
    else:
        new_op = DifferenceOperator.canonicalize([(1, bshift), (1, ctx.zero())], ctx)
    mag = abs(a)
    exact = base_rhs if mag == 1 else None
    log_c = math.log(float(mag)) / float(b)

    def numeric(y: float) -> float:
        v = evaluate(base_rhs, Fraction(y) if not isinstance(y, Fraction) else y)
        return float(v) / math.exp(log_c * (float(y) + float(b)))

    return TwoTermForm(
        "delta" if sign > 0 else "antiperiodic", (mag, b), new_op, exact, numeric, a, b
    )
