"""Polynomial solutions by ansatz and coefficient matching."""

from __future__ import annotations

from fractions import Fraction

from ..errors import RepresentabilityError
from ..exact.linalg import rref
from ..functions import Constant, Polynomial, apply_operator
from .system import EquationSystem


def default_degree_bound(system: EquationSystem) -> int:
    degs = []
    for _, g in system.equations:
        degs.append(g.degree if isinstance(g, Polynomial) else 0)
    return max(degs, default=0) + len(system) + 2


def solve_polynomial(system: EquationSystem, degree_bound: int | None = None):
    """A polynomial f of degree <= bound with D_i f = g_i for all i, or None.

    Free coefficients are set to 0, so Delta_1 f = 1 gives f = x.
    """
    if degree_bound is None:
        degree_bound = default_degree_bound(system)
    nvar = degree_bound + 1
    rows = []
    for op, g in system.equations:
        if isinstance(g, Constant):
            g = Polynomial([g.value])
        if not isinstance(g, Polynomial):
            raise TypeError("every right-hand side must be a polynomial")
        try:
            images = [apply_operator(op, Polynomial([0] * j + [1])) for j in range(nvar)]
        except RepresentabilityError:
            return None
        top = max([len(p.coeffs) for p in images] + [len(g.coeffs)])
        for m in range(top):
            row = [p.coeffs[m] if m < len(p.coeffs) else Fraction(0) for p in images]
            rhs = g.coeffs[m] if m < len(g.coeffs) else Fraction(0)
            rows.append(row + [rhs])
    if not rows:
        return Polynomial(())
    red, piv = rref(rows, nvar + 1)
    if nvar in piv:
        return None
    coeffs = [Fraction(0)] * nvar
    for row, c in zip(red, piv):
        coeffs[c] = row[nvar]
    return Polynomial(coeffs)
