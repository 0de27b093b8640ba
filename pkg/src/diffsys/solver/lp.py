"""Exact two-phase simplex over the rationals with Bland's rule.

Solves  maximize c.x  subject to  A x = b, x >= 0.  Bland's smallest-index
rule guarantees termination; all arithmetic is in ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exact.linalg import solve_left


@dataclass
class LPResult:
    status: str                 # "optimal", "infeasible" or "unbounded"
    value: Fraction | None = None
    x: list | None = None
    duals: list | None = None   # y with A^T y >= c and b.y = value
    pivots: int = 0


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows        # list of lists (constraint coefficients)
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, r: int, j: int):
        row = self.rows[r]
        inv = 1 / row[j]
        if inv != 1:
            self.rows[r] = row = [a * inv for a in row]
            self.rhs[r] *= inv
        for k, other in enumerate(self.rows):
            if k != r and other[j]:
                f = other[j]
                self.rows[k] = [a - f * b if b else a for a, b in zip(other, row)]
                self.rhs[k] -= f * self.rhs[r]
        self.basis[r] = j
        self.pivots += 1

    def reduced_costs(self, cost):
        # minimisation costs: d_j = cost_j - sum_r cost_{B_r} a_rj
        n = len(cost)
        d = list(cost)
        for r, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb:
                row = self.rows[r]
                for j in range(n):
                    if row[j]:
                        d[j] -= cb * row[j]
        return d

    def run(self, cost, allowed: int):
        """Minimise cost over the current basis; columns >= allowed may not enter."""
        while True:
            d = self.reduced_costs(cost)
            enter = next((j for j in range(allowed) if d[j] < 0), None)
            if enter is None:
                return "optimal"
            best = None
            for r, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter)


def simplex(A, b, c) -> LPResult:
    m = len(A)
    n = len(c)
    A = [[Fraction(a) for a in row] for row in A]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    flipped = [False] * m
    for i in range(m):
        if b[i] < 0:
            A[i] = [-a for a in A[i]]
            b[i] = -b[i]
            flipped[i] = True
    # phase 1 with artificial columns n .. n+m-1
    rows = [A[i] + [Fraction(1) if k == i else Fraction(0) for k in range(m)] for i in range(m)]
    tab = _Tableau(rows, list(b), [n + i for i in range(m)])
    cost1 = [Fraction(0)] * n + [Fraction(1)] * m
    tab.run(cost1, n + m)
    if sum((tab.rhs[r] for r, j in enumerate(tab.basis) if j >= n), Fraction(0)) > 0:
        return LPResult("infeasible", pivots=tab.pivots)
    # drive artificials out of the basis; drop redundant rows
    keep = []
    for r in range(m):
        if tab.basis[r] >= n:
            j = next((j for j in range(n) if tab.rows[r][j]), None)
            if j is None:
                continue
            tab.pivot(r, j)
        keep.append(r)
    kept_rows = [tab.rows[r][:n] for r in keep]
    tab = _Tableau(kept_rows, [tab.rhs[r] for r in keep], [tab.basis[r] for r in keep])
    tab.pivots = 0
    cost2 = [-v for v in c]
    status = tab.run(cost2, n)
    if status == "unbounded":
        return LPResult("unbounded", pivots=tab.pivots)
    x = [Fraction(0)] * n
    for r, j in enumerate(tab.basis):
        x[j] = tab.rhs[r]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    # duals from the original rows that survived
    orig = [A[r] for r in keep]
    gens = [[row[j] for j in tab.basis] for row in orig]
    y_kept = solve_left(gens, [c[j] for j in tab.basis]) if tab.basis else []
    duals = [Fraction(0)] * m
    for r, y in zip(keep, y_kept or []):
        duals[r] = y
    duals = [-y if f else y for y, f in zip(duals, flipped)]
    return LPResult("optimal", value, x, duals, tab.pivots)
