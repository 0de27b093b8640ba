"""Smallest possible max |f| on a window, subject to the in-window equations.

The equalities are eliminated first (f = f0 + N z), which leaves

    minimise t  subject to  |f0_p + (N z)_p| <= t  for every window point p.

That LP is solved through its dual, a standard-form problem with one row per
null-space direction plus the mass row:

    maximise f0.(u - v)  s.t.  sum(u + v) = 1,  N^T (v - u) = 0,  u, v >= 0.

The dual optimum is the exact minimum; the primal witness comes from the
optimal dual prices and is re-checked before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ResourceError
from ..functions import WindowTable
from .elimination import back_substitute, build_rows, echelon, nullspace
from .finite import _window_certificate
from .lp import simplex
from .system import Certificate, EquationSystem, Window

EXACT_CAP = 2500


@dataclass
class LowerBound:
    """sum_r lam_r (row r of the window equations) = sum_p w_p f(p) = c.

    Any window solution then has max |f| >= |c| / sum |w_p|.
    """

    weights: dict      # coords -> w_p
    multipliers: list  # ((equation index, coords), lam)
    constant: Fraction

    @property
    def value(self) -> Fraction:
        return abs(self.constant) / sum(abs(w) for w in self.weights.values())


@dataclass
class SupNormResult:
    value: Fraction | float | None
    witness: WindowTable | None
    certificate: Certificate | None = None
    exact: bool = True
    window: Window | None = None
    bound: "LowerBound | None" = None

    @property
    def feasible(self) -> bool:
        return self.certificate is None


def min_sup_norm_on_window(system: EquationSystem, window: Window | None = None, exact_cap: int = EXACT_CAP) -> SupNormResult:
    window = window or Window(2)
    wr = build_rows(system, window)
    npts = len(wr.coords)
    ech = echelon(wr.rows, npts)
    if ech.inconsistent:
        return SupNormResult(None, None, _window_certificate(system, wr, ech), window=window)
    f0 = back_substitute(ech)
    cols = nullspace(ech)
    if npts > exact_cap:
        return _float_fallback(wr, f0, cols, window)
    k = len(cols)
    # dual in standard form: variables u_0..u_{P-1}, v_0..v_{P-1}
    A = [[Fraction(1)] * (2 * npts)]
    for col in cols:
        A.append([-a for a in col] + list(col))
    b = [Fraction(1)] + [Fraction(0)] * k
    c = list(f0) + [-a for a in f0]
    res = simplex(A, b, c)
    if res.status != "optimal":  # pragma: no cover - the dual is always feasible and bounded
        raise ResourceError(f"sup-norm dual LP ended as {res.status}")
    y = res.duals
    f = [f0[p] + sum((y[j + 1] * cols[j][p] for j in range(k)), Fraction(0)) for p in range(npts)]
    value = max((abs(v) for v in f), default=Fraction(0))
    if value != res.value:  # pragma: no cover - strong duality
        raise ArithmeticError("primal witness does not attain the dual optimum")
    table = WindowTable(wr.lattice, dict(zip(wr.coords, f)), None, window.radius)
    w = [res.x[p] - res.x[npts + p] for p in range(npts)]
    return SupNormResult(value, table, None, True, window, _lower_bound(wr, w))


def _lower_bound(wr, w) -> LowerBound | None:
    """Express the optimal dual weights as a combination of window equations."""
    ech = echelon(wr.rows, len(wr.coords), track=True)
    rem = {p: a for p, a in enumerate(w) if a}
    lam: dict = {}
    while rem:
        v = min(rem)
        piv = ech.pivots.get(v)
        if piv is None:  # pragma: no cover - dual weights lie in the row space
            return None
        prow, _, pcombo = piv
        f = rem[v]
        for u, a in prow.items():
            x = rem.get(u, 0) - f * a
            if x:
                rem[u] = x
            else:
                rem.pop(u, None)
        for r, a in pcombo.items():
            lam[r] = lam.get(r, 0) + f * a
    lam = {r: a for r, a in lam.items() if a}
    const = sum((a * wr.rows[r][1] for r, a in lam.items()), Fraction(0))
    weights = {wr.coords[p]: a for p, a in enumerate(w) if a}
    mults = [(wr.tags[r], lam[r]) for r in sorted(lam)]
    return LowerBound(weights, mults, const)


def verify_lower_bound(system: EquationSystem, window: Window, bound: LowerBound) -> Fraction | None:
    """Recheck a lower bound from scratch; returns the bound or None if it is wrong."""
    wr = build_rows(system, window)
    by_tag = {tag: k for k, tag in enumerate(wr.tags)}
    combo: dict = {}
    const = Fraction(0)
    for tag, lam in bound.multipliers:
        k = by_tag.get(tag)
        if k is None:
            return None
        row, rhs = wr.rows[k]
        for j, a in row.items():
            combo[j] = combo.get(j, 0) + lam * a
        const += lam * rhs
    combo = {wr.coords[j]: a for j, a in combo.items() if a}
    weights = {c: a for c, a in bound.weights.items() if a}
    if combo != weights or const != bound.constant or not weights:
        return None
    return bound.value


def _float_fallback(wr, f0, cols, window):
    # only used above the exact size cap; flagged as not certifying
    import numpy as np
    from scipy.optimize import linprog

    npts = len(f0)
    k = len(cols)
    N = np.array([[float(col[p]) for col in cols] for p in range(npts)]).reshape(npts, k)
    f0v = np.array([float(v) for v in f0])
    # variables z (k) and t; rows: N z - t <= -f0 and -N z - t <= f0
    A = np.vstack([np.hstack([N, -np.ones((npts, 1))]), np.hstack([-N, -np.ones((npts, 1))])])
    ub = np.concatenate([-f0v, f0v])
    cost = np.zeros(k + 1)
    cost[-1] = 1.0
    res = linprog(cost, A_ub=A, b_ub=ub, bounds=[(None, None)] * (k + 1), method="highs")
    return SupNormResult(float(res.fun), None, None, False, window)
