"""Deciding whether a symbolic function vanishes identically on the reals.

A function splits as P + R + Z where P is a polynomial (carrying every
global constant), R a trigonometric polynomial without constant term and Z a
combination of coset indicators and lattice functions, all of which are
supported on the countable set Q + Q b_1 + ... + Q b_k.  P + R is real
analytic, so it vanishes off a countable set only if it vanishes everywhere,
and then Z must vanish by itself.  See docs/zero-test.md for the argument
behind the coset part.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd

from ..errors import ResourceError, UndecidedError
from ..exact import FormalReal, Lattice
from ..exact.lattice import reduce_mod_span
from ..exact.linalg import integer_solve, lcm, row_hnf
from .classes import (
    Constant,
    CosetIndicator,
    LatticeFunction,
    LinComb,
    Polynomial,
    SymbolicFunction,
    TrigPoly,
    WindowTable,
)
from .ops import evaluate
from .rules import Rule

MAX_COSET_INDEX = 10**6
WITNESS_TRIES = 4000


class _Parts:
    def __init__(self, f: SymbolicFunction):
        self.const = Fraction(0)
        poly: list[Fraction] = []
        trig_terms = []
        self.cosets: list[tuple[Fraction, CosetIndicator]] = []
        self.latfuns: list[LatticeFunction] = []
        items = f.items if isinstance(f, LinComb) else [(Fraction(1), f)]
        for a, g in items:
            if isinstance(g, Constant):
                self.const += a * g.value
            elif isinstance(g, Polynomial):
                poly += [Fraction(0)] * (len(g.coeffs) - len(poly))
                for i, c in enumerate(g.coeffs):
                    poly[i] += a * c
            elif isinstance(g, TrigPoly):
                self.const += a * g.const
                trig_terms += [(lam, c * a) for lam, c in g.terms]
            elif isinstance(g, CosetIndicator):
                self.cosets.append((a, g))
            elif isinstance(g, LatticeFunction):
                # the off value is a global constant; what is left lives on M
                self.const += a * g.off
                self.latfuns.append(
                    LatticeFunction(g.gens, (g.rule - g.off).scale(a), 0)
                )
            elif isinstance(g, WindowTable):
                raise UndecidedError("a window table is only defined on finitely many points")
            else:
                raise TypeError(f"cannot zero-test {type(g).__name__}")
        poly = poly or [Fraction(0)]
        poly[0] += self.const
        self.poly = Polynomial(poly)
        self.trig = TrigPoly(0, trig_terms)

    @property
    def analytic_zero(self) -> bool:
        return not self.poly.coeffs and not self.trig.terms


def zero_test(f: SymbolicFunction) -> bool:
    """True iff f(x) == 0 for every real x (symbols being independent reals).

    Raises UndecidedError outside the decidable fragment (partial tables,
    lattice functions over different lattices, or a coset that meets a
    lattice function's lattice in a set that is not coordinate aligned).
    """
    return _decide(f)[0]


def find_witness(f: SymbolicFunction):
    """A point where f is nonzero, or None when f is identically zero."""
    ok, hints = _decide(f)
    if ok:
        return None
    return _search(f, hints)


def functions_equal(f: SymbolicFunction, g: SymbolicFunction) -> bool:
    return zero_test(f - g)


def _decide(f: SymbolicFunction):
    if isinstance(f, (int, Fraction)):
        f = Constant(f)
    parts = _Parts(f)
    if not parts.analytic_zero:
        return False, []
    return _lattice_part_zero(parts.cosets, parts.latfuns)


# -- coset combinations ---------------------------------------------------------


def _coset_terms_zero(terms):
    """Decide sum c_j chi_{o_j + L_j} == 0; terms are (c, Lattice, offset)."""
    merged: dict[tuple, Fraction] = {}
    for c, lat, off in terms:
        key = (lat, lat.reduce(off))
        merged[key] = merged.get(key, 0) + c
    groups: dict[tuple, list] = {}
    for (lat, off), c in merged.items():
        if not c:
            continue
        span = lat.rational_span()
        key = (span, reduce_mod_span(span, off))
        groups.setdefault(key, []).append((c, lat, off))
    # each affine class must cancel on its own; check the richest ones first
    for key in sorted(groups, key=lambda k: -len(k[0])):
        members = groups[key]
        bad = _group_nonzero_at(members)
        if bad is not None:
            return False, [bad]
    return True, []


def _group_nonzero_at(members):
    ctx = members[0][1].ctx
    o0 = members[0][2]
    gens = []
    for _, lat, off in members:
        gens += list(lat.basis_reals)
        gens.append(off - o0)
    big = Lattice.from_generators(gens, ctx)
    common = members[0][1]
    for _, lat, _ in members[1:]:
        common = common.intersection(lat)
    if common.rank != big.rank:  # pragma: no cover - ranks agree inside an affine class
        raise UndecidedError("inconsistent ranks in an affine class")
    if big.index_of(common) > MAX_COSET_INDEX:
        raise ResourceError("coset index too large for exact enumeration")
    for r in big.coset_representatives(common):
        y = o0 + r
        val = sum(
            (c for c, lat, off in members if (y - off) in lat), Fraction(0)
        )
        if val:
            return (y, common)
    return None


# -- lattice functions ------------------------------------------------------------


def _lattice_part_zero(cosets, latfuns):
    terms = [(c, g.lattice, g.offset) for c, g in cosets]
    if not latfuns:
        return _coset_terms_zero(terms)
    gens = {lf.gens for lf in latfuns}
    if len(gens) > 1:
        raise UndecidedError("lattice functions over different generator sets")
    lead = latfuns[0]
    total = Rule(len(lead.gens))
    for lf in latfuns:
        total = total + lf.rule
    off_terms = []
    m = lead.lattice
    for c, lat, off in terms:
        p = _meet_point(lat, off, m)
        off_terms.append((c, lat, off))
        if p is None:
            continue
        inner = lat.intersection(m)
        off_terms.append((-c, inner, p))
        total = total + _aligned_rule(lead, inner, p).scale(c)
    ok, hints = _coset_terms_zero(off_terms)
    if not ok:
        return False, hints
    if not total.is_zero():
        return False, [("rule", lead, total)]
    return True, []


def _meet_point(lat: Lattice, off: FormalReal, m: Lattice):
    """A point of (off + lat) inside m, or None."""
    scale = lat.scale * m.scale
    rows = [[a * m.scale for a in r] for r in lat.basis]
    rows += [[-a * lat.scale for a in r] for r in m.basis]
    target = [-q * scale for q in off.vector()]
    if any(t.denominator != 1 for t in target):
        # clear the offset's own denominators too
        d = 1
        for t in target:
            d = lcm(d, t.denominator)
        rows = [[a * d for a in r] for r in rows]
        target = [t * d for t in target]
    target = [int(t) for t in target]
    if not rows:
        return off if off in m else None
    u = integer_solve(rows, target)
    if u is None:
        return None
    return off + lat.point(u[: lat.rank]) if lat.rank else off


def _aligned_rule(lf: LatticeFunction, inner: Lattice, p: FormalReal) -> Rule:
    """chi_{p + inner} restricted to M, written in k-coordinates."""
    s = len(lf.gens)
    kvecs = [list(lf.coords(b)) for b in inner.basis_reals]
    hnf = row_hnf(kvecs) if kvecs else []
    free = set()
    for row in hnf:
        nz = [i for i, a in enumerate(row) if a]
        if len(nz) != 1 or row[nz[0]] != 1:
            raise UndecidedError("coset is not coordinate aligned with the lattice function")
        free.add(nz[0])
    kp = lf.coords(p)
    out = Rule.constant(s, 1)
    for i in range(s):
        if i not in free:
            out = out * Rule.equals(s, i, kp[i])
    return out


# -- witness search ---------------------------------------------------------------


def _nonzero(v) -> bool:
    if isinstance(v, Fraction):
        return v != 0
    return abs(v) > 1e-9


def _rule_box(rule: Rule):
    axes = []
    for i in range(rule.dim):
        ts = rule.thresholds(i)
        d = rule.degree(i)
        lo = (min(ts) if ts else 0) - d - 1
        hi = (max(ts) if ts else 0) + 1
        axes.append(range(lo, hi + 1))
    return axes


def _search(f: SymbolicFunction, hints):
    ctx = f.ctx

    def point(q):
        return ctx.rational(q) if ctx is not None else Fraction(q)

    def ok(x):
        try:
            return _nonzero(evaluate(f, x))
        except Exception:
            return False

    tries = 0
    for hint in hints:
        if hint[0] == "rule":
            _, lf, rule = hint
            for k in product(*_rule_box(rule)):
                x = sum((lf.gens[i] * k[i] for i in range(len(k))), ctx.zero())
                if ok(x):
                    return x
            continue
        y, common = hint
        basis = common.basis_reals
        radius = 0
        while tries < WITNESS_TRIES:
            for n in product(range(-radius, radius + 1), repeat=len(basis)):
                if max((abs(a) for a in n), default=0) != radius:
                    continue
                x = y + sum((b * a for b, a in zip(basis, n)), ctx.zero())
                tries += 1
                if ok(x):
                    return x
            if not basis:
                break
            radius += 1
    for den in range(1, 40):
        for num in range(0, 2 * den + 1):
            if num and gcd(num, den) != 1:
                continue
            for sgn in (1, -1):
                x = point(Fraction(sgn * num, den))
                if ok(x):
                    return x
    for num in range(1, 400):
        x = point(Fraction(num, 7919))
        if ok(x):
            return x
    return None


def vanishes_off_lattice(f: SymbolicFunction, m: Lattice) -> bool:
    """Whether f is zero at every point outside m.

    Lattice functions whose lattice is not inside m are reported as not
    vanishing (a conservative answer).
    """
    parts = _Parts(f)
    if not parts.analytic_zero:
        return False
    if any(not m.contains_lattice(lf.lattice) for lf in parts.latfuns):
        return False
    off_terms = []
    for c, g in parts.cosets:
        off_terms.append((c, g.lattice, g.offset))
        p = _meet_point(g.lattice, g.offset, m)
        if p is not None:
            off_terms.append((-c, g.lattice.intersection(m), p))
    return _coset_terms_zero(off_terms)[0]
