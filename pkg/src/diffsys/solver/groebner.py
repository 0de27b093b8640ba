"""Syzygies of Laurent polynomials via a module Groebner basis.

Each p_i is multiplied by a monomial x^{m_i} to become an honest polynomial
q_i.  The rows (q_i | e_i) of Q[x]^{1+n} are completed to a Groebner basis in
a position-over-term order where position 0 dominates and monomials compare
by graded reverse lexicographic order.  Basis elements with a zero first
component generate the syzygy module of (q_1, ..., q_n), and multiplying
component i back by x^{m_i} gives syzygies of the original p_i.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ResourceError
from ..operators import LaurentPoly

MAX_PAIRS = 10_000
MAX_DEGREE = 40


def _grevlex(e):
    return (sum(e), tuple(-a for a in reversed(e)))


def _key(term):
    pos, e = term
    return (-pos, _grevlex(e))


class _Vec:
    """A module element: dict (position, exponent) -> coefficient."""

    __slots__ = ("terms", "lead")

    def __init__(self, terms):
        self.terms = {t: c for t, c in terms.items() if c}
        self.lead = max(self.terms, key=_key) if self.terms else None

    def is_zero(self):
        return not self.terms


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub_multiple(v: dict, w: _Vec, coeff: Fraction, shift) -> None:
    for (pos, e), c in w.terms.items():
        key = (pos, tuple(x + y for x, y in zip(e, shift)))
        val = v.get(key, 0) - coeff * c
        if val:
            v[key] = val
        else:
            v.pop(key, None)


def _check_degree(v: dict):
    for _, e in v:
        if sum(e) > MAX_DEGREE:
            raise ResourceError(f"exponent sum above {MAX_DEGREE}")


def _reduce(v: dict, basis: list[_Vec]) -> _Vec:
    """Full reduction of v by ``basis``."""
    out: dict = {}
    v = dict(v)
    while v:
        lt = max(v, key=_key)
        c = v[lt]
        pos, e = lt
        for g in basis:
            gp, ge = g.lead
            if gp == pos and _divides(ge, e):
                shift = tuple(x - y for x, y in zip(e, ge))
                _sub_multiple(v, g, c / g.terms[g.lead], shift)
                break
        else:
            out[lt] = c
            del v[lt]
    _check_degree(out)
    return _Vec(out)


def _spoly(a: _Vec, b: _Vec) -> dict:
    (pa, ea), (pb, eb) = a.lead, b.lead
    lcm = tuple(max(x, y) for x, y in zip(ea, eb))
    sa = tuple(x - y for x, y in zip(lcm, ea))
    sb = tuple(x - y for x, y in zip(lcm, eb))
    v: dict = {}
    _sub_multiple(v, a, -1 / a.terms[a.lead], sa)
    _sub_multiple(v, b, 1 / b.terms[b.lead], sb)
    return v


def groebner(gens: list[_Vec], max_pairs: int = MAX_PAIRS) -> list[_Vec]:
    basis = [g for g in gens if not g.is_zero()]
    pairs = [(i, j) for j in range(len(basis)) for i in range(j) if basis[i].lead[0] == basis[j].lead[0]]
    processed = 0
    while pairs:
        # normal selection: smallest lcm first
        def lcm_key(p):
            a, b = basis[p[0]].lead[1], basis[p[1]].lead[1]
            return (_grevlex(tuple(max(x, y) for x, y in zip(a, b))), p)

        pairs.sort(key=lcm_key, reverse=True)
        i, j = pairs.pop()
        processed += 1
        if processed > max_pairs:
            raise ResourceError(f"more than {max_pairs} S-pairs")
        h = _reduce(_spoly(basis[i], basis[j]), basis)
        if h.is_zero():
            continue
        basis.append(h)
        k = len(basis) - 1
        pairs += [(m, k) for m in range(k) if basis[m].lead[0] == h.lead[0]]
    return basis


def _interreduce(vecs: list[_Vec]) -> list[_Vec]:
    vecs = [v for v in vecs if not v.is_zero()]
    # drop elements whose lead is divisible by another lead
    keep = []
    for i, v in enumerate(vecs):
        redundant = False
        for j, w in enumerate(vecs):
            if i == j:
                continue
            if w.lead[0] == v.lead[0] and _divides(w.lead[1], v.lead[1]):
                if w.lead != v.lead or j < i:
                    redundant = True
                    break
        if not redundant:
            keep.append(v)
    out = []
    for i, v in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = _reduce(v.terms, others)
        lc = r.terms[r.lead]
        out.append(_Vec({t: c / lc for t, c in r.terms.items()}))
    out.sort(key=lambda v: _key(v.lead))
    return out


def laurent_syzygies(polys: list[LaurentPoly], max_pairs: int = MAX_PAIRS) -> list[list[LaurentPoly]]:
    """Generators of {(s_i) : sum s_i p_i = 0} over the Laurent ring."""
    n = len(polys)
    if n == 0:
        return []
    nv = polys[0].nvars
    shifts = [tuple(-a for a in p.min_exponents()) for p in polys]
    gens = []
    for i, p in enumerate(polys):
        q = p.shifted(shifts[i])
        terms = {(0, e): c for e, c in q.monomials.items()}
        terms[(i + 1, (0,) * nv)] = Fraction(1)
        gens.append(_Vec(terms))
    basis = groebner(gens, max_pairs)
    syz = [v for v in basis if v.lead[0] != 0]
    syz = _interreduce(syz)
    out = []
    for v in syz:
        comps = [dict() for _ in range(n)]
        for (pos, e), c in v.terms.items():
            comps[pos - 1][e] = c
        out.append([LaurentPoly(nv, comps[i]).shifted(shifts[i]) for i in range(n)])
    return out
