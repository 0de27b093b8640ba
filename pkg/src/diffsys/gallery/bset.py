"""The half-space B = {v : phi(v) > 0} of a rational vector space.

phi(v) is the coefficient of the highest-indexed basis element that occurs
in v.  The rational direction counts as index 0, below every symbol.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from ..exact import BasisContext, FormalReal
from .report import GalleryReport

IN_B = "inB"
IN_MINUS_B = "inMinusB"
ZERO = "zero"


@dataclass(frozen=True)
class BSetContext:
    ctx: BasisContext

    def top_index(self, v: FormalReal) -> int:
        """Highest basis index in the support of v (-1 for v = 0)."""
        return max(v.support, default=-1)

    def phi(self, v: FormalReal) -> Fraction:
        if v.ctx != self.ctx:
            raise ValueError("vector from another context")
        i = self.top_index(v)
        return Fraction(0) if i < 0 else v.coeff(i)

    def in_b(self, v: FormalReal) -> bool:
        return self.phi(v) > 0


def bset_predicate(bctx: BSetContext, v: FormalReal) -> str:
    p = bctx.phi(v)
    if p > 0:
        return IN_B
    if p < 0:
        return IN_MINUS_B
    return ZERO


def random_vector(ctx: BasisContext, rng: random.Random, top: int | None = None, density: float = 0.5) -> FormalReal:
    """A sparse vector with small rational coefficients, support within indices <= top."""
    top = ctx.dim - 1 if top is None else top
    data = {}
    for i in range(top + 1):
        if rng.random() < density:
            data[i] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return FormalReal.from_mapping(ctx, data)


def in_symmetric_difference(bctx: BSetContext, v: FormalReal, b: FormalReal) -> bool:
    """v in (B + b) symmetric-difference B."""
    return bctx.in_b(v - b) != bctx.in_b(v)


def bset_shift_difference(bctx: BSetContext, b: FormalReal, trials: int = 1000, seed: int = 0xD1FF) -> GalleryReport:
    """Sampled check that (B + b) diff B lies in the span of basis indices <= top(b)."""
    if bset_predicate(bctx, b) != IN_B:
        raise ValueError("b must lie in B")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    ctx = bctx.ctx
    top_b = bctx.top_index(b)
    rep = GalleryReport("bset", {"b": str(b), "trials": trials, "seed": seed})
    hits = 0
    bad = None
    for t in range(trials):
        # half of the samples are confined below top(b), where the difference lives
        v = random_vector(ctx, rng, top_b if t % 2 else None)
        if in_symmetric_difference(bctx, v, b):
            hits += 1
            if bctx.top_index(v) > top_b and bad is None:
                bad = v
    ev = {"hits": hits, "trials": trials}
    if bad is not None:
        ev["counterexample"] = str(bad)
    rep.add("every sampled v in (B + b) diff B has support within indices <= top(b)", bad is None, ev)
    rep.runtime = time.perf_counter() - t0
    return rep


def bset_properties(k: int = 8, trials: int = 1000, seed: int = 0xD1FF) -> GalleryReport:
    """Antisymmetry of phi, B and -B disjoint, V = B u -B u {0}, and the support bound."""
    t0 = time.perf_counter()
    ctx = BasisContext.numbered(k)
    bctx = BSetContext(ctx)
    rng = random.Random(seed)
    rep = GalleryReport("bset", {"k": k, "trials": trials, "seed": seed})
    fails = {"antisymmetry": None, "disjoint": None, "cover": None, "support": None}
    hits = 0
    for t in range(trials):
        v = random_vector(ctx, rng, density=0.4 if t % 3 else 0.1)
        if bctx.phi(-v) != -bctx.phi(v):
            fails["antisymmetry"] = fails["antisymmetry"] or v
        if bctx.in_b(v) and bctx.in_b(-v):
            fails["disjoint"] = fails["disjoint"] or v
        if (bctx.in_b(v) + bctx.in_b(-v) + v.is_zero) != 1:
            fails["cover"] = fails["cover"] or v
        b = random_vector(ctx, rng)
        if b.is_zero:
            continue
        if not bctx.in_b(b):
            b = -b
        w = random_vector(ctx, rng, bctx.top_index(b) if t % 2 else None)
        if in_symmetric_difference(bctx, w, b):
            hits += 1
            if bctx.top_index(w) > bctx.top_index(b):
                fails["support"] = fails["support"] or w
    labels = {
        "antisymmetry": "phi(-v) = -phi(v)",
        "disjoint": "B and -B are disjoint",
        "cover": "V = B u -B u {0}",
        "support": "(B + b) diff B lies in the span of indices <= top(b)",
    }
    for key, desc in labels.items():
        ev = {"trials": trials}
        if key == "support":
            ev["hits"] = hits
        if fails[key] is not None:
            ev["counterexample"] = str(fails[key])
        rep.add(desc, fails[key] is None, ev)
    rep.runtime = time.perf_counter() - t0
    return rep
