"""Exact linear elimination over the values of f on a lattice window.

Unknowns are f(p) for the window points p (in lexicographic coordinate
order).  Every equation contributes one row per point whose whole stencil
stays in the window.  Rows are reduced online: a row's pivot is its smallest
remaining variable, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import RepresentabilityError, ResourceError
from ..exact import Lattice
from ..functions import evaluate
from ..operators import DifferenceOperator
from .system import EquationSystem, VanishingSet, Window

MAX_UNKNOWNS = 40000


@dataclass
class WindowRows:
    lattice: Lattice
    window: Window
    coords: list           # index -> coordinate tuple
    index: dict            # coordinate tuple -> index
    rows: list             # (dict var -> coeff, rhs)
    tags: list             # (equation index, coords) or ("pin", coords)


def _stencil(lattice: Lattice, op: DifferenceOperator):
    out = []
    for c, s in op.terms:
        k = lattice.member(s)
        if k is None:
            raise ValueError(f"shift {s} outside the window lattice")
        out.append((c, k))
    return out


def build_rows(
    system: EquationSystem,
    window: Window,
    vanish: VanishingSet | None = None,
    lattice: Lattice | None = None,
) -> WindowRows:
    lattice = lattice or system.shift_lattice
    coords = window.coordinates(lattice)
    if len(coords) > MAX_UNKNOWNS:
        raise ResourceError(f"window has {len(coords)} points, above the cap {MAX_UNKNOWNS}")
    index = {c: i for i, c in enumerate(coords)}
    stencils = [_stencil(lattice, op) for op, _ in system.equations]
    rows, tags = [], []
    for p in coords:
        x = None
        for i, (op, g) in enumerate(system.equations):
            row = {}
            for c, k in stencils[i]:
                q = tuple(a + b for a, b in zip(p, k))
                j = index.get(q)
                if j is None:
                    row = None
                    break
                row[j] = row.get(j, 0) + c
            if row is None:
                continue
            if x is None:
                x = lattice.point(p)
            v = evaluate(g, x)
            if not isinstance(v, Fraction):
                raise RepresentabilityError(f"right-hand side {i} is not exactly evaluable at {x}")
            rows.append(({j: a for j, a in row.items() if a}, v))
            tags.append((i, p))
        if vanish is not None:
            if x is None:
                x = lattice.point(p)
            if vanish.contains(x):
                rows.append(({index[p]: Fraction(1)}, Fraction(0)))
                tags.append(("pin", p))
    return WindowRows(lattice, window, coords, index, rows, tags)


@dataclass
class Echelon:
    nvars: int
    pivots: dict            # var -> (row dict, rhs)
    conflict: dict | None   # row index -> multiplier, when inconsistent
    inconsistent: bool


def echelon(rows, nvars: int, track: bool = False) -> Echelon:
    pivots: dict = {}
    for r, (row, rhs) in enumerate(rows):
        row = dict(row)
        combo = {r: Fraction(1)} if track else None
        while row:
            v = min(row)
            piv = pivots.get(v)
            if piv is None:
                break
            prow, prhs, pcombo = piv
            f = row[v]
            for u, a in prow.items():
                w = row.get(u, 0) - f * a
                if w:
                    row[u] = w
                else:
                    row.pop(u, None)
            rhs -= f * prhs
            if track:
                for k, a in pcombo.items():
                    w = combo.get(k, 0) - f * a
                    if w:
                        combo[k] = w
                    else:
                        combo.pop(k, None)
        if not row:
            if rhs:
                return Echelon(nvars, pivots, combo, True)
            continue
        v = min(row)
        inv = 1 / row[v]
        row = {u: a * inv for u, a in row.items()}
        if track:
            combo = {k: a * inv for k, a in combo.items()}
        pivots[v] = (row, rhs * inv, combo)
    return Echelon(nvars, pivots, None, False)


def back_substitute(ech: Echelon, free_values: dict | None = None, homogeneous: bool = False):
    """Values of all unknowns; free unknowns take ``free_values`` (default 0)."""
    vals = [Fraction(0)] * ech.nvars
    for v, a in (free_values or {}).items():
        vals[v] = a
    for v in sorted(ech.pivots, reverse=True):
        row, rhs, _ = ech.pivots[v]
        acc = Fraction(0) if homogeneous else rhs
        for u, a in row.items():
            if u != v:
                acc -= a * vals[u]
        vals[v] = acc
    return vals


def free_variables(ech: Echelon):
    return [v for v in range(ech.nvars) if v not in ech.pivots]


def nullspace(ech: Echelon):
    """Columns N (as lists) with A N = 0, one per free variable."""
    out = []
    for v in free_variables(ech):
        out.append(back_substitute(ech, {v: Fraction(1)}, homogeneous=True))
    return out


def conflict_entries(wr: WindowRows, conflict: dict):
    """Turn an inconsistent row combination into deduction entries (A_i, i)."""
    ctx = wr.lattice.ctx
    per_eq: dict[int, list] = {}
    for r, lam in conflict.items():
        tag = wr.tags[r]
        if tag[0] == "pin":
            continue
        i, p = tag
        per_eq.setdefault(i, []).append((lam, wr.lattice.point(p)))
    entries = []
    for i in sorted(per_eq):
        op = DifferenceOperator.canonicalize(per_eq[i], ctx)
        if not op.is_zero:
            entries.append((op, i))
    return entries
