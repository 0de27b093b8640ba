"""Path integration for systems made only of forward differences Delta_b f = g."""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from math import gcd

import numpy as np

from ..errors import RepresentabilityError, ShapeError
from ..functions import Constant, WindowTable, evaluate
from ..operators import DifferenceOperator
from .system import Certificate, EquationSystem, Solution, Unsolvable, Window, rhs_vanishes_off

CYCLE_CANDIDATES = 200


def solve_delta_system(system: EquationSystem, window: Window | None = None):
    """Solve Delta_{b_i} f = g_i on a window of the shift lattice.

    A BFS spanning forest fixes f (root values 0); every remaining window
    edge closes a cycle.  If some cycle sum is nonzero a short such cycle is
    returned as a certificate, otherwise the table of values.
    """
    window = window or Window()
    steps = []
    for i, (op, _) in enumerate(system.equations):
        b = op.delta_shift()
        if b is None:
            raise ShapeError(f"equation {i} is not of the form Delta_b f = g")
        steps.append(b)
    lattice = system.shift_lattice
    coords = window.coordinates(lattice)
    ks = [lattice.member(b) for b in steps]
    npts = len(coords)
    nxt = _neighbours(coords, ks, window.radius)

    # right-hand sides as integers over a common denominator
    rows = []
    for i, (_, rhs) in enumerate(system.equations):
        if isinstance(rhs, Constant):
            rows.append(rhs.value)
            continue
        vals = [None] * npts
        for j in range(npts):
            if nxt[i][j] >= 0:
                v = evaluate(rhs, lattice.point(coords[j]))
                if not isinstance(v, Fraction):
                    raise RepresentabilityError(f"right-hand side {i} is not exactly evaluable")
                vals[j] = v
        rows.append(vals)
    den = 1
    for row in rows:
        for v in (row if isinstance(row, list) else [row]):
            if v is not None:
                den = den * v.denominator // gcd(den, v.denominator)
    G = []
    for row in rows:
        if isinstance(row, list):
            G.append([None if v is None else int(v * den) for v in row])
        else:
            G.append([int(row * den)] * npts)

    prev = [[-1] * npts for _ in ks]
    for i in range(len(ks)):
        pi, ni = prev[i], nxt[i]
        for j in range(npts):
            t = ni[j]
            if t >= 0:
                pi[t] = j

    value = [None] * npts
    parent = [None] * npts   # (from index, equation, forward?)
    depth = [0] * npts
    start = npts // 2 if npts else None  # the origin is the middle of the window
    order = ([start] if start is not None else []) + list(range(npts))
    neq = range(len(ks))
    for r in order:
        if value[r] is not None:
            continue
        value[r] = 0
        queue = deque([r])
        while queue:
            j = queue.popleft()
            vj = value[j]
            for i in neq:
                t = nxt[i][j]
                if t >= 0 and value[t] is None:
                    value[t] = vj + G[i][j]
                    parent[t] = (j, i, True)
                    depth[t] = depth[j] + 1
                    queue.append(t)
                s = prev[i][j]
                if s >= 0 and value[s] is None:
                    value[s] = vj - G[i][s]
                    parent[s] = (j, i, False)
                    depth[s] = depth[j] + 1
                    queue.append(s)

    bad = []
    for i in neq:
        ni, gi = nxt[i], G[i]
        for j in range(npts):
            t = ni[j]
            if t >= 0 and value[t] - value[j] != gi[j]:
                bad.append((depth[j] + depth[t], max(map(abs, coords[j]), default=0), j, i))
    if bad:
        # measure the exact cycle length only for the most promising edges
        bad.sort()
        best = min(
            (_cycle_length(parent, depth, j, nxt[i][j]), near, j, i) for _, near, j, i in bad[:CYCLE_CANDIDATES]
        )
        _, _, j, i = best
        entries = _cycle_entries(system, lattice, coords, parent, depth, j, i, nxt[i][j])
        cert = Certificate.from_entries(system, entries, note="window cycle")
        if cert.value_at_zero() < 0:
            cert = Certificate.from_entries(system, [(-a, e) for a, e in entries], note="window cycle")
        return Unsolvable(cert, note=f"cycle of length {best[0]}")

    off = Fraction(0) if all(rhs_vanishes_off(gg, lattice) for _, gg in system.equations) else None
    table = WindowTable(lattice, {coords[j]: Fraction(value[j], den) for j in range(npts)}, off, window.radius)
    return Solution(table, window, window_only=off is None, note="path integration")


def _neighbours(coords, ks, radius):
    """nxt[i][j] = position of coords[j] + k_i in the window, or -1.

    Window coordinates are listed in product order, so the position of a
    point is its mixed-radix code with digits c + radius.
    """
    npts = len(coords)
    if not ks:
        return []
    rank = len(ks[0])
    width = 2 * radius + 1
    arr = np.array(coords, dtype=np.int64).reshape(npts, rank)
    weights = width ** np.arange(rank - 1, -1, -1, dtype=np.int64)
    out = []
    for k in ks:
        moved = arr + np.array(k, dtype=np.int64)
        ok = np.all(np.abs(moved) <= radius, axis=1)
        pos = (moved + radius) @ weights
        out.append(np.where(ok, pos, -1).tolist())
    return out


def _ancestors(parent, depth, a, b):
    """Paths from a and b up to their lowest common ancestor."""
    pa, pb = [], []
    while depth[a] > depth[b]:
        pa.append(a)
        a = parent[a][0]
    while depth[b] > depth[a]:
        pb.append(b)
        b = parent[b][0]
    while a != b:
        pa.append(a)
        pb.append(b)
        a = parent[a][0]
        b = parent[b][0]
    return pa, pb


def _cycle_length(parent, depth, j, t):
    pa, pb = _ancestors(parent, depth, j, t)
    return len(pa) + len(pb) + 1


def _edge_entry(lattice, coords, parent, node, up: bool):
    """Entry for walking the tree edge at ``node``; up=True walks towards the root."""
    src, i, forward = parent[node]
    # the edge joins base -> base + b_i
    base = src if forward else node
    # walking from src to node has sign +1 when forward
    sign = 1 if forward else -1
    if up:
        sign = -sign
    return (sign, lattice.point(coords[base]), i)


def _cycle_entries(system, lattice, coords, parent, depth, j, i, t):
    """Closed walk: LCA -> j, edge j -> t, t -> LCA."""
    pa, pb = _ancestors(parent, depth, j, t)
    raw = []
    for node in reversed(pa):  # LCA down to j
        raw.append(_edge_entry(lattice, coords, parent, node, up=False))
    raw.append((1, lattice.point(coords[j]), i))
    for node in pb:  # t up to LCA
        raw.append(_edge_entry(lattice, coords, parent, node, up=True))
    ctx = system.ctx
    per_eq: dict[int, list] = {}
    for sign, p, e in raw:
        per_eq.setdefault(e, []).append((sign, p))
    out = []
    for e in sorted(per_eq):
        op = DifferenceOperator.canonicalize(per_eq[e], ctx)
        if not op.is_zero:
            out.append((op, e))
    return out
