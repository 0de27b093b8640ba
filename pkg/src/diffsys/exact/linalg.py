"""Small exact linear algebra helpers over Z and Q (pure Python, list-of-lists)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else abs(a or b)


def row_hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the Z-span of ``rows``.

    Returned rows are nonzero, pivots strictly increase left to right, every
    pivot is positive and entries above a pivot lie in ``[0, pivot)``.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    m = len(rows[0])
    out = []
    for col in range(m):
        active = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not active:
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                rr = [a - q * b for a, b in zip(r, piv)]
                if rr[col]:
                    nxt.append(rr)
                elif any(rr):
                    rest.append(rr)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append((col, piv))
        rows = rest
    for j, (pc, prow) in enumerate(out):
        h = prow[pc]
        for i in range(j):
            _, row = out[i]
            q = row[pc] // h
            if q:
                out[i] = (out[i][0], [a - q * b for a, b in zip(row, prow)])
    return [r for _, r in out]


def pivots(hnf: list[list[int]]) -> list[int]:
    return [next(i for i, a in enumerate(r) if a) for r in hnf]


def integer_kernel(rows: list[list[int]]) -> list[list[int]]:
    """Basis of {u in Z^k : sum_i u_i * rows[i] = 0}."""
    k = len(rows)
    if k == 0:
        return []
    m = len(rows[0])
    aug = [list(r) + [1 if i == j else 0 for j in range(k)] for i, r in enumerate(rows)]
    # echelon on the first m columns only; keep every row
    work = aug
    for col in range(m):
        active = [r for r in work if r[col]]
        rest = [r for r in work if not r[col]]
        if not active:
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                rr = [a - q * b for a, b in zip(r, piv)]
                (nxt if rr[col] else rest).append(rr)
            active = nxt
        # the surviving pivot row leaves the pool
        work = rest
    kernel = [r[m:] for r in work if not any(r[:m])]
    return row_hnf(kernel)


def rref(rows: list[list[Fraction]], ncols: int):
    """Reduced row echelon form over Q. Returns (rows, pivot_columns)."""
    mat = [list(map(Fraction, r)) for r in rows]
    piv_cols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [a * inv for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        piv_cols.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], piv_cols


def rank(rows) -> int:
    if not rows:
        return 0
    return len(rref(rows, len(rows[0]))[1])


def solve_left(gens: list[list[Fraction]], target: list[Fraction]):
    """Solve sum_i c_i * gens[i] = target over Q; None when inconsistent."""
    s = len(gens)
    if s == 0:
        return [] if not any(target) else None
    m = len(target)
    # columns are generators, rows are coordinates; augment with target
    mat = [[gens[i][j] for i in range(s)] + [target[j]] for j in range(m)]
    red, piv = rref(mat, s + 1)
    if s in piv:
        return None
    sol = [Fraction(0)] * s
    for row, c in zip(red, piv):
        sol[c] = row[s]
    return sol


def _ext_gcd(a: int, b: int):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def integer_solve(rows: list[list[int]], target: list[int]):
    """Integer u with sum_i u_i * rows[i] == target, or None."""
    k = len(rows)
    if not any(target):
        return [0] * k
    kern = integer_kernel([list(r) for r in rows] + [[-t for t in target]])
    # find an integer combination of kernel vectors whose last entry is 1
    acc = None
    for v in kern:
        if acc is None:
            acc = list(v)
            continue
        g, x, y = _ext_gcd(acc[k], v[k])
        if g == 0:
            continue
        acc = [x * a + y * b for a, b in zip(acc, v)]
    if acc is None or abs(acc[k]) != 1:
        return None
    sign = acc[k]
    return [sign * a for a in acc[:k]]
