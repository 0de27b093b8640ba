"""The general finite-system pipeline and the constrained (vanishing) solver."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DiffsysError, RepresentabilityError, ResourceError, UndecidedError
from ..functions import WindowTable, zero_test
from ..operators import DifferenceOperator
from . import groebner
from .delta import solve_delta_system
from .elimination import back_substitute, build_rows, conflict_entries, echelon
from .system import (
    Certificate,
    EquationSystem,
    Inconclusive,
    Solution,
    Unsolvable,
    VanishingSet,
    Window,
    rhs_vanishes_off,
)


def syzygy_certificates(system: EquationSystem, max_pairs: int = groebner.MAX_PAIRS):
    """One zero-operator certificate per generator of the syzygy module.

    Raises ResourceError when the Groebner budget is exhausted.
    """
    if not len(system):
        return []
    lattice = system.shift_lattice
    polys = [op.to_laurent(lattice) for op, _ in system.equations]
    if any(p.is_zero() for p in polys):
        # a zero operator is its own syzygy; handled as a unit relation
        out = []
        for i, p in enumerate(polys):
            if p.is_zero():
                out.append(Certificate.from_entries(system, [(DifferenceOperator.identity(system.ctx), i)], "zero operator"))
        rest = [i for i, p in enumerate(polys) if not p.is_zero()]
        sub = system.subsystem(rest)
        for c in syzygy_certificates(sub, max_pairs):
            entries = [(a, rest[i]) for a, i in c.entries]
            out.append(Certificate.from_entries(system, entries, "syzygy"))
        return out
    out = []
    for syz in groebner.laurent_syzygies(polys, max_pairs):
        entries = [
            (DifferenceOperator.from_laurent(s, lattice), i)
            for i, s in enumerate(syz)
            if not s.is_zero()
        ]
        out.append(Certificate.from_entries(system, entries, "syzygy"))
    return out


def _window_certificate(system, wr, ech):
    tracked = echelon(wr.rows, len(wr.coords), track=True)
    entries = conflict_entries(wr, tracked.conflict)
    cert = Certificate.from_entries(system, entries, "window elimination")
    v = cert.value_at_zero()
    if v < 0:
        cert = Certificate.from_entries(system, [(-a, i) for a, i in entries], "window elimination")
    return cert


def window_solve(system: EquationSystem, window: Window, vanish: VanishingSet | None = None):
    """Exact elimination on the window: a table solution or a certificate."""
    wr = build_rows(system, window, vanish)
    ech = echelon(wr.rows, len(wr.coords))
    if ech.inconsistent:
        return Unsolvable(_window_certificate(system, wr, ech), note="window elimination")
    vals = back_substitute(ech)
    lattice = wr.lattice
    if vanish is not None and vanish.off_lattice is not None:
        off = Fraction(0)
    elif all(rhs_vanishes_off(g, lattice) for _, g in system.equations):
        off = Fraction(0)
    else:
        off = None
    table = WindowTable(lattice, dict(zip(wr.coords, vals)), off, window.radius)
    return Solution(table, window, window_only=off is None, note="window elimination")


def _zero_operator_conflict(system: EquationSystem):
    for i, (op, g) in enumerate(system.equations):
        if op.is_zero:
            try:
                if not zero_test(g):
                    return Certificate.from_entries(system, [(DifferenceOperator.identity(system.ctx), i)], "zero operator")
            except UndecidedError:
                continue
    return None


def solve_finite(system: EquationSystem, window: Window | None = None, max_pairs: int = groebner.MAX_PAIRS):
    window = window or Window()
    if not len(system):
        from ..functions import Constant

        return Solution(Constant(0), window, note="empty system")
    cert = _zero_operator_conflict(system)
    if cert is not None:
        return Unsolvable(cert, note="zero operator with nonzero right-hand side")
    try:
        if system.is_delta_shape():
            return solve_delta_system(system, window)
        budget_hit = None
        try:
            for cert in syzygy_certificates(system, max_pairs):
                try:
                    if not zero_test(cert.combined_rhs):
                        return Unsolvable(cert, note="syzygy")
                except UndecidedError:
                    continue
        except ResourceError as exc:
            budget_hit = str(exc)
        out = window_solve(system, window)
        if budget_hit is not None and isinstance(out, Solution):
            return Inconclusive(f"syzygy budget exceeded ({budget_hit}); window is consistent", out)
        return out
    except (RepresentabilityError, ResourceError) as exc:
        return Inconclusive(str(exc))


def solve_vanishing_on(system: EquationSystem, constraint: VanishingSet, window: Window | None = None):
    """Look for a solution that is zero on ``constraint``.

    Infeasibility yields a deduction whose operator only uses shifts in the
    constrained set and whose right-hand side is nonzero at 0; it is checked
    with ``verify_certificate(system, cert, vanish_on=constraint)``.
    """
    window = window or Window()
    try:
        return window_solve(system, window, constraint)
    except (RepresentabilityError, ResourceError) as exc:
        return Inconclusive(str(exc))
    except DiffsysError as exc:  # pragma: no cover - defensive
        return Inconclusive(str(exc))
