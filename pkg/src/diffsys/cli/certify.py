"""Independent re-checking of saved verdict documents."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DiffsysError
from ..exact import BasisContext, Lattice
from ..functions import WindowTable, apply_operator, combine, zero_test
from ..operators import DifferenceOperator
from ..solver import (
    Certificate,
    EquationSystem,
    LowerBound,
    Window,
    check_on_window,
    verify_certificate,
    verify_lower_bound,
)
from .dsl import Parser, parse_function, parse_shift, vanishing_set


def load_operator(terms, ctx: BasisContext) -> DifferenceOperator:
    return DifferenceOperator.canonicalize([(Fraction(c), parse_shift(s, ctx)) for c, s in terms], ctx)


def load_system(data: dict) -> EquationSystem:
    ctx = BasisContext(tuple(data["basis"]))
    eqs = [(load_operator(e["operator"], ctx), parse_function(e["rhs"], ctx)) for e in data["equations"]]
    return EquationSystem(eqs, ctx)


def load_certificate(data: dict, ctx: BasisContext) -> Certificate:
    entries = tuple((load_operator(e["multiplier"], ctx), int(e["equation"])) for e in data["entries"])
    return Certificate(
        entries,
        load_operator(data["combined_operator"], ctx),
        parse_function(data["combined_rhs"], ctx),
        data.get("note", ""),
    )


def load_table(data: dict, ctx: BasisContext) -> WindowTable:
    gens = [parse_shift(g, ctx) for g in data["lattice"]]
    lat = Lattice.from_generators(gens, ctx) if gens else Lattice.trivial(ctx)
    values = {}
    for item in data["values"]:
        k = lat.member(parse_shift(item["point"], ctx))
        if k is None:
            raise ValueError(f"table point {item['point']} is off its lattice")
        values[k] = Fraction(item["value"])
    off = None if data.get("off") is None else Fraction(data["off"])
    return WindowTable(lat, values, off, data.get("radius"))


def _regions(texts, ctx):
    out = []
    for t in texts:
        p = Parser(t)
        p.ctx = ctx
        out.append(p.region())
    return out


def _check_solution(system, sol: dict, radius) -> tuple[bool, str]:
    ctx = system.ctx
    if "table" in sol:
        table = load_table(sol["table"], ctx)
        r = sol["table"].get("radius") or radius
        if table.lattice != system.shift_lattice:
            return False, "table lattice differs from the shift lattice"
        ok = check_on_window(system, table, Window(r))
        return ok, "window table satisfies every in-window equation" if ok else "window table violates an equation"
    f = parse_function(sol["expr"], ctx)
    for op, g in system.equations:
        if not zero_test(combine([(1, apply_operator(op, f)), (-1, g)])):
            return False, f"solution fails {op} f = {g}"
    return True, "solution satisfies every equation exactly"


def check_result(entry: dict) -> tuple[str, str]:
    """('verified' | 'rejected' | 'unchecked', explanation) for one result entry."""
    system = load_system(entry["system_def"])
    ctx = system.ctx
    res = entry["result"]
    verdict = res["verdict"]
    kind = entry.get("command")
    try:
        if kind == "minsup":
            return _check_supnorm(system, res)
        if "certificate" in res and verdict == "unsolvable":
            cert = load_certificate(res["certificate"], ctx)
            vanish = vanishing_set(_regions(entry["regions"], ctx)) if "regions" in entry else None
            ok = verify_certificate(system, cert, vanish)
            return ("verified", "certificate checks") if ok else ("rejected", "certificate does not check")
        if "certificate" in res and verdict == "deduced":
            cert = load_certificate(res["certificate"], ctx)
            ok = verify_certificate(system, cert) is False and _deduction_matches(system, cert)
            return ("verified", "deduction recomputed") if ok else ("rejected", "deduction does not match")
        if verdict == "solvable" and "solution" in res:
            ok, why = _check_solution(system, res["solution"], res.get("window_radius", 4))
            return ("verified" if ok else "rejected"), why
    except (DiffsysError, ValueError, KeyError, TypeError) as exc:
        return "rejected", f"malformed document: {exc}"
    return "unchecked", f"nothing to check for verdict {verdict!r}"


def _deduction_matches(system, cert):
    again = Certificate.from_entries(system, cert.entries)
    return again.combined_operator == cert.combined_operator and zero_test(
        combine([(1, again.combined_rhs), (-1, cert.combined_rhs)])
    )


def _check_supnorm(system, res):
    if res["verdict"] == "unsolvable":
        cert = load_certificate(res["certificate"], system.ctx)
        ok = verify_certificate(system, cert)
        return ("verified", "certificate checks") if ok else ("rejected", "certificate does not check")
    if not res.get("exact"):
        return "unchecked", "float estimate"
    ctx = system.ctx
    value = Fraction(res["value"])
    table = load_table(res["witness"], ctx)
    window = Window(res["window_radius"])
    if not check_on_window(system, table, window):
        return "rejected", "witness violates an equation"
    if max((abs(v) for v in table.values.values()), default=Fraction(0)) != value:
        return "rejected", "witness does not attain the value"
    lb = res.get("lower_bound")
    if lb is None:
        return "unchecked", "witness checks; no lower bound recorded"
    lat = table.lattice
    bound = LowerBound(
        {lat.member(parse_shift(w["point"], ctx)): Fraction(w["weight"]) for w in lb["weights"]},
        [((m["equation"], lat.member(parse_shift(m["point"], ctx))), Fraction(m["multiplier"])) for m in lb["multipliers"]],
        Fraction(lb["constant"]),
    )
    got = verify_lower_bound(system, window, bound)
    if got is None or got != value:
        return "rejected", "lower bound does not check"
    return "verified", "witness attains the value and the dual bound matches it"


def certify_document(doc: dict):
    """Check every result in a run document; returns a list of (index, status, why)."""
    if doc.get("schema") != 1:
        raise ValueError("unsupported document schema")
    return [(i,) + check_result(r) for i, r in enumerate(doc.get("results", []))]
