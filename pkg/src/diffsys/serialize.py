"""JSON-ready dictionaries for systems, verdicts, certificates and reports.

Exact numbers are written as strings ("p/q"), shifts and functions in the
script syntax, so every document can be read back and re-checked.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exact import render_rational
from .functions import WindowTable
from .solver import Certificate, EquationSystem, Inconclusive, Solution, Unsolvable
from .solver.supnorm import SupNormResult

SCHEMA = 1


def rational(q) -> str:
    return render_rational(Fraction(q))


def operator_json(op) -> list:
    return [[rational(c), str(s)] for c, s in op.terms]


def system_json(system: EquationSystem) -> dict:
    return {
        "basis": list(system.ctx.symbols),
        "equations": [{"operator": operator_json(op), "rhs": g.render()} for op, g in system.equations],
    }


def certificate_json(cert: Certificate) -> dict:
    return {
        "entries": [{"equation": i, "multiplier": operator_json(a)} for a, i in cert.entries],
        "combined_operator": operator_json(cert.combined_operator),
        "combined_rhs": cert.combined_rhs.render(),
        "value_at_zero": rational(cert.value_at_zero()),
        "note": cert.note,
    }


def table_json(t: WindowTable) -> dict:
    return {
        "lattice": [str(g) for g in t.lattice.basis_reals],
        "radius": t.radius,
        "off": None if t.off is None else rational(t.off),
        "values": [{"point": str(x), "value": rational(v)} for x, v in t.items()],
    }


def function_json(f) -> dict:
    if isinstance(f, WindowTable):
        return {"table": table_json(f)}
    return {"expr": f.render()}


def verdict_json(result) -> dict:
    if isinstance(result, Solution):
        out = {"verdict": "solvable", "solution": function_json(result.f), "window_only": result.window_only}
        if result.window is not None:
            out["window_radius"] = result.window.radius
    elif isinstance(result, Unsolvable):
        out = {"verdict": "unsolvable", "certificate": certificate_json(result.cert)}
    elif isinstance(result, Inconclusive):
        out = {"verdict": "inconclusive", "reason": result.reason}
        if isinstance(result.partial, Solution):
            out["partial"] = verdict_json(result.partial)
        return out
    else:
        raise TypeError(f"not a verdict: {result!r}")
    if result.note:
        out["note"] = result.note
    return out


def supnorm_json(res: SupNormResult) -> dict:
    if not res.feasible:
        return {"verdict": "unsolvable", "certificate": certificate_json(res.certificate)}
    out = {"verdict": "solvable", "exact": res.exact, "window_radius": res.window.radius}
    if res.exact:
        out["value"] = rational(res.value)
        out["witness"] = table_json(res.witness)
        if res.bound is not None:
            lat = res.witness.lattice
            out["lower_bound"] = {
                "weights": [{"point": str(lat.point(c)), "weight": rational(w)} for c, w in sorted(res.bound.weights.items())],
                "multipliers": [
                    {"equation": tag[0], "point": str(lat.point(tag[1])), "multiplier": rational(lam)}
                    for tag, lam in res.bound.multipliers
                ],
                "constant": rational(res.bound.constant),
            }
    else:
        # flagged numeric estimate
        out["value_estimate"] = float(res.value)
    return out


def document(kind: str, body: dict) -> dict:
    return {"schema": SCHEMA, "kind": kind, **body}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
