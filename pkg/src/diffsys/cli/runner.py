"""Executing script directives against the solver."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields

from ..errors import DiffsysError
from ..serialize import (
    certificate_json,
    document,
    function_json,
    supnorm_json,
    system_json,
    verdict_json,
)
from ..solver import (
    Certificate,
    Inconclusive,
    Window,
    min_sup_norm_on_window,
    solve_finite,
    solve_polynomial,
    solve_vanishing_on,
    verify_certificate,
)
from .dsl import Command, WorkbenchScript, render_region, vanishing_set

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONCLUSIVE = 2


@dataclass
class RunConfig:
    window_radius: int = 4
    supnorm_radius: int = 2
    degree_bound: int | None = None
    max_pairs: int = 10_000
    samples: int = 200_000
    seed: int = 0xD1FF
    format: str = "text"

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "format":
                if v not in ("text", "json"):
                    raise ValueError("format must be 'text' or 'json'")
            elif f.name == "degree_bound" and v is None:
                continue
            elif f.name == "seed":
                if not isinstance(v, int) or v < 0:
                    raise ValueError("seed must be a non-negative integer")
            elif not isinstance(v, int) or v <= 0:
                raise ValueError(f"{f.name} must be a positive integer")

    @classmethod
    def load(cls, path: str | None, overrides: dict) -> "RunConfig":
        """Config file values, then command-line flags (flags win)."""
        data = {}
        if path:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
            known = {f.name for f in fields(cls)}
            unknown = set(data) - known
            if unknown:
                raise ValueError(f"unknown config key(s): {', '.join(sorted(unknown))}")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)


def run_directive(script: WorkbenchScript, cmd: Command, cfg: RunConfig) -> dict:
    system = script.systems()[cmd.system]
    out = {"command": cmd.kind, "system": cmd.system, "system_def": system_json(system)}
    try:
        if cmd.kind == "solve":
            out["result"] = verdict_json(solve_finite(system, Window(cfg.window_radius), cfg.max_pairs))
        elif cmd.kind == "minsup":
            out["result"] = supnorm_json(min_sup_norm_on_window(system, Window(cfg.supnorm_radius)))
        elif cmd.kind == "polysolve":
            out["result"] = _polysolve(system, cfg)
        elif cmd.kind == "deduce":
            cert = Certificate.from_entries(system, cmd.uses, "script deduction")
            out["result"] = {
                "verdict": "unsolvable" if verify_certificate(system, cert) else "deduced",
                "certificate": certificate_json(cert),
            }
        elif cmd.kind == "vanish":
            vset = vanishing_set(cmd.regions)
            res = solve_vanishing_on(system, vset, Window(cfg.window_radius))
            out["regions"] = [render_region(r) for r in cmd.regions]
            out["result"] = verdict_json(res)
        else:  # pragma: no cover - the parser only produces known commands
            raise ValueError(cmd.kind)
    except DiffsysError as exc:
        out["result"] = verdict_json(Inconclusive(str(exc)))
    return out


def _polysolve(system, cfg):
    try:
        p = solve_polynomial(system, cfg.degree_bound)
    except TypeError as exc:
        return {"verdict": "inconclusive", "reason": str(exc)}
    if p is None:
        return {"verdict": "no-polynomial-solution"}
    return {"verdict": "solvable", "solution": function_json(p)}


def run_script(script: WorkbenchScript, cfg: RunConfig, kinds=None, system: str | None = None):
    """Run the directives (optionally only some kinds); returns (exit code, document)."""
    results = []
    for cmd in script.commands:
        if kinds is not None and cmd.kind not in kinds:
            continue
        if system is not None and cmd.system != system:
            continue
        results.append(run_directive(script, cmd, cfg))
    code = EXIT_INCONCLUSIVE if any(r["result"]["verdict"] == "inconclusive" for r in results) else EXIT_OK
    return code, document("run", {"results": results})


def run_on_systems(script: WorkbenchScript, cfg: RunConfig, kind: str, system: str | None = None):
    """Apply one command kind to every system of the script (or only ``system``)."""
    systems = script.systems()
    if system is not None and system not in systems:
        raise KeyError(system)
    names = [system] if system is not None else list(systems)
    cmds = [Command(kind, name) for name in names]
    results = [run_directive(script, c, cfg) for c in cmds]
    code = EXIT_INCONCLUSIVE if any(r["result"]["verdict"] == "inconclusive" for r in results) else EXIT_OK
    return code, document("run", {"results": results})


# -- text output -------------------------------------------------------------------

def render_text(doc: dict) -> str:
    lines = []
    for r in doc.get("results", []):
        res = r["result"]
        lines.append(f"[{r['command']} {r['system']}] {res['verdict']}")
        if "regions" in r:
            lines.append("  vanishing on: " + ", ".join(r["regions"]))
        if "reason" in res:
            lines.append(f"  reason: {res['reason']}")
        if "certificate" in res:
            c = res["certificate"]
            lines.append(f"  combined operator: {_ops(c['combined_operator'])}")
            lines.append(f"  combined right-hand side: {c['combined_rhs']}")
            lines.append(f"  value at 0: {c['value_at_zero']}")
            for e in c["entries"]:
                lines.append(f"    eq {e['equation'] + 1} by {_ops(e['multiplier'])}")
        if "solution" in res:
            sol = res["solution"]
            if "expr" in sol:
                lines.append(f"  f = {sol['expr']}")
            else:
                t = sol["table"]
                lines.append(f"  window table on <{', '.join(t['lattice'])}>, radius {t['radius']}, {len(t['values'])} points")
                for v in t["values"][:8]:
                    lines.append(f"    f({v['point']}) = {v['value']}")
                if len(t["values"]) > 8:
                    lines.append("    ...")
        if "value" in res:
            lines.append(f"  min sup norm on window: {res['value']}")
        if "value_estimate" in res:
            lines.append(f"  min sup norm on window (float estimate): {res['value_estimate']}")
        if res.get("window_only"):
            lines.append("  note: values are only determined on the window")
    return "\n".join(lines)


def _ops(terms) -> str:
    if not terms:
        return "0"
    out = []
    for c, s in terms:
        out.append(f"{c}*T[{s}]" if c != "1" else f"T[{s}]")
    return " + ".join(out)

