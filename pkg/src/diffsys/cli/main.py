"""Command-line entry point: ``diffsys <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from ..gallery import GALLERY, run_gallery
from ..serialize import document, dumps
from .certify import certify_document
from .dsl import ScriptError, parse_script
from .runner import EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, RunConfig, render_text, run_on_systems, run_script


class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--format", choices=["text", "json"], default=None, help="output format (default text)")
    p.add_argument("--config", help="JSON config file; command-line flags take precedence")
    p.add_argument("--radius", type=int, dest="window_radius", help="window radius (default 4)")
    p.add_argument("--supnorm-radius", type=int, help="window radius for the sup-norm LP (default 2)")
    p.add_argument("--degree-bound", type=int, help="degree bound for polynomial solutions")
    p.add_argument("--max-pairs", type=int, help="pair budget for the syzygy computation")


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgParser(prog="diffsys", description="Exact workbench for systems of difference equations.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("run", "execute every directive of a script"),
        ("solve", "decide solvability of the script's systems"),
        ("deduce", "execute the script's deduce directives"),
        ("min-supnorm", "smallest sup norm of a window solution"),
        ("poly-solve", "look for polynomial solutions"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("script", help="script file, or - for standard input")
        p.add_argument("--system", help="only this system")
        _common(p)
    p = sub.add_parser("certify", help="re-check a saved JSON verdict document")
    p.add_argument("document")
    p.add_argument("--format", choices=["text", "json"], default=None)
    p = sub.add_parser("parse", help="parse a script and print its canonical form")
    p.add_argument("script")
    p.add_argument("--check", action="store_true", help="only report whether the script parses")
    p = sub.add_parser("gallery", help="run one of the built-in constructions")
    p.add_argument("name", choices=sorted(GALLERY))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--radius", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--format", choices=["text", "json"], default=None)
    p.add_argument("--config", help="JSON config file; command-line flags take precedence")
    return ap


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _config(args) -> RunConfig:
    keys = ["format", "window_radius", "supnorm_radius", "degree_bound", "max_pairs"]
    return RunConfig.load(getattr(args, "config", None), {k: getattr(args, k, None) for k in keys})


def _emit(doc, fmt, text):
    print(dumps(doc) if fmt == "json" else text)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"diffsys: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        return _dispatch(args)
    except ScriptError as exc:
        print(exc.describe(getattr(args, "script", "<script>")), file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"diffsys: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "parse":
        script = parse_script(_read(args.script))
        print("ok" if args.check else script.render(), end="\n" if args.check else "")
        return EXIT_OK
    if cmd == "certify":
        with open(args.document, encoding="utf-8") as fh:
            doc = json.load(fh)
        checks = certify_document(doc)
        if (args.format or "text") == "json":
            print(dumps(document("certify", {"checks": [{"result": i, "status": s, "detail": w} for i, s, w in checks]})))
        else:
            for i, s, w in checks:
                print(f"result {i}: {s} ({w})")
        return EXIT_USAGE if any(s == "rejected" for _, s, _ in checks) else EXIT_OK
    if cmd == "gallery":
        return _gallery(args)
    cfg = _config(args)
    script = parse_script(_read(args.script))
    if args.system is not None and args.system not in script.systems():
        raise KeyError(f"unknown system {args.system!r}")
    if cmd == "run":
        code, doc = run_script(script, cfg, system=args.system)
    elif cmd == "deduce":
        code, doc = run_script(script, cfg, kinds={"deduce"}, system=args.system)
    else:
        kind = {"solve": "solve", "min-supnorm": "minsup", "poly-solve": "polysolve"}[cmd]
        code, doc = run_on_systems(script, cfg, kind, args.system)
    _emit(doc, cfg.format, render_text(doc))
    return code


def _gallery(args) -> int:
    _, spec = GALLERY[args.name]
    data = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    fmt = args.format or data.get("format", "text")
    params = {k: v for k, v in data.items() if k in spec}
    for key in spec:
        v = getattr(args, key, None)
        if v is not None:
            params[key] = v
    for key in ("n", "k", "radius", "samples", "seed", "trials"):
        if getattr(args, key, None) is not None and key not in spec:
            raise ValueError(f"gallery {args.name} takes no --{key}")
    report = run_gallery(args.name, **params)
    if fmt == "json":
        print(dumps(document("gallery", report.to_json())))
    else:
        print(report.to_text())
    return EXIT_INCONCLUSIVE if report.inconclusive else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
