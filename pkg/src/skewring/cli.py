"""Command line entry point: ``skewring verify | compute | trace``."""

from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

from . import maps as M
from .config import LabConfig
from .errors import CounterexampleFound, PreconditionError, RingSpecError, SkewRingError
from .radical import PRECONDITION_FAILED
from .reports import render_json_lines, render_text
from .skewpoly import format_poly, leading, parse_poly, quasi_inverse_nilpotent
from .suites import SUITE_NAMES, exit_status, run_suites, run_trace
from .words import disjointify, format_word, parse_word

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_TRUNCATED = 0, 1, 2, 3


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", dest="config_opt", metavar="PATH", help="lab config file (JSON)")
    p.add_argument("--format", choices=("text", "json"), default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--strict", action="store_true", help="count truncated checks as failures")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skewring", description="Free skew extensions over finite rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites on a config")
    v.add_argument("config", nargs="?", help="lab config file (JSON)")
    v.add_argument("--suite", default="all", help="comma separated: " + ", ".join(SUITE_NAMES + ("all",)))
    v.add_argument("--timing", action="store_true", help="record wall time per suite")
    _common(v)

    c = sub.add_parser("compute", help="one-off computations")
    c.add_argument("op", choices=("mul", "leading", "disjointify", "qfact", "quasi_inverse"))
    c.add_argument("args", nargs="*")
    c.add_argument("--q", default=None, help="q for qfact (element literal, default 1)")
    c.add_argument("--bound", type=int, default=None, help="nilpotency bound for quasi_inverse")
    _common(c)

    t = sub.add_parser("trace", help="replay the semiprimitivity argument on one instance")
    t.add_argument("config", nargs="?", help="lab config file (JSON)")
    t.add_argument("--gens", action="append", default=None,
                   help="generator polynomial of the ideal (repeatable, or ';' separated)")
    t.add_argument("--degree", type=int, default=None, help="degree bound of the quasi-inverse search")
    _common(t)
    return parser


def _load(path: str | None, args) -> LabConfig:
    if path is None:
        raise RingSpecError("a config file is required")
    cfg = LabConfig.load(path)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.format is not None:
        cfg.format = args.format
    cfg.context  # validate maps up front so a bad config is a config error
    return cfg


def _err(msg: str) -> None:
    print(f"skewring: {msg}", file=sys.stderr)


def cmd_verify(args) -> int:
    try:
        cfg = _load(args.config or args.config_opt, args)
    except (SkewRingError, CounterexampleFound) as exc:
        _err(str(exc))
        return EXIT_CONFIG
    names = [s.strip() for s in args.suite.split(",") if s.strip()]
    if "all" in names:
        names = list(SUITE_NAMES)
    unknown = [n for n in names if n not in SUITE_NAMES]
    if unknown:
        _err(f"unknown suite(s) {unknown}")
        return EXIT_CONFIG
    try:
        report = run_suites(cfg, names, timing=args.timing)
    except RingSpecError as exc:
        _err(str(exc))
        return EXIT_CONFIG
    out = render_json_lines(report) if cfg.format == "json" else render_text(report)
    sys.stdout.write(out)
    return exit_status(report, strict=args.strict)


_SET_RE = re.compile(r"\[([^\]]*)\]")


def _parse_family(text: str, variables: Sequence[str] | None):
    groups = [g.strip() for g in text.split(";") if g.strip()]
    raw = []
    for g in groups:
        m = _SET_RE.fullmatch(g)
        if not m:
            raise ValueError(f"word set {g!r} must look like [w1,w2,...]")
        raw.append([w.strip() for w in m.group(1).split(",") if w.strip()])
    if variables is None:
        letters = sorted({ch for ws in raw for w in ws for ch in w})
        variables = letters or ["x"]
    return [frozenset(parse_word(w, variables) for w in ws) for ws in raw], list(variables)


def cmd_compute(args) -> int:
    path = args.config_opt
    op, operands = args.op, args.args
    arity = {"mul": 2, "leading": 1, "disjointify": 1, "qfact": 1, "quasi_inverse": 1}[op]
    if len(operands) != arity:
        _err(f"{op} takes {arity} argument(s), got {len(operands)}")
        return EXIT_CONFIG
    try:
        cfg = None
        if path is not None or op != "disjointify":
            cfg = _load(path, args)
    except (SkewRingError, CounterexampleFound) as exc:
        _err(str(exc))
        return EXIT_CONFIG
    try:
        if op == "disjointify":
            family, names = _parse_family(operands[0], cfg.variables if cfg else None)
        elif op == "qfact":
            n = int(operands[0])
            if n < 0:
                raise ValueError("qfact needs n >= 0")
            q = cfg.ring.parse(args.q) if args.q is not None else cfg.ring.one
        else:
            ctx = cfg.context
            polys = [parse_poly(ctx, s) for s in operands]
    except (ValueError, RingSpecError) as exc:
        _err(f"parse error: {exc}")
        return EXIT_CONFIG
    try:
        if op == "mul":
            print(format_poly(polys[0] * polys[1]))
        elif op == "leading":
            c, w, _ = leading(polys[0])
            print(f"{c}*{ctx.format_word(w)}")
        elif op == "qfact":
            print(cfg.ring.format(M.q_factorial(cfg.ring, q, n)))
        elif op == "quasi_inverse":
            b = quasi_inverse_nilpotent(ctx, polys[0], args.bound)
            if b is None:
                _err("no nilpotency detected within the bound")
                return EXIT_FAIL
            print(format_poly(b))
        else:
            t, nus = disjointify(family, len(names))
            print(f"t={t}; nu=[{', '.join(format_word(nu, names) for nu in nus)}]")
    except SkewRingError as exc:
        _err(str(exc))
        return EXIT_FAIL
    return EXIT_OK


def cmd_trace(args) -> int:
    try:
        cfg = _load(args.config or args.config_opt, args)
    except (SkewRingError, CounterexampleFound) as exc:
        _err(str(exc))
        return EXIT_CONFIG
    if args.gens:
        gens = [g.strip() for item in args.gens for g in item.split(";") if g.strip()]
    else:
        configured = cfg.scenario("trace", [])
        gens = configured[0]["gens"] if configured else [f"1*{cfg.variables[0]}"]
    try:
        tr = run_trace(cfg, gens, args.degree)
    except (ValueError, RingSpecError) as exc:
        _err(f"parse error: {exc}")
        return EXIT_CONFIG
    except PreconditionError as exc:
        _err(f"precondition failed: {exc}")
        return EXIT_CONFIG
    records = tr.records()
    sys.stdout.write(render_json_lines(records) if cfg.format == "json" else render_text(records))
    if tr.verdict == PRECONDITION_FAILED:
        failed = next((r for r in tr.steps if not r.passed), None)
        _err(f"precondition failed at {failed.check_id if failed else 'trace'}")
    return tr.exit_code


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"verify": cmd_verify, "compute": cmd_compute, "trace": cmd_trace}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
