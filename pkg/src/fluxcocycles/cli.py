"""Command-line driver: ``fluxcoc run`` certifies suites, ``fluxcoc eval`` evaluates a cocycle on a chain."""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import bar_calculus as bc
from .certify import SUITES, SuiteConfig, run_suite
from .descriptors import SchemaError, chain_from_json, chain_to_json, cocycle_from_name, value_to_str


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _format_text(report_json: dict) -> str:
    lines = []
    for c in report_json["checks"]:
        line = f"{c['status'].upper():4}  {c['name']}  [{c['paper_anchor']}]"
        if c["status"] != "pass":
            line += f"\n      expected {c['expected']}\n      actual   {c['actual']}"
        lines.append(line)
    s = report_json["summary"]
    lines.append(f"{s['passed']} passed, {s['failed']} failed")
    return "\n".join(lines)


def cmd_run(args: argparse.Namespace) -> int:
    try:
        config = SuiteConfig(genus=args.genus, symbols=tuple(args.symbols.split(",")) if args.symbols else (),
                             seed=args.seed, suites=tuple(args.suite or ["all"]), cases=args.cases,
                             timing=args.timing)
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    start = time.perf_counter()
    report = run_suite(config)
    elapsed = round((time.perf_counter() - start) * 1000, 3) if args.timing else None
    data = report.to_json(elapsed)
    if args.format == "json":
        _emit(json.dumps(data, indent=2, sort_keys=True), args.out)
    else:
        _emit(_format_text(data), args.out)
    return 0 if report.failed == 0 else 1


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        request = json.loads(Path(args.file).read_text())
        chain = chain_from_json(request.get("chain", []))
        cocycle = cocycle_from_name(request["cocycle"], chain.genus or request.get("genus"))
        if chain.terms and chain.degree != cocycle.degree:
            raise SchemaError(f"degree mismatch: cocycle {cocycle.degree}, chain {chain.degree}")
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    value = bc.evaluate(cocycle, chain)
    closed = bc.is_cycle(chain) if chain.terms else True
    result = {"value": value_to_str(value), "cycle": closed}
    if not closed:
        result["warning"] = "chain not closed"
    if args.certificate:
        result["certificate"] = {"chain": chain_to_json(chain),
                                 "boundary": chain_to_json(bc.boundary(chain)) if chain.degree else [],
                                 "verified": closed}
    if args.format == "json":
        _emit(json.dumps(result, indent=2, sort_keys=True), args.out)
    else:
        text = result["value"] + ("" if closed else "  (chain not closed)")
        _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fluxcoc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run verification suites")
    run.add_argument("--genus", type=int, default=2)
    run.add_argument("--symbols", default="t1,t2", help="comma-separated symbol alphabet")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--suite", action="append", help=f"suite name ({', '.join(sorted(SUITES))}, all); repeatable")
    run.add_argument("--cases", type=int, default=100)
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--out")
    run.add_argument("--timing", action="store_true", help="record wall-clock times (breaks byte-identical output)")
    run.set_defaults(func=cmd_run)

    ev = sub.add_parser("eval", help="evaluate a registered cocycle on a chain described in JSON")
    ev.add_argument("file")
    ev.add_argument("--format", choices=("text", "json"), default="text")
    ev.add_argument("--certificate", action="store_true", help="include chain and boundary in JSON output")
    ev.add_argument("--out")
    ev.set_defaults(func=cmd_eval)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
