"""Command line front end.

Verbs:
  presets              list built-in scenarios and their expected verdicts
  run SCENARIO         simulate, print verdicts, optionally write traces/report
  check TRACE          evaluate consistency criteria over a recorded trace
  replay SCENARIO      re-simulate and byte-compare against a stored trace
  campaign NAME        drive a property campaign, report counterexamples

Exit codes: 0 ok, 1 property/verdict violation (counterexample printed),
2 malformed scenario, trace, or usage.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from .campaigns import CAMPAIGNS, tape_statistics
from .checkers import CHECKERS, DEFAULT_WINDOW, EventualityWindow, Status, run_checker
from .history import History, TraceError
from .netsim import (Scenario, ScenarioError, evaluate_run, preset,
                     preset_names, run_scenario, scenario_from_dict)

OK, VIOLATION, SCHEMA = 0, 1, 2


def _env_seed() -> Optional[int]:
    raw = os.environ.get("BTLAB_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ScenarioError(f"BTLAB_SEED must be an integer, got {raw!r}")


def _load_scenario(ref: str, seed: Optional[int]) -> Scenario:
    if ref in preset_names():
        scenario = preset(ref)
    else:
        path = Path(ref)
        if not path.exists():
            raise ScenarioError(f"unknown preset or missing file: {ref}")
        try:
            payload = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"{ref}: not valid JSON ({exc})")
        scenario = scenario_from_dict(payload)
    if seed is None:
        seed = _env_seed()
    if seed is not None:
        scenario = dataclasses.replace(
            scenario, seed=seed,
            oracle=dataclasses.replace(scenario.oracle, seed=seed))
    return scenario


def _print_verdicts(report: dict) -> None:
    for crit, row in report["verdicts"].items():
        mark = "ok" if row["ok"] else "MISMATCH"
        expected = row["expected"] or "-"
        line = f"{crit:20s} {row['actual']:12s} expected={expected:12s} [{mark}]"
        if row["witness"]:
            line += f" witness={row['witness']}"
        print(line)


def cmd_run(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args.scenario, args.seed)
    run = run_scenario(scenario)
    report = evaluate_run(run)
    print(f"scenario {scenario.name} seed={scenario.seed} "
          f"dropped={run.dropped} undelivered={run.undelivered}")
    _print_verdicts(report)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        stem = out / scenario.name
        stem.with_suffix(".trace.jsonl").write_text(run.history.to_jsonl())
        stem.with_suffix(".raw.jsonl").write_text(run.full_history.to_jsonl())
        stem.with_suffix(".report.json").write_text(
            json.dumps(report, indent=2, sort_keys=True) + "\n")
        print(f"wrote {stem}.trace.jsonl / .raw.jsonl / .report.json")
    if not report["ok"]:
        print(f"verdict mismatch (counterexample seed {scenario.seed})")
        return VIOLATION
    return OK


def cmd_check(args: argparse.Namespace) -> int:
    path = Path(args.trace)
    if not path.exists():
        raise TraceError(f"no such trace: {args.trace}")
    history = History.from_jsonl(path.read_text())
    correct = set(history.processes) - set(args.byzantine or [])
    history = History(history.events, correct=correct, complete=args.complete)
    history = history.restricted()
    window = EventualityWindow(args.window) if args.window else DEFAULT_WINDOW
    names = args.criterion or ["sc", "ec"]
    worst = OK
    for name in names:
        if name not in CHECKERS:
            raise TraceError(
                f"unknown criterion {name!r}; pick from {', '.join(sorted(CHECKERS))}")
        verdict = run_checker(name, history, window)
        print(json.dumps({
            "criterion": verdict.criterion, "status": verdict.status,
            "witness": list(verdict.witness), "detail": verdict.detail,
        }, sort_keys=True))
        if verdict.status == Status.FAIL:
            worst = VIOLATION
    return worst


def cmd_replay(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args.scenario, args.seed)
    run = run_scenario(scenario)
    produced = run.full_history.to_jsonl() if args.raw else run.history.to_jsonl()
    reference = Path(args.trace).read_text()
    if produced == reference:
        print(f"replay of {scenario.name} (seed {scenario.seed}): byte-identical")
        return OK
    print(f"replay of {scenario.name} (seed {scenario.seed}): traces differ")
    return VIOLATION


def cmd_campaign(args: argparse.Namespace) -> int:
    if args.lab is None:
        print("no lab selected: empty campaign, trivially passing")
        return OK
    if args.lab == "tape":
        stats = tape_statistics(seed=args.seed if args.seed is not None else 2026)
        print(json.dumps(stats, indent=2))
        return OK if stats["ok"] else VIOLATION
    seed = args.seed
    if seed is None:
        seed = _env_seed() or 0
    result = CAMPAIGNS[args.lab](args.runs, seed)
    print(f"campaign {result.name}: {result.runs} runs, "
          f"{len(result.violations)} violations")
    if result.stats:
        print(json.dumps(result.stats, indent=2, default=str))
    for key, why in result.violations[:20]:
        print(f"counterexample {key!r}: {why}")
    return OK if result.ok else VIOLATION


def cmd_presets(args: argparse.Namespace) -> int:
    for name in preset_names():
        sc = preset(name)
        expected = ", ".join(f"{k}={v}" for k, v in sorted(sc.expected_verdicts.items()))
        print(f"{name:24s} {sc.description}")
        if expected:
            print(f"{'':24s} expects: {expected}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="btlab",
        description="Block tree consistency lab: simulate, record, check.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("run", help="simulate a scenario and evaluate verdicts")
    p.add_argument("scenario", help="preset name or scenario JSON path")
    p.add_argument("--seed", type=int, default=None,
                   help="override scenario seed (default: $BTLAB_SEED, then file)")
    p.add_argument("--out", default=None, help="directory for trace/report files")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("check", help="evaluate criteria over a trace file")
    p.add_argument("trace", help="JSON-lines trace path")
    p.add_argument("--criterion", action="append",
                   help="criterion name (repeatable; default: sc, ec)")
    p.add_argument("--window", type=int, default=None,
                   help="stabilization suffix length (reads per process)")
    p.add_argument("--complete", action="store_true",
                   help="treat the trace as a complete (finished) history")
    p.add_argument("--byzantine", action="append",
                   help="process to exclude from the correct set (repeatable)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("replay", help="re-simulate and compare with a stored trace")
    p.add_argument("scenario", help="preset name or scenario JSON path")
    p.add_argument("trace", help="reference trace to byte-compare against")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--raw", action="store_true",
                   help="compare the unrestricted trace instead")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("campaign", help="run a property campaign")
    p.add_argument("--lab", choices=sorted(CAMPAIGNS) + ["tape"], default=None,
                   help="which campaign to run (omit for an empty campaign)")
    p.add_argument("--runs", type=int, default=200)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("presets", help="list built-in scenarios")
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (ScenarioError, TraceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return SCHEMA
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return SCHEMA


if __name__ == "__main__":
    sys.exit(main())
