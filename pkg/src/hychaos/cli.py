"""Command-line front end.

Verbs:
  check            run selected property checkers on every configured system
  verify-theorems  run the equivalence harness battery
  witness          emit only the constructed periodic-set witnesses

Exit codes: 0 all decided checks consistent, 1 usage/config error, 2 some
equivalence disagreement.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import BatteryConfig, ConfigError, PROPERTY_CHECKS, load_config
from .equivalence import EQUIVALENCE_CHECKS
from .report import EXIT_USAGE, emit_report, run_battery, run_witnesses


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hychaos",
        description="witness-carrying chaos checkers for dynamical systems "
        "and their hyperspaces",
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in ("check", "verify-theorems", "witness"):
        p = sub.add_parser(verb)
        p.add_argument("--config", required=True, help="battery config (JSON)")
        p.add_argument("--format", choices=("human", "machine"), default="human")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--level", type=int, default=None, help="cylinder level budget")
        p.add_argument("--horizon", type=int, default=None, help="step budget")
        p.add_argument("--kmax", type=int, default=None, help="invariant exponent bound")
        p.add_argument("--cap", type=int, default=None, help="powerset size cap")
        p.add_argument("--seed", type=int, default=None, help="seed for randomized suites")
        if verb == "check":
            p.add_argument(
                "--properties",
                default=None,
                help="comma-separated property list (default: all)",
            )
    return parser


def _apply_overrides(config: BatteryConfig, args) -> BatteryConfig:
    budgets = config.budgets
    if args.level is not None:
        budgets = replace(budgets, level=args.level)
    if args.horizon is not None:
        budgets = replace(budgets, horizon=args.horizon)
    if args.kmax is not None:
        budgets = replace(budgets, k_max=args.kmax)
    if args.cap is not None:
        budgets = replace(budgets, powerset_cap=args.cap)
    config = replace(config, budgets=budgets)
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    return config


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        config = _apply_overrides(config, args)
        if args.verb == "check":
            if args.properties:
                checks = tuple(p.strip() for p in args.properties.split(",") if p.strip())
                for check in checks:
                    if check not in PROPERTY_CHECKS and check != "classify":
                        raise ConfigError(f"unknown property {check!r}")
            else:
                checks = PROPERTY_CHECKS
            config = replace(config, checks=checks)
            report = run_battery(config)
        elif args.verb == "verify-theorems":
            config = replace(
                config,
                checks=tuple(c for c in config.checks if c in EQUIVALENCE_CHECKS)
                or tuple(EQUIVALENCE_CHECKS),
            )
            report = run_battery(config)
        else:
            report = run_witnesses(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    text = emit_report(report, args.format)
    out_path = args.out or config.output
    if out_path:
        try:
            with open(out_path, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            print(f"cannot write report: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return report.exit_code()


if __name__ == "__main__":
    raise SystemExit(main())
