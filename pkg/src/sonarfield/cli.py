"""Command-line entry point.

Subcommands: ``evaluate``, ``sweep``, ``validate``, ``optimize`` and
``derive``. Results go to standard output or to the requested files;
diagnostics go to standard error. Exit codes: 0 success, 1 validation
error, 2 numerical failure. The environment variable SONARFIELD_THREADS
caps worker parallelism inside the optimizer (default: machine
parallelism).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .detection import MonteCarloSpec
from .optimizer import DEConfig, PlacementProblem, optimize
from .scenario_io import (
    ScenarioValidationError,
    SweepSpec,
    derived_constants,
    emit_sweep_csv,
    evaluation_report,
    load_scenario,
)


class NumericalFailure(RuntimeError):
    """A computation produced a non-finite result."""


def _check_finite(report: dict):
    def walk(value):
        if isinstance(value, dict):
            for v in value.values():
                walk(v)
        elif isinstance(value, list):
            for v in value:
                walk(v)
        elif isinstance(value, float) and not math.isfinite(value):
            raise NumericalFailure(f"non-finite value in results: {value!r}")

    walk(report)


def _emit(report: dict):
    _check_finite(report)
    print(json.dumps(report, indent=2))


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo_text, hi_text = text.split(":", 1)
        return float(lo_text), float(hi_text)
    except ValueError as exc:
        raise ScenarioValidationError(
            f"--range: expected lo:hi numbers, got {text!r}"
        ) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sonarfield",
        description="Passive-sonar coverage evaluation and sensor placement.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("evaluate", help="compute the system detection probability")
    p_eval.add_argument("scenario", help="scenario JSON file")

    p_sweep = sub.add_parser("sweep", help="sweep one parameter and write a CSV")
    p_sweep.add_argument("scenario")
    p_sweep.add_argument("--param", required=True, help="R, ssl_db, nsl_db or R2")
    p_sweep.add_argument("--range", dest="range_", required=True, metavar="LO:HI")
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--out", required=True, help="output CSV path")

    p_val = sub.add_parser("validate", help="cross-check quadrature against Monte Carlo")
    p_val.add_argument("scenario")
    p_val.add_argument("--samples", type=int, default=None)
    p_val.add_argument("--seed", type=int, default=None)

    p_opt = sub.add_parser("optimize", help="search sensor placements")
    p_opt.add_argument("scenario")
    p_opt.add_argument("--out", default=None, help="write the result JSON here")

    p_der = sub.add_parser("derive", help="print the derived sonar constants")
    p_der.add_argument("scenario")

    return parser


def _cmd_evaluate(args) -> int:
    _emit(evaluation_report(load_scenario(args.scenario)))
    return 0


def _cmd_sweep(args) -> int:
    scenario = load_scenario(args.scenario)
    lo, hi = _parse_range(args.range_)
    sweep = SweepSpec(args.param, lo, hi, args.steps)
    emit_sweep_csv(scenario, sweep, args.out)
    print(f"wrote {args.steps} rows to {args.out}", file=sys.stderr)
    return 0


def _cmd_validate(args) -> int:
    scenario = load_scenario(args.scenario)
    mc = scenario.monte_carlo
    if args.samples is not None:
        mc = MonteCarloSpec(samples=args.samples, seed=mc.seed)
    if args.seed is not None:
        mc = MonteCarloSpec(samples=mc.samples, seed=args.seed)
    _emit(evaluation_report(scenario, include_mc=True, mc=mc))
    return 0


def _cmd_optimize(args) -> int:
    scenario = load_scenario(args.scenario)
    settings = scenario.optimize
    if settings is not None and not settings.enabled:
        raise ScenarioValidationError(
            f"{args.scenario}: optimize.enabled is false in this scenario"
        )
    movable = settings.movable_count if settings is not None else None
    config = settings.de if settings is not None else DEConfig()
    problem = PlacementProblem(scenario, movable_count=movable)
    result = optimize(problem, config)
    best = problem.scenario_with(result.best_vector)
    report = evaluation_report(best, placement=result)
    if args.out:
        _check_finite(report)
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
        print(f"wrote result to {args.out}", file=sys.stderr)
    else:
        _emit(report)
    return 0


def _cmd_derive(args) -> int:
    report = derived_constants(load_scenario(args.scenario))
    _check_finite(report)
    print(json.dumps(report, indent=2))
    return 0


_COMMANDS = {
    "evaluate": _cmd_evaluate,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
    "optimize": _cmd_optimize,
    "derive": _cmd_derive,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits on its own; map usage errors to our validation code.
        return 0 if exc.code in (0, None) else 1
    try:
        return _COMMANDS[args.command](args)
    except (ScenarioValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
