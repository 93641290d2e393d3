"""Command-line surface.

Verbs: run / sweep / compare / validate. Exit codes: 0 ok, 2 usage,
3 invalid scenario, 4 runtime failure. Failures print one machine-parseable
line `error: <class>: <detail>` to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ScenarioError
from .oracle import DEFAULT_GRID_DELTA_M, sweep_argmax
from .report import RunReport, compare, render_comparison_csv, render_markdown
from .runner import run_simulation
from .scenario import load_scenario

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SCENARIO = 3
EXIT_RUNTIME = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sunwire",
        description="Deterministic solar-tracking wire robot simulator",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p_run = sub.add_parser("run", help="run a scenario, emit trace CSV and report JSON")
    p_run.add_argument("scenario", help="scenario file")
    p_run.add_argument("--out", default="runs", help="output directory (default: runs)")
    p_run.add_argument("--seed", type=int, default=None, help="override the scenario seed")

    p_sweep = sub.add_parser("sweep", help="brute-force argmax of the field at an instant")
    p_sweep.add_argument("scenario", help="scenario file")
    p_sweep.add_argument("--t", type=float, default=None,
                         help="instant in seconds (default: middle of daylight)")
    p_sweep.add_argument("--delta", type=float, default=DEFAULT_GRID_DELTA_M,
                         help="grid spacing in meters (default: 0.01)")

    p_cmp = sub.add_parser("compare", help="tabulate reports of one scenario family")
    p_cmp.add_argument("reports", nargs="+", help="report JSON files")
    p_cmp.add_argument("--format", choices=("md", "csv"), default="md")

    p_val = sub.add_parser("validate", help="check a scenario file")
    p_val.add_argument("scenario", help="scenario file")

    return parser


def _cmd_run(args) -> int:
    scenario = load_scenario(args.scenario)
    if args.seed is not None:
        scenario.seed = args.seed
        scenario.validate()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = f"{scenario.name}__{scenario.strategy}__s{scenario.seed}"
    trace_path = out_dir / f"{stem}.trace.csv"
    report_path = out_dir / f"{stem}.report.json"
    report, _records = run_simulation(scenario, trace_path=trace_path)
    report_path.write_text(report.to_json(), encoding="utf-8")
    print(
        f"ok: scenario={scenario.name} strategy={scenario.strategy} "
        f"trials={report.trials} g_best_w={report.final_g_best_w} "
        f"x_best_m={report.final_x_best_m} net_j={report.net_j} "
        f"distance_m={report.distance_m}"
    )
    print(f"trace: {trace_path}")
    print(f"report: {report_path}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    scenario = load_scenario(args.scenario)
    t = args.t
    if t is None:
        t = (scenario.envelope.sunrise_s + scenario.envelope.sunset_s) / 2.0
    result = sweep_argmax(scenario.build_field(), t, args.delta)
    print(f"x_star_m={result.x_star_m} p_star_w={result.p_star_w} "
          f"t_s={t} delta_m={result.grid_delta_m}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    reports = []
    for path in args.reports:
        reports.append(RunReport.from_json(Path(path).read_text(encoding="utf-8")))
    rows = compare(reports)
    if args.format == "csv":
        sys.stdout.write(render_comparison_csv(rows))
    else:
        sys.stdout.write(render_markdown(rows))
    return EXIT_OK


def _cmd_validate(args) -> int:
    scenario = load_scenario(args.scenario)
    print(f"ok: {scenario.name} (strategy={scenario.strategy}, "
          f"duration_s={scenario.duration_s})")
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.verb](args)
    except ScenarioError as exc:
        print(f"error: scenario-invalid: {exc}", file=sys.stderr)
        return EXIT_SCENARIO
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: runtime-failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
