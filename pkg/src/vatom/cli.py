"""Command line front end: simulate, figure, sweep, verify, events."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .oracle import (
    METHOD_RK4,
    METHOD_TRAPEZOID,
    OracleConfig,
    compare_closed_form,
    verification_cases,
)
from .scenarios import (
    FIGURES,
    detect_events,
    parse_scenario_file,
    parse_sweep_file,
    reproduce_figure,
    run_scenario,
    sweep,
    write_series_csv,
    write_sweep_csv,
)


def _cmd_simulate(args) -> int:
    scenario = parse_scenario_file(args.scenario)
    result = run_scenario(scenario)
    out = Path(args.out) if args.out else Path(args.scenario).with_suffix(".csv").name
    write_series_csv(result, out)
    print(f"wrote {len(result)} samples to {out}")
    return 0


def _cmd_events(args) -> int:
    scenario = parse_scenario_file(args.scenario)
    report = detect_events(run_scenario(scenario))
    payload = {
        "deaths": [{"t_enter": enter, "t_exit": exit_} for enter, exit_ in report.deaths],
        "births": [
            {"t_birth": b.t_birth, "peak_value": b.peak_value, "t_peak": b.t_peak}
            for b in report.births
        ],
        "steady_value": report.steady_value,
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_figure(args) -> int:
    paths = reproduce_figure(args.id, args.out)
    for path in paths:
        print(path)
    return 0


def _cmd_sweep(args) -> int:
    base, axes = parse_sweep_file(args.spec)
    rows = sweep(base, axes)
    out = Path(args.out) if args.out else Path(args.spec).with_suffix(".csv").name
    write_sweep_csv(rows, out)
    print(f"wrote {len(rows)} rows to {out}")
    return 0


def _cmd_verify(args) -> int:
    cases = verification_cases()
    if args.quick:
        cases = [c for c in cases if c[2].delta in (0.0, 20.0) and c[2].theta in (0.0, 1.0)]
        cases = [(label, ini, params, min(horizon, 10.0)) for label, ini, params, horizon in cases]
    rk4_tol, trap_tol = 1e-6, 1e-4
    worst = {METHOD_RK4: (0.0, ""), METHOD_TRAPEZOID: (0.0, "")}
    failed = False
    for label, initial, params, horizon in cases:
        rk4 = compare_closed_form(
            initial, params, OracleConfig.for_params(params, horizon), tolerance=rk4_tol
        )
        # the history-summation method is O(N^2); check it on a short window
        trap = compare_closed_form(
            initial,
            params,
            OracleConfig.for_params(params, min(horizon, 10.0), METHOD_TRAPEZOID),
            tolerance=trap_tol,
        )
        for report in (rk4, trap):
            if report.max_abs_error > worst[report.method][0]:
                worst[report.method] = (report.max_abs_error, label)
            status = "ok" if report.passed else "FAIL"
            failed = failed or not report.passed
            print(
                f"{status:4s} {report.method:18s} {label:38s} "
                f"max err {report.max_abs_error:.3e} at t={report.worst_time:g}"
            )
    for method, (err, label) in worst.items():
        print(f"worst {method}: {err:.3e} ({label})")
    print("verification PASSED" if not failed else "verification FAILED")
    return 1 if failed else 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="vatom",
        description="Coherence dynamics of a V-type atom in a lossy cavity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a scenario file and write the CSV time series")
    p_sim.add_argument("scenario", help="scenario file (key = value text)")
    p_sim.add_argument("--out", help="output CSV path (default: scenario name with .csv)")
    p_sim.set_defaults(func=_cmd_simulate)

    p_ev = sub.add_parser("events", help="report coherence deaths/births for a scenario")
    p_ev.add_argument("scenario")
    p_ev.set_defaults(func=_cmd_events)

    p_fig = sub.add_parser("figure", help="emit CSVs and a plot script for a tabulated figure")
    p_fig.add_argument("id", help=f"one of: {', '.join(sorted(FIGURES))}")
    p_fig.add_argument("--out", default=".", help="output directory")
    p_fig.set_defaults(func=_cmd_figure)

    p_sw = sub.add_parser("sweep", help="run a parameter sweep file and write the summary table")
    p_sw.add_argument("spec", help="sweep file (scenario keys; swept axes take comma lists)")
    p_sw.add_argument("--out", help="output CSV path (default: spec name with .csv)")
    p_sw.set_defaults(func=_cmd_sweep)

    p_ver = sub.add_parser("verify", help="compare closed forms against the integrators")
    p_ver.add_argument("--quick", action="store_true", help="reduced grid and horizons")
    p_ver.set_defaults(func=_cmd_verify)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
