"""Command-line interface.

Subcommands::

    optimize    <scenario> [--q Q] [--eps M] [--max-iters N] [--starts N]
                [--backtracking] [--out report.json] [--no-plot]
    sweep-power <scenario> --q 0,2,4,6 --pbm-dbm 0:5:40 --out sweep.csv
    case-study  <scenario> --q 0,2,4,6 --out case.csv
    heatmap     <scenario> [--q-num 4] [--q-den 0] [--res 2.5] [--y 0]
                --out gain.csv
    check       <scenario>

``<scenario>`` is a JSON file path or a bundled name (``fig3``, ``fig4``).
Unless ``--no-plot`` is given, commands that write a delimited output also
render a matching figure next to it (same stem, ``.png``).

Exit codes: 0 success, 2 scenario parse error, 3 validation error,
4 degenerate/antipodal geometry, 5 placement loop hit the iteration cap,
1 failed `check` or unexpected error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    BudgetExceededError,
    GeometryError,
    ScenarioParseError,
    UavIrsError,
    ValidationError,
)
from .experiments import (
    provenance_lines,
    report_to_dict,
    run_case_study,
    run_heatmap,
    run_power_sweep,
    run_single_optimize,
    write_heatmap_csv,
    write_report_json,
    write_table_csv,
)
from .optimizer import OptimizerParams
from .scenario import SweepSpec, resolve_scenario

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_GEOMETRY = 4
EXIT_NO_CONVERGENCE = 5


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _parse_power_list(text: str) -> tuple[float, ...]:
    """Either ``start:step:stop`` (inclusive) or a comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"expected start:step:stop, got {text!r}")
        try:
            start, step, stop = (float(p) for p in parts)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected numbers in {text!r}")
        if step <= 0:
            raise argparse.ArgumentTypeError("power step must be positive")
        values = []
        value = start
        while value <= stop + 1e-9:
            values.append(round(value, 12))
            value += step
        return tuple(values)
    return _parse_float_list(text)


def _figure_path(out: str | Path) -> Path:
    return Path(out).with_suffix(".png")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uavirs",
        description="SNR-optimal placement, rotation, and phase design for a "
        "UAV-mounted reflecting surface relay.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    opt = sub.add_parser("optimize", help="run the full optimization pipeline")
    opt.add_argument("scenario")
    opt.add_argument("--q", type=float, default=None, help="override the directivity factor")
    opt.add_argument("--eps", type=float, default=1e-4, help="movement stop tolerance, metres")
    opt.add_argument("--max-iters", type=int, default=100_000)
    opt.add_argument("--starts", type=int, default=9, help="number of starting points")
    opt.add_argument("--backtracking", action="store_true", help="adaptive step constant")
    opt.add_argument("--out", default=None, help="report JSON path (default: stdout)")
    opt.add_argument("--no-plot", action="store_true")

    sweep = sub.add_parser("sweep-power", help="optimized SNR versus transmit power")
    sweep.add_argument("scenario")
    sweep.add_argument("--q", type=_parse_float_list, default=(0.0, 2.0, 4.0, 6.0))
    sweep.add_argument(
        "--pbm-dbm",
        type=_parse_power_list,
        default=tuple(float(p) for p in range(0, 45, 5)),
        help="powers in dBm: start:step:stop or comma list",
    )
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--starts", type=int, default=9)
    sweep.add_argument("--no-plot", action="store_true")

    case = sub.add_parser("case-study", help="optimized center and boresight per q")
    case.add_argument("scenario")
    case.add_argument("--q", type=_parse_float_list, default=(0.0, 2.0, 4.0, 6.0))
    case.add_argument("--out", required=True)
    case.add_argument("--starts", type=int, default=9)
    case.add_argument("--no-plot", action="store_true")

    heat = sub.add_parser("heatmap", help="normalized gain over an x-z slice")
    heat.add_argument("scenario")
    heat.add_argument("--q-num", type=float, default=4.0)
    heat.add_argument("--q-den", type=float, default=0.0)
    heat.add_argument("--res", type=float, default=2.5, help="lattice resolution, metres")
    heat.add_argument("--y", type=float, default=0.0, help="fixed y of the slice, metres")
    heat.add_argument("--out", required=True)
    heat.add_argument("--no-plot", action="store_true")

    chk = sub.add_parser("check", help="run the oracle invariant suite")
    chk.add_argument("scenario")

    return parser


def _cmd_optimize(args: argparse.Namespace) -> int:
    scenario = resolve_scenario(args.scenario)
    if args.q is not None:
        scenario = scenario.with_q(args.q)
    params = OptimizerParams(
        epsilon=args.eps, max_iters=args.max_iters, backtracking=args.backtracking
    )
    report = run_single_optimize(scenario, params, n_starts=args.starts)
    run_params = {
        "command": "optimize",
        "epsilon": args.eps,
        "max_iters": args.max_iters,
        "starts": args.starts,
        "backtracking": args.backtracking,
    }
    payload = report_to_dict(report, scenario, run_params)
    if args.out is None:
        print(json.dumps(payload, indent=2))
    else:
        write_report_json(args.out, payload)
        if not args.no_plot:
            from .plots import save_trajectory_plot

            save_trajectory_plot(report, scenario, _figure_path(args.out))
        print(f"wrote {args.out}")
    if not report.converged:
        print(
            f"placement loop hit the {args.max_iters}-iteration cap before "
            f"moving less than {args.eps} m",
            file=sys.stderr,
        )
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def _cmd_sweep_power(args: argparse.Namespace) -> int:
    scenario = resolve_scenario(args.scenario)
    spec = SweepSpec(kind="power_sweep", q_list=args.q, power_list_dbm=args.pbm_dbm)
    table = run_power_sweep(scenario, spec, n_starts=args.starts)
    header = provenance_lines(
        scenario,
        {
            "command": "sweep-power",
            "q": list(spec.q_list),
            "p_b_dbm": list(spec.power_list_dbm),
            "starts": args.starts,
        },
    )
    write_table_csv(args.out, table, header)
    if not args.no_plot:
        from .plots import save_power_sweep_plot

        save_power_sweep_plot(table, _figure_path(args.out))
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_case_study(args: argparse.Namespace) -> int:
    scenario = resolve_scenario(args.scenario)
    spec = SweepSpec(kind="case_study", q_list=args.q)
    table = run_case_study(scenario, spec, n_starts=args.starts)
    header = provenance_lines(
        scenario,
        {"command": "case-study", "q": list(spec.q_list), "starts": args.starts},
    )
    write_table_csv(args.out, table, header)
    if not args.no_plot:
        from .plots import save_case_study_plot

        save_case_study_plot(table, scenario, _figure_path(args.out))
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_heatmap(args: argparse.Namespace) -> int:
    scenario = resolve_scenario(args.scenario)
    spec = SweepSpec(
        kind="heatmap",
        q_list=(args.q_num, args.q_den),
        heatmap_resolution=args.res,
        heatmap_plane=args.y,
    )
    grid = run_heatmap(scenario, spec)
    header = provenance_lines(
        scenario,
        {
            "command": "heatmap",
            "q_num": args.q_num,
            "q_den": args.q_den,
            "resolution": args.res,
            "y": args.y,
        },
    )
    write_heatmap_csv(args.out, grid, header)
    if not args.no_plot:
        from .plots import save_heatmap_plot

        save_heatmap_plot(grid, scenario, _figure_path(args.out))
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    from .oracle import run_invariant_checks

    scenario = resolve_scenario(args.scenario)
    checks = run_invariant_checks(scenario)
    failed = 0
    for name, passed, detail in checks:
        status = "PASS" if passed else "FAIL"
        failed += 0 if passed else 1
        print(f"{status} {name}: {detail}")
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_FAILURE


_COMMANDS = {
    "optimize": _cmd_optimize,
    "sweep-power": _cmd_sweep_power,
    "case-study": _cmd_case_study,
    "heatmap": _cmd_heatmap,
    "check": _cmd_check,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ScenarioParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except UavIrsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
