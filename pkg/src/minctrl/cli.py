"""Command-line interface: solve / trajectory / refrigerator / availability / verify.

Output is a single JSON record per invocation (CSV for tabular data on
request), with fixed field order and no timestamps so identical invocations
produce byte-identical output.  Exit codes: 0 ok, 2 invalid input, 3 no
extremal exists, 4 verification failure.

Defaults may be overridden by a key = value config file named by the
MINCTRL_CONFIG environment variable; explicit flags win over the file.
Recognized keys: scan_points, root_tol, n_max, residual_tol, step.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from .dynamics import (
    START,
    ControlBounds,
    PhasePoint,
    TargetCurve,
    curve_residual,
    energy_ratio,
    propagate_arc,
)
from .oracle import (
    GridSearchSpec,
    IntegratorConfig,
    NotReached,
    grid_search_min_time,
    verify_solution,
)
from .solver import (
    ExtremalSolution,
    NoExtremalFound,
    SolverConfig,
    ValidationFailure,
    minimize,
)
from . import thermo

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NO_EXTREMAL = 3
EXIT_VERIFY_FAILED = 4

TRAJECTORY_HEADER = ("t", "x1", "x2", "u", "E_over_E0")


def _load_config_file() -> dict:
    path = os.environ.get("MINCTRL_CONFIG")
    if not path:
        return {}
    values = {}
    try:
        with open(path) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"malformed config line: {line!r}")
                key, _, raw = line.partition("=")
                values[key.strip()] = raw.strip()
    except OSError as exc:
        raise ValueError(f"cannot read MINCTRL_CONFIG file {path!r}: {exc}") from exc
    return values


def _solver_config(args, file_cfg: dict) -> SolverConfig:
    def pick(flag, key, cast, default):
        if flag is not None:
            return flag
        if key in file_cfg:
            return cast(file_cfg[key])
        return default

    base = SolverConfig()
    return SolverConfig(
        scan_points=pick(args.scan_points, "scan_points", int, base.scan_points),
        root_tol=pick(None, "root_tol", float, base.root_tol),
        n_max=pick(args.nmax, "n_max", int, base.n_max),
        residual_tol=pick(None, "residual_tol", float, base.residual_tol),
    )


def _solution_record(sol: ExtremalSolution) -> dict:
    return {
        "label": sol.label,
        "branch": sol.family.sign_label,
        "switchings": sol.family.switchings,
        "n_turns": sol.family.n,
        "root_index": sol.root_index,
        "s": sol.s,
        "total_time": sol.total_time,
        "tau_first": sol.tau_first,
        "tau_x": sol.tau_x,
        "tau_y": sol.tau_y,
        "tau_final": sol.tau_final,
        "tangential_arrival": sol.tangential,
        "final_point": {"x1": sol.final_point.x1, "x2": sol.final_point.x2},
        "schedule": {
            "u_before": sol.schedule.u_before,
            "segments": [{"u": u, "dt": dt} for u, dt in sol.schedule.segments],
            "u_after": sol.schedule.u_after,
        },
    }


def _emit(record: dict, args, csv_rows=None, csv_header=None) -> None:
    if args.format == "csv" and csv_rows is not None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(csv_header)
        writer.writerows(csv_rows)
        text = buf.getvalue()
    else:
        text = json.dumps(record, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _candidate_csv(candidates) -> list[list]:
    return [[c["label"], c["switchings"], c["branch"], c["root_index"], c["s"],
             c["total_time"]] for c in candidates]


def cmd_solve(args, file_cfg) -> int:
    bounds = ControlBounds(args.gamma)
    curve = TargetCurve.for_bounds(args.re, bounds)
    config = _solver_config(args, file_cfg)
    best, table = minimize(curve, bounds, config)
    candidates = [_solution_record(s) for s in table]
    record = {
        "command": "solve",
        "inputs": {"gamma": args.gamma, "r_E": args.re,
                   "n_max": config.n_max, "scan_points": config.scan_points},
        "results": {
            "minimum": _solution_record(best),
            "candidates": candidates,
        },
        "diagnostics": {
            "re_interval": list(bounds.re_interval()),
            "n_candidates": len(candidates),
        },
    }
    _emit(record, args, _candidate_csv(candidates),
          ("label", "switchings", "branch", "root_index", "s", "total_time"))
    return EXIT_OK


def _sample_trajectory(best: ExtremalSolution, samples: int):
    """Uniform-in-time samples; the control column honors the boundary jumps."""
    schedule = best.schedule
    total = best.total_time
    rows = []
    for i in range(samples):
        t = total * i / (samples - 1)
        p = START
        remaining = t
        u_now = schedule.segments[0][0]
        for u, dt in schedule.segments:
            u_now = u
            if remaining <= dt:
                p = propagate_arc(p, u, remaining)
                break
            p = propagate_arc(p, u, dt)
            remaining -= dt
        if i == 0 and schedule.u_before is not None:
            u_now = schedule.u_before
        if i == samples - 1 and schedule.u_after is not None:
            u_now = schedule.u_after
        rows.append((t, p.x1, p.x2, u_now, energy_ratio(p, u_now)))
    return rows


def cmd_trajectory(args, file_cfg) -> int:
    if args.samples < 2:
        raise ValueError(f"samples must be >= 2, got {args.samples}")
    bounds = ControlBounds(args.gamma)
    curve = TargetCurve.for_bounds(args.re, bounds)
    config = _solver_config(args, file_cfg)
    best, _ = minimize(curve, bounds, config)
    rows = _sample_trajectory(best, args.samples)
    record = {
        "command": "trajectory",
        "inputs": {"gamma": args.gamma, "r_E": args.re, "samples": args.samples},
        "results": {
            "minimum": _solution_record(best),
            "columns": list(TRAJECTORY_HEADER),
            "rows": [list(r) for r in rows],
        },
        "diagnostics": {
            "final_curve_residual": curve_residual(PhasePoint(rows[-1][1], rows[-1][2]), curve),
        },
    }
    _emit(record, args, rows, TRAJECTORY_HEADER)
    return EXIT_OK


def cmd_refrigerator(args, file_cfg) -> int:
    spec = thermo.OttoSpec(omega_ratio=args.omega_ratio, tc=args.tc, th=args.th)
    config = _solver_config(args, file_cfg)
    result = thermo.refrigerator_min_driving_time(spec, config)
    record = {
        "command": "refrigerator",
        "inputs": {"omega_ratio": args.omega_ratio, "tc": args.tc, "th": args.th},
        "results": {
            "classification": result.classification,
            "energies": {
                "E_A": result.energies.ea,
                "E_C": result.energies.ec,
                "E_D_min": result.energies.ed_min,
                "E_D_sc": result.energies.ed_sc,
            },
            "r_E": result.r_e,
            "min_driving_time": None if math.isinf(result.min_time) else result.min_time,
            "minimum": _solution_record(result.solution) if result.solution else None,
        },
        "diagnostics": {"gamma": spec.gamma},
    }
    _emit(record, args)
    return EXIT_OK


def _parse_sweep(text: str) -> list[float]:
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError as exc:
        raise ValueError(f"--sweep expects A:B:N, got {text!r}") from exc
    if n < 2 or not (0.0 < a < b):
        raise ValueError(f"--sweep needs 0 < A < B and N >= 2, got {text!r}")
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def cmd_availability(args, file_cfg) -> int:
    if args.sweep is None and args.ed_ratio is None:
        raise ValueError("availability requires --ed-ratio or --sweep A:B:N")
    config = _solver_config(args, file_cfg)
    ratios = _parse_sweep(args.sweep) if args.sweep else [args.ed_ratio]
    points = []
    for ed in ratios:
        best = thermo.availability_min_time(thermo.AvailabilityQuery(args.gamma, ed), config)
        points.append({
            "ed_ratio": ed,
            "r_E": 1.0 / ed,
            "min_time": best.total_time,
            "family": best.label,
            "work_fraction": 1.0 - ed,  # (E_C - E_D)/E_C
        })
    record = {
        "command": "availability",
        "inputs": {"gamma": args.gamma, "ed_ratio": args.ed_ratio, "sweep": args.sweep},
        "results": {"points": points},
        "diagnostics": {"n_points": len(points)},
    }
    _emit(record, args,
          [[p["ed_ratio"], p["r_E"], p["min_time"], p["family"], p["work_fraction"]]
           for p in points],
          ("ed_ratio", "r_E", "min_time", "family", "work_fraction"))
    return EXIT_OK


def cmd_verify(args, file_cfg) -> int:
    bounds = ControlBounds(args.gamma)
    curve = TargetCurve.for_bounds(args.re, bounds)
    config = _solver_config(args, file_cfg)
    step = args.step if args.step is not None else float(file_cfg.get("step", 1e-4))
    cfg = IntegratorConfig(step=step)
    best, _ = minimize(curve, bounds, config)
    report = verify_solution(best, curve, bounds, cfg)
    grid_block = None
    ok = report.passed
    if args.grid is not None:
        spec = GridSearchSpec(n_switchings=args.grid,
                              per_arc_grid=args.grid_points,
                              time_horizon=args.horizon if args.horizon is not None
                              else 2.0 * best.total_time)
        result = grid_search_min_time(curve, bounds, spec, config)
        resolution = spec.time_horizon / spec.per_arc_grid
        lower_ok = result.min_time >= best.total_time - 1e-9
        close_ok = result.min_time - best.total_time <= max(args.grid_tol, resolution)
        grid_block = {
            "n_switchings": spec.n_switchings,
            "grid_min_time": result.min_time,
            "analytic_min_time": best.total_time,
            "difference": result.min_time - best.total_time,
            "lattice_points": result.n_evaluated,
            "lower_bound_ok": lower_ok,
            "agreement_ok": close_ok,
        }
        ok = ok and lower_ok and close_ok
    record = {
        "command": "verify",
        "inputs": {"gamma": args.gamma, "r_E": args.re, "step": step, "grid": args.grid},
        "results": {
            "passed": ok,
            "minimum": _solution_record(best),
            "report": {
                "endpoint_residual_closed": report.endpoint_residual_closed,
                "endpoint_residual_rk4": report.endpoint_residual_rk4,
                "max_switch_ratio_error": report.max_switch_ratio_error,
                "switch_signs_ok": report.switch_signs_ok,
                "formula_consistency_error": report.formula_consistency_error,
                "casimir_drift": report.casimir_drift,
                "endpoint_energy_error": report.endpoint_energy_error,
                "failures": list(report.failures),
            },
            "grid_search": grid_block,
        },
        "diagnostics": {"tolerances": report.tolerances},
    }
    _emit(record, args)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minctrl",
        description="Minimum-time bang-bang frequency control of a parametric oscillator.")
    sub = parser.add_subparsers(dest="command", required=True)

    def shared(p, need_curve=True):
        if need_curve:
            p.add_argument("--gamma", type=float, required=True,
                           help="frequency ratio sqrt(omega_0/omega_f) > 1")
            p.add_argument("--re", type=float, required=True,
                           help="energy ratio E0/Ef defining the target curve")
        p.add_argument("--nmax", type=int, default=None, help="largest turn count enumerated")
        p.add_argument("--scan-points", type=int, default=None, dest="scan_points",
                       help="root-scan grid density")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", type=str, default=None, help="write output to this path")

    p = sub.add_parser("solve", help="minimal schedule and full candidate table")
    shared(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("trajectory", help="sampled optimal trajectory (t,x1,x2,u,E_over_E0)")
    shared(p)
    p.add_argument("--samples", type=int, default=201)
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("refrigerator", help="minimum driving time of the Otto refrigerator")
    shared(p, need_curve=False)
    p.add_argument("--omega-ratio", type=float, required=True, dest="omega_ratio",
                   help="omega_h/omega_c > 1")
    p.add_argument("--tc", type=float, required=True,
                   help="cold temperature, units hbar*omega_h/(2 kB)")
    p.add_argument("--th", type=float, required=True,
                   help="hot temperature, units hbar*omega_h/(2 kB)")
    p.set_defaults(func=cmd_refrigerator)

    p = sub.add_parser("availability", help="minimum time for a target energy fraction")
    shared(p, need_curve=False)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--ed-ratio", type=float, default=None, dest="ed_ratio",
                   help="target E_D/E_C (= 1/r_E)")
    p.add_argument("--sweep", type=str, default=None, help="A:B:N sweep of --ed-ratio")
    p.set_defaults(func=cmd_availability)

    p = sub.add_parser("verify", help="cross-check the solution with the RK4/grid oracle")
    shared(p)
    p.add_argument("--grid", type=int, default=None,
                   help="also grid-search schedules with this many switchings")
    p.add_argument("--grid-points", type=int, default=400, dest="grid_points")
    p.add_argument("--horizon", type=float, default=None,
                   help="grid-search time horizon (default: 2x analytic minimum)")
    p.add_argument("--grid-tol", type=float, default=1e-2, dest="grid_tol",
                   help="allowed excess of the grid time over the analytic minimum")
    p.add_argument("--step", type=float, default=None, help="RK4 step")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        file_cfg = _load_config_file()
        return args.func(args, file_cfg)
    except (ValueError, NotReached) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NoExtremalFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_EXTREMAL
    except ValidationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
