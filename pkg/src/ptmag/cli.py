"""Command-line entry point.

    ptmag run <config.json> [--out DIR]
    ptmag spectrum --g G [--r R] [--phi PHI] [--theta THETA]
                   [--delta-min LO] [--delta-max HI] [--steps N] --out FILE
    ptmag list-scenarios
    ptmag validate <config.json>

Exit codes: 0 success, 1 configuration or usage error, 2 numerical abort.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from math import pi
from pathlib import Path

from .dynamics import NumericalAbort
from .model import canonical_params
from .scenarios import (SCENARIO_DESCRIPTIONS, SCENARIOS, ConfigError,
                        echo_config, parse_config, run_scenario)
from .spectrum import (PHASE_DIAGRAM_COLUMNS, find_exceptional_points,
                       sweep_phase_diagram, write_phase_diagram_csv)


def _cmd_run(args) -> int:
    cfg = parse_config(args.config)
    if args.out is not None:
        cfg = replace(cfg, output_dir=args.out)
    report = run_scenario(cfg)
    print(f"scenario {report.name} finished in {report.runtime_s:.2f} s")
    for p in report.csv_paths:
        print(f"  wrote {p}")
    for key, val in report.summary.items():
        print(f"  {key}: {val}")
    return 0


def _cmd_spectrum(args) -> int:
    if args.delta_max <= args.delta_min:
        raise ConfigError("--delta-max must exceed --delta-min")
    if args.steps < 2:
        raise ConfigError("--steps must be at least 2")
    params = canonical_params(g_over_2pi=args.g, r_over_2pi=args.r,
                              phi=args.phi, theta=args.theta)
    points = sweep_phase_diagram(params, (args.g, args.g),
                                 (args.delta_min, args.delta_max),
                                 (1, args.steps))
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_phase_diagram_csv(points, str(out))
    print(f"wrote {out} ({len(points)} rows, columns: "
          f"{', '.join(PHASE_DIAGRAM_COLUMNS)})")
    eps = find_exceptional_points(params, (args.delta_min, args.delta_max))
    if eps:
        found = ", ".join(f"{e.delta_star:.4f}" for e in eps)
        print(f"exceptional points at delta = {found}")
    else:
        print("no exceptional points in range")
    return 0


def _cmd_list(_args) -> int:
    for name in SCENARIOS:
        print(f"{name:14s} {SCENARIO_DESCRIPTIONS[name]}")
    return 0


def _cmd_validate(args) -> int:
    cfg = parse_config(args.config)
    print(json.dumps(echo_config(cfg), indent=2))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptmag",
        description="Three-mode cavity-magnon simulator: spectra, "
                    "exceptional points, entanglement dynamics")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario from a JSON config")
    p_run.add_argument("config", help="path to a flat-key JSON config")
    p_run.add_argument("--out", default=None, help="override the output directory")
    p_run.set_defaults(fn=_cmd_run)

    p_spec = sub.add_parser("spectrum",
                            help="single-g eigenvalue sweep against detuning")
    p_spec.add_argument("--g", type=float, required=True,
                        help="coupling over 2 pi in MHz")
    p_spec.add_argument("--r", type=float, default=50.0)
    p_spec.add_argument("--phi", type=float, default=pi)
    p_spec.add_argument("--theta", type=float, default=1.1 * pi)
    p_spec.add_argument("--delta-min", type=float, default=-3.0)
    p_spec.add_argument("--delta-max", type=float, default=3.0)
    p_spec.add_argument("--steps", type=int, default=121)
    p_spec.add_argument("--out", required=True, help="output CSV path")
    p_spec.set_defaults(fn=_cmd_spectrum)

    p_list = sub.add_parser("list-scenarios", help="list scenario names")
    p_list.set_defaults(fn=_cmd_list)

    p_val = sub.add_parser("validate",
                           help="parse a config and print the full echo")
    p_val.add_argument("config")
    p_val.set_defaults(fn=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    except NumericalAbort as e:
        print(f"numerical abort: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
