"""Command-line interface.

Subcommands:

  evaluate    full QoS + cost report for one design
  optimize    run one search algorithm, write the run artifact
  compare     multi-seed comparison across algorithms
  coverage    coverage statistics only, for one design
  linkbudget  interference/rate analytics at one altitude

Exit codes: 0 success, 2 parameter error, 3 geometric or capacity
infeasibility, 4 IO failure. Numeric output is printed with repr, i.e.
full-precision decimal text.
"""
from __future__ import annotations

import argparse
import math
import sys

from .config import (PROFILES, ExperimentConfig, apply_profile, load_config,
                     serialize_config)
from .coverage import coverage_ratio_timeline, footprint_geometry
from .errors import (CapacityError, ConstellationError, GeometryError,
                     ParameterError)
from .evaluator import evaluate_design
from .geo import ConstellationGeometry, WalkerConfig
from .link import capacity_result
from .optim import ALGORITHM_KINDS, DesignVector
from .runner import (compare_trials, format_items, result_items,
                     run_experiment, write_evaluation_artifact)

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4


def _parse_design(text: str) -> DesignVector:
    """Parse 'h_km,planes,sats_per_plane,inclination_deg'."""
    parts = text.split(",")
    if len(parts) != 4:
        raise ParameterError(
            f"design must be 'h_km,planes,sats,inclination_deg', got {text!r}")
    h_km, planes, sats, inc_deg = (float(p) for p in parts)
    return DesignVector(altitude_m=h_km * 1e3, planes=planes,
                        sats_per_plane=sats,
                        inclination_rad=math.radians(inc_deg))


def _load_configuration(args) -> ExperimentConfig:
    config = ExperimentConfig()
    if args.profile:
        config = apply_profile(config, args.profile)
    if args.config:
        try:
            config = load_config(args.config, base=config)
        except OSError as exc:
            raise ConstellationError(
                f"cannot read config file {args.config}: {exc}") from exc
    return config


def _cmd_evaluate(args) -> int:
    config = _load_configuration(args)
    design = _parse_design(args.design)
    report = evaluate_design(config, design)
    print(format_items(report.to_items()), end="")
    if args.out:
        write_evaluation_artifact(config, report, args.out)
        print(f"# artifact written to {args.out}")
    return EXIT_OK


def _cmd_optimize(args) -> int:
    config = _load_configuration(args)
    artifact = run_experiment(config, args.algorithm, seed=args.seed,
                              out_dir=args.out)
    items = result_items(artifact.result)
    items.append(("wall_clock_s", artifact.wall_clock_s))
    print(format_items(items), end="")
    if artifact.out_dir is not None:
        print(f"# artifact written to {artifact.out_dir}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    config = _load_configuration(args)
    kinds = [k.strip() for k in args.algorithms.split(",") if k.strip()]
    seeds = [int(s) for s in args.seeds.split(",")] if args.seeds \
        else list(config.run_seeds)
    comparison = compare_trials(config, kinds, seeds, out_dir=args.out,
                                equalize_budget=args.equalize_budget)
    for row in comparison.rows:
        print(f"{row.algorithm}: mean_final_cost={row.mean_final_cost!r} "
              f"std={row.std_final_cost!r} feasible_rate={row.feasible_rate!r} "
              f"mean_evaluations={row.mean_evaluations!r} "
              f"wins_vs_first={row.wins_vs_first} "
              f"losses_vs_first={row.losses_vs_first}")
    return EXIT_OK


def _cmd_coverage(args) -> int:
    config = _load_configuration(args)
    design = _parse_design(args.design)
    walker = WalkerConfig(
        sats_per_plane=design.rounded_sats, planes=design.rounded_planes,
        phase_factor=config.walker_phase_factor,
        altitude_m=design.altitude_m, inclination_rad=design.inclination_rad)
    constellation = ConstellationGeometry.from_walker(walker)
    theta_min = config.min_elevation_rad(design.altitude_m)
    footprint = footprint_geometry(design.altitude_m, theta_min)
    report = coverage_ratio_timeline(constellation, config.grid_spec(),
                                     config.timeline(), footprint)
    items = [
        ("coverage.eta_min", report.eta_min),
        ("coverage.eta_mean", report.mean_eta),
        ("coverage.min_visible", report.min_visible_count),
        ("footprint.theta_min_deg", math.degrees(theta_min)),
        ("footprint.phi_max_deg", math.degrees(footprint.phi_max_rad)),
        ("footprint.area_km2", footprint.area_m2 / 1e6),
        ("grid.points", config.grid_spec().point_count),
        ("time.slots", config.timeline().slot_count),
    ]
    print(format_items(items), end="")
    return EXIT_OK


def _cmd_linkbudget(args) -> int:
    config = _load_configuration(args)
    altitude_m = args.h_km * 1e3
    env = config.link_environment(altitude_m)
    cap = capacity_result(env, config.qos_capacity_th_bps, n_serving=1.0)
    items = [
        ("link.altitude_km", args.h_km),
        ("link.min_elevation_deg", math.degrees(env.min_elevation_rad)),
        ("link.mean_interference_w", cap.mean_interference_w),
        ("link.psi_m2", cap.psi_m2),
        ("link.xi_bits_per_hz", cap.xi_bits_per_hz),
        ("link.mean_rate_bps", cap.mean_rate_bps),
        ("link.required_count", cap.required_count),
    ]
    print(format_items(items), end="")
    return EXIT_OK


def _cmd_showconfig(args) -> int:
    config = _load_configuration(args)
    print(serialize_config(config), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leoconst",
        description="LEO constellation design toolkit: coverage, link "
                    "analytics, cost, and constrained design search.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="path to a key = value config file")
        p.add_argument("--profile", choices=PROFILES, default="paper",
                       help="fidelity profile applied before the config file")

    p_eval = sub.add_parser("evaluate", help="evaluate one design")
    common(p_eval)
    p_eval.add_argument("--design", default="1589,6,8,41",
                        help="h_km,planes,sats_per_plane,inclination_deg")
    p_eval.add_argument("--out", help="write the evaluation artifact here")
    p_eval.set_defaults(func=_cmd_evaluate)

    p_opt = sub.add_parser("optimize", help="run one search algorithm")
    common(p_opt)
    p_opt.add_argument("--algorithm", choices=ALGORITHM_KINDS,
                       default="improved")
    p_opt.add_argument("--seed", type=int, default=None)
    p_opt.add_argument("--out", help="directory for run artifacts")
    p_opt.set_defaults(func=_cmd_optimize)

    p_cmp = sub.add_parser("compare", help="multi-seed algorithm comparison")
    common(p_cmp)
    p_cmp.add_argument("--algorithms", default="improved,classical-ga")
    p_cmp.add_argument("--seeds", default="",
                       help="comma-separated seeds (default: run.seeds)")
    p_cmp.add_argument("--out", help="directory for comparison files")
    p_cmp.add_argument("--equalize-budget", action="store_true",
                       help="give baselines the improved GA's evaluator-call "
                            "budget")
    p_cmp.set_defaults(func=_cmd_compare)

    p_cov = sub.add_parser("coverage", help="coverage statistics for a design")
    common(p_cov)
    p_cov.add_argument("--design", default="1589,6,8,41")
    p_cov.set_defaults(func=_cmd_coverage)

    p_link = sub.add_parser("linkbudget", help="link analytics at an altitude")
    common(p_link)
    p_link.add_argument("--h-km", type=float, default=1589.0)
    p_link.set_defaults(func=_cmd_linkbudget)

    p_cfg = sub.add_parser("showconfig", help="print the effective config")
    common(p_cfg)
    p_cfg.set_defaults(func=_cmd_showconfig)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except (GeometryError, CapacityError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ConstellationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
