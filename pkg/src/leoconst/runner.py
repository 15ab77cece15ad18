"""Experiment orchestration and on-disk artifacts.

A run writes three files into its own directory: the exact configuration
snapshot (config.txt), the per-iteration trace (trace.csv), and the final
result record (result.txt). Reruns from the snapshot and seed reproduce
the trace byte for byte. Multi-seed comparisons aggregate final costs and
per-iteration incumbent curves across algorithms sharing one evaluator
configuration.
"""
from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .config import ExperimentConfig, serialize_config
from .errors import ConstellationError, ParameterError
from .evaluator import DesignReport, make_evaluator
from .optim import (ALGORITHM_KINDS, OptimizationResult, TracePoint,
                    run_algorithm)

TRACE_HEADER = ("iteration", "best_cost", "incumbent_cost", "feasible_count",
                "eta_min_best", "nvis_min_best")


@dataclass
class RunArtifact:
    """Everything persisted for one optimization run."""

    config: ExperimentConfig
    algorithm: str
    seed: int
    result: OptimizationResult
    wall_clock_s: float
    out_dir: Path | None = None


def _write_trace(path: Path, trace: list[TracePoint]):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_HEADER)
        for point in trace:
            writer.writerow([
                point.iteration, repr(point.best_cost),
                repr(point.incumbent_cost), point.feasible_count,
                repr(point.eta_min_best), repr(point.nvis_min_best),
            ])


def result_items(result: OptimizationResult) -> list[tuple[str, object]]:
    d = result.best_design
    r = result.best_record
    return [
        ("algorithm", result.algorithm),
        ("seed", result.seed),
        ("feasible", result.feasible),
        ("evaluations", result.evaluations),
        ("best.cost", r.objective),
        ("best.altitude_km", d.altitude_m / 1e3),
        ("best.planes", d.rounded_planes),
        ("best.sats_per_plane", d.rounded_sats),
        ("best.inclination_deg", math.degrees(d.inclination_rad)),
        ("best.eta_min", r.eta_min),
        ("best.min_visible", r.min_visible),
        ("best.p1", r.p1),
        ("best.p2", r.p2),
    ]


def format_items(items: list[tuple[str, object]]) -> str:
    return "\n".join(f"{key} = {value!r}" for key, value in items) + "\n"


def run_experiment(config: ExperimentConfig, algorithm: str,
                   seed: int | None = None,
                   out_dir: str | Path | None = None) -> RunArtifact:
    """Run one optimizer and persist its artifact files.

    Raises ParameterError for unknown algorithms; IO errors carry the
    offending path.
    """
    if algorithm not in ALGORITHM_KINDS:
        raise ParameterError(
            f"unknown algorithm '{algorithm}'; expected one of {ALGORITHM_KINDS}")
    seed = config.opt_seed if seed is None else seed
    evaluator = make_evaluator(config)
    started = time.perf_counter()
    result = run_algorithm(algorithm, evaluator, config.bounds(),
                           config.optimizer_config(seed=seed))
    elapsed = time.perf_counter() - started

    artifact = RunArtifact(config=config, algorithm=algorithm, seed=seed,
                           result=result, wall_clock_s=elapsed)
    if out_dir is not None:
        run_dir = Path(out_dir) / f"{algorithm}_seed{seed}"
        try:
            run_dir.mkdir(parents=True, exist_ok=True)
            (run_dir / "config.txt").write_text(serialize_config(config),
                                                encoding="utf-8")
            _write_trace(run_dir / "trace.csv", result.trace)
            items = result_items(result) + [("wall_clock_s", elapsed)]
            (run_dir / "result.txt").write_text(format_items(items),
                                                encoding="utf-8")
        except OSError as exc:
            raise ConstellationError(
                f"failed writing run artifact under {run_dir}: {exc}") from exc
        artifact.out_dir = run_dir
    return artifact


def write_evaluation_artifact(config: ExperimentConfig, report: DesignReport,
                              path: str | Path):
    """Persist a single-design evaluation, recording any QoS shortfall
    against the configured thresholds explicitly."""
    items = list(report.to_items())
    items.append(("qos.eta_th", config.qos_eta_th))
    items.append(("qos.capacity_th_bps", config.qos_capacity_th_bps))
    if report.eta_min < config.qos_eta_th:
        items.append(("qos.note",
                      f"eta_min {report.eta_min!r} falls short of the "
                      f"threshold {config.qos_eta_th!r} under this profile"))
    if report.min_visible < report.required_count:
        items.append(("qos.note_capacity",
                      f"min visible count {report.min_visible} below the "
                      f"required {report.required_count!r}"))
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(format_items(items), encoding="utf-8")
    except OSError as exc:
        raise ConstellationError(
            f"failed writing evaluation artifact {path}: {exc}") from exc


@dataclass
class ComparisonRow:
    """Aggregate outcome of one algorithm across seeds."""

    algorithm: str
    seeds: int
    mean_final_cost: float
    std_final_cost: float
    feasible_rate: float
    mean_evaluations: float
    wins_vs_first: int
    losses_vs_first: int


@dataclass
class ComparisonResult:
    """Cross-algorithm comparison on an identical evaluator setup."""

    rows: list[ComparisonRow]
    # incumbent-cost curves: algorithm -> (iterations,) mean over seeds,
    # NaN where no seed had an incumbent yet.
    curves: dict[str, np.ndarray]
    results: dict[tuple[str, int], OptimizationResult]

    def row(self, algorithm: str) -> ComparisonRow:
        for r in self.rows:
            if r.algorithm == algorithm:
                return r
        raise KeyError(algorithm)


def _final_cost(result: OptimizationResult) -> float:
    return result.best_record.objective


def compare_trials(config: ExperimentConfig, kinds: list[str],
                   seeds: list[int], out_dir: str | Path | None = None,
                   equalize_budget: bool = False) -> ComparisonResult:
    """Run every (kind, seed) pair on an identical evaluator configuration.

    With equalize_budget, baseline iteration counts are scaled so each
    baseline consumes the same number of evaluator calls as the improved
    GA does at the configured settings (the improved GA evaluates two
    offspring populations per iteration, so its call count exceeds the
    nominal iterations x population budget).
    """
    if not kinds or not seeds:
        raise ParameterError("need at least one algorithm and one seed")

    base_opt = config.optimizer_config()
    improved_calls = base_opt.population_size * (2 * base_opt.iterations + 1)
    results: dict[tuple[str, int], OptimizationResult] = {}
    for kind in kinds:
        run_config = config
        if equalize_budget and kind != "improved":
            iterations = max(1, round(improved_calls / base_opt.population_size))
            run_config = replace(config, opt_iterations=iterations)
        for seed in seeds:
            artifact = run_experiment(run_config, kind, seed=seed,
                                      out_dir=out_dir)
            results[(kind, seed)] = artifact.result

    rows = []
    first_costs = [_final_cost(results[(kinds[0], s)]) for s in seeds]
    for kind in kinds:
        costs = [_final_cost(results[(kind, s)]) for s in seeds]
        rows.append(ComparisonRow(
            algorithm=kind,
            seeds=len(seeds),
            mean_final_cost=float(np.mean(costs)),
            std_final_cost=float(np.std(costs)),
            feasible_rate=float(np.mean(
                [results[(kind, s)].feasible for s in seeds])),
            mean_evaluations=float(np.mean(
                [results[(kind, s)].evaluations for s in seeds])),
            wins_vs_first=sum(1 for c, f in zip(costs, first_costs) if c < f),
            losses_vs_first=sum(1 for c, f in zip(costs, first_costs) if c > f),
        ))

    curves = {}
    for kind in kinds:
        traces = [results[(kind, s)].trace for s in seeds]
        length = max(len(t) for t in traces)
        stacked = np.full((len(seeds), length), np.nan)
        for i, t in enumerate(traces):
            stacked[i, :len(t)] = [p.incumbent_cost for p in t]
        defined = ~np.isnan(stacked)
        totals = np.where(defined, stacked, 0.0).sum(axis=0)
        counts = defined.sum(axis=0)
        curve = np.full(length, np.nan)
        np.divide(totals, counts, out=curve, where=counts > 0)
        curves[kind] = curve

    comparison = ComparisonResult(rows=rows, curves=curves, results=results)
    if out_dir is not None:
        _write_comparison(Path(out_dir), comparison)
    return comparison


def _write_comparison(out_dir: Path, comparison: ComparisonResult):
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        with open(out_dir / "comparison.csv", "w", newline="",
                  encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["algorithm", "seeds", "mean_final_cost",
                             "std_final_cost", "feasible_rate",
                             "mean_evaluations", "wins_vs_first",
                             "losses_vs_first"])
            for row in comparison.rows:
                writer.writerow([
                    row.algorithm, row.seeds, repr(row.mean_final_cost),
                    repr(row.std_final_cost), repr(row.feasible_rate),
                    repr(row.mean_evaluations), row.wins_vs_first,
                    row.losses_vs_first,
                ])
        with open(out_dir / "curves.csv", "w", newline="",
                  encoding="utf-8") as fh:
            writer = csv.writer(fh)
            kinds = list(comparison.curves)
            writer.writerow(["iteration"] + kinds)
            length = max(c.size for c in comparison.curves.values())
            for i in range(length):
                row = [i + 1]
                for kind in kinds:
                    curve = comparison.curves[kind]
                    row.append(repr(float(curve[i])) if i < curve.size else "")
                writer.writerow(row)
    except OSError as exc:
        raise ConstellationError(
            f"failed writing comparison files under {out_dir}: {exc}") from exc
