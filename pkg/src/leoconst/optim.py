"""Constellation design search: improved GA and five baseline metaheuristics.

The design vector is the real-coded chromosome [h, P, N, i_sat]; the
plane and per-plane counts stay real in the genome and are rounded to
integers at evaluation time. The improved GA couples best-guided convex
crossover, a dual-mode mutation whose character shifts from global
Gaussian steps to shrinking box steps as iterations advance, and elitist
selection over the union of parents, children, and mutants under the
adaptive satisfaction-product fitness. Baselines (classical GA, PSO, SCA,
GWO, tabu search) run on the classical fixed-penalty score with a total
budget of iterations x population evaluator calls.

Every optimizer maintains an incumbent archive of the best feasible
design ever evaluated, so the reported optimum never regresses regardless
of population dynamics. Runs are deterministic for a fixed seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import ParameterError
from .fitness import (EvaluationRecord, PopulationStats, adaptive_fitness,
                      classical_penalty, satisfaction_scores)

GENE_NAMES = ("altitude_m", "planes", "sats_per_plane", "inclination_rad")


@dataclass(frozen=True)
class DesignVector:
    """Real-coded chromosome [h, P, N, i_sat]; phase factor is fixed in
    configuration and not part of the genome."""

    altitude_m: float
    planes: float
    sats_per_plane: float
    inclination_rad: float

    def to_array(self) -> np.ndarray:
        return np.array([self.altitude_m, self.planes, self.sats_per_plane,
                         self.inclination_rad])

    @classmethod
    def from_array(cls, genes: np.ndarray) -> "DesignVector":
        return cls(altitude_m=float(genes[0]), planes=float(genes[1]),
                   sats_per_plane=float(genes[2]),
                   inclination_rad=float(genes[3]))

    @property
    def rounded_planes(self) -> int:
        return int(round(self.planes))

    @property
    def rounded_sats(self) -> int:
        return int(round(self.sats_per_plane))

    def quantized(self) -> "DesignVector":
        """Copy with the integer genes snapped to their rounded values."""
        return replace(self, planes=float(self.rounded_planes),
                       sats_per_plane=float(self.rounded_sats))


@dataclass(frozen=True)
class Bounds:
    """Componentwise search box for the design genes [h, P, N, i]."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.shape != (4,) or upper.shape != (4,):
            raise ParameterError("bounds must have four components [h, P, N, i]")
        if np.any(lower > upper):
            raise ParameterError(f"inverted bounds: lower={lower}, upper={upper}")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def span(self) -> np.ndarray:
        return self.upper - self.lower

    def clip(self, genes: np.ndarray) -> np.ndarray:
        return np.clip(genes, self.lower, self.upper)

    def contains(self, genes: np.ndarray, atol: float = 1e-9) -> bool:
        return bool(np.all(genes >= self.lower - atol)
                    and np.all(genes <= self.upper + atol))


@dataclass(frozen=True)
class OptimizerConfig:
    """Shared settings for all search algorithms.

    sigma defaults to sigma_scale times the box span per gene;
    parent_pool_size defaults to the population size.
    """

    population_size: int = 30
    iterations: int = 50
    mutation_threshold: float = 0.3
    alpha1: float = 2.0
    alpha2: float = 1.0
    sigma_scale: float = 0.1
    parent_pool_size: int | None = None
    rho1: float = 1000.0
    rho2: float = 1000.0
    seed: int = 1
    # Baseline-specific knobs (textbook defaults).
    pso_inertia_start: float = 0.9
    pso_inertia_end: float = 0.4
    pso_cognitive: float = 2.0
    pso_social: float = 2.0
    pso_vmax_scale: float = 0.5
    sca_amplitude: float = 2.0
    tabu_tenure: int = 12
    tabu_step_scale: float = 0.05
    tabu_max_steps: int = 3

    def __post_init__(self):
        if self.population_size < 2:
            raise ParameterError("population size must be at least 2")
        if self.iterations < 1:
            raise ParameterError("need at least one iteration")
        if not 0 <= self.mutation_threshold <= 1:
            raise ParameterError("mutation threshold outside [0, 1]")


@dataclass(frozen=True)
class TracePoint:
    """One row of the per-iteration optimization trace."""

    iteration: int
    best_cost: float
    incumbent_cost: float
    feasible_count: int
    eta_min_best: float
    nvis_min_best: float


@dataclass
class OptimizationResult:
    """Outcome of one optimizer run.

    best_design/best_record hold the incumbent (best feasible design ever
    evaluated) when one exists, otherwise the least-violating design and
    feasible is False.
    """

    algorithm: str
    seed: int
    best_design: DesignVector
    best_record: EvaluationRecord
    feasible: bool
    trace: list[TracePoint]
    evaluations: int

    @property
    def best_cost(self) -> float:
        return self.best_record.objective


Evaluator = Callable[[DesignVector], EvaluationRecord]


class _IncumbentArchive:
    """Best feasible record ever seen, plus the least-violating fallback."""

    def __init__(self):
        self.best: EvaluationRecord | None = None
        self.fallback: EvaluationRecord | None = None

    def observe(self, record: EvaluationRecord):
        if record.feasible:
            if self.best is None or record.objective < self.best.objective:
                self.best = record
        key = (record.total_violation, record.objective)
        if self.fallback is None or key < (self.fallback.total_violation,
                                           self.fallback.objective):
            self.fallback = record

    @property
    def incumbent_cost(self) -> float:
        return self.best.objective if self.best is not None else math.nan

    def result_record(self) -> tuple[EvaluationRecord, bool]:
        if self.best is not None:
            return self.best, True
        if self.fallback is None:
            raise ParameterError("archive observed no evaluations")
        return self.fallback, False


def initialize_population(bounds: Bounds, size: int,
                          rng: np.random.Generator) -> list[DesignVector]:
    """Uniform i.i.d. initial population inside the search box."""
    if size < 1:
        raise ParameterError("population size must be positive")
    genes = rng.uniform(bounds.lower, bounds.upper, size=(size, 4))
    return [DesignVector.from_array(g) for g in genes]


def best_guided_crossover(parent1: DesignVector, parent2: DesignVector,
                          best: DesignVector, rng: np.random.Generator
                          ) -> tuple[DesignVector, DesignVector]:
    """Two children as random convex combinations of both parents and the
    population best; children always lie in the parents' bounding box."""
    arrays = (parent1.to_array(), parent2.to_array(), best.to_array())
    children = []
    for _ in range(2):
        r = rng.random(3)
        total = r.sum()
        if total == 0.0:
            r = np.full(3, 1.0 / 3.0)
            total = 1.0
        child = (r[0] * arrays[0] + r[1] * arrays[1] + r[2] * arrays[2]) / total
        children.append(DesignVector.from_array(child))
    return children[0], children[1]


def dual_mode_mutation(design: DesignVector, iteration: int, bounds: Bounds,
                       threshold: float, sigma: np.ndarray,
                       rng: np.random.Generator) -> DesignVector:
    """Gaussian or shrinking-box mutation, clamped to the search box.

    A uniform indicator below (1/(iteration+1) + 1) * threshold selects
    the Gaussian branch (zero-mean, per-gene sigma); otherwise every gene
    takes a signed box step of magnitude r/iteration times the gene span,
    so late-stage steps localize the search.
    """
    genes = design.to_array()
    indicator = rng.random()
    if indicator <= (1.0 / (iteration + 1.0) + 1.0) * threshold:
        mutated = genes + rng.normal(0.0, sigma)
    else:
        r_step = rng.random(4)
        r_sign = rng.random(4)
        step = (r_step / iteration) * bounds.span
        mutated = np.where(r_sign < 0.5, genes + step, genes - step)
    return DesignVector.from_array(bounds.clip(mutated))


def elite_selection(pool: list[tuple[DesignVector, EvaluationRecord]],
                    fitness_values: list[float],
                    keep: int) -> list[tuple[DesignVector, EvaluationRecord]]:
    """Top `keep` pool members by fitness (higher better).

    Ties break toward lower objective, then lower total violation, then
    insertion order.
    """
    if len(pool) < keep:
        raise ParameterError(
            f"selection pool of {len(pool)} smaller than population {keep}")
    if len(fitness_values) != len(pool):
        raise ParameterError("fitness values do not match the pool")
    order = sorted(
        range(len(pool)),
        key=lambda i: (-fitness_values[i], pool[i][1].objective,
                       pool[i][1].total_violation, i),
    )
    return [pool[i] for i in order[:keep]]


def _trace_point(iteration: int, best_record: EvaluationRecord,
                 population_records: list[EvaluationRecord],
                 archive: _IncumbentArchive) -> TracePoint:
    return TracePoint(
        iteration=iteration,
        best_cost=best_record.objective,
        incumbent_cost=archive.incumbent_cost,
        feasible_count=sum(1 for r in population_records if r.feasible),
        eta_min_best=best_record.eta_min,
        nvis_min_best=best_record.min_visible,
    )


def run_improved_ga(evaluator: Evaluator, bounds: Bounds,
                    config: OptimizerConfig) -> OptimizationResult:
    """Best-guided GA with adaptive satisfaction-product fitness.

    Each iteration: rank the population, roulette-select a parent pool,
    breed a full population of children guided by the iteration best,
    mutate every child, then keep the elite of parents + children +
    mutants under stats computed over that combined pool.
    """
    rng = np.random.default_rng(config.seed)
    n = config.population_size
    sigma = config.sigma_scale * bounds.span
    n_parents = config.parent_pool_size or n

    population = initialize_population(bounds, n, rng)
    records = [evaluator(x) for x in population]
    evaluations = n
    archive = _IncumbentArchive()
    for r in records:
        archive.observe(r)

    trace: list[TracePoint] = []
    for iteration in range(1, config.iterations + 1):
        stats = PopulationStats.from_records(records, iteration)
        fitness = [
            adaptive_fitness(*satisfaction_scores(r, stats), stats,
                             config.alpha1, config.alpha2)
            for r in records
        ]
        best_idx = int(np.argmax(fitness))
        x_best = population[best_idx]

        weights = np.asarray(fitness) + 1e-12
        parent_idx = rng.choice(n, size=n_parents, p=weights / weights.sum())
        parents = [population[i] for i in parent_idx]

        children: list[DesignVector] = []
        while len(children) < n:
            i1 = int(rng.integers(n_parents))
            i2 = int(rng.integers(n_parents))
            c1, c2 = best_guided_crossover(parents[i1], parents[i2], x_best, rng)
            children.append(c1)
            if len(children) < n:
                children.append(c2)

        mutants = [
            dual_mode_mutation(c, iteration, bounds, config.mutation_threshold,
                               sigma, rng)
            for c in children
        ]

        child_records = [evaluator(c) for c in children]
        mutant_records = [evaluator(m) for m in mutants]
        evaluations += 2 * n
        for r in child_records + mutant_records:
            archive.observe(r)

        pool = (list(zip(population, records))
                + list(zip(children, child_records))
                + list(zip(mutants, mutant_records)))
        pool_records = [rec for _, rec in pool]
        pool_stats = PopulationStats.from_records(pool_records, iteration)
        pool_fitness = [
            adaptive_fitness(*satisfaction_scores(r, pool_stats), pool_stats,
                             config.alpha1, config.alpha2)
            for r in pool_records
        ]
        selected = elite_selection(pool, pool_fitness, n)
        population = [d for d, _ in selected]
        records = [r for _, r in selected]
        trace.append(_trace_point(iteration, records[0], records, archive))

    best_record, feasible = archive.result_record()
    return OptimizationResult(
        algorithm="improved", seed=config.seed, best_design=best_record.design,
        best_record=best_record, feasible=feasible, trace=trace,
        evaluations=evaluations,
    )


def _penalty_scores(records: list[EvaluationRecord],
                    config: OptimizerConfig) -> np.ndarray:
    return np.array([
        classical_penalty(r.objective, r.p1, r.p2, config.rho1, config.rho2)
        for r in records
    ])


def _min_roulette_weights(scores: np.ndarray) -> np.ndarray:
    """Roulette weights for a minimization score (lower score, more weight)."""
    worst = scores.max()
    weights = (worst - scores) + 1e-12
    return weights / weights.sum()


def _baseline_trace(iteration: int, records: list[EvaluationRecord],
                    scores: np.ndarray,
                    archive: _IncumbentArchive) -> TracePoint:
    best = records[int(np.argmin(scores))]
    return _trace_point(iteration, best, records, archive)


def _run_classical_ga(evaluator: Evaluator, bounds: Bounds,
                      config: OptimizerConfig,
                      rng: np.random.Generator) -> tuple[list, int]:
    """Generational GA: plain two-parent convex crossover (no best-individual
    guidance), fixed Gaussian mutation, full replacement."""
    n = config.population_size
    sigma = config.sigma_scale * bounds.span
    population = initialize_population(bounds, n, rng)
    records = [evaluator(x) for x in population]
    evaluations = n
    archive = _IncumbentArchive()
    for r in records:
        archive.observe(r)
    scores = _penalty_scores(records, config)
    trace = [_baseline_trace(1, records, scores, archive)]

    for iteration in range(2, config.iterations + 1):
        weights = _min_roulette_weights(scores)
        children: list[DesignVector] = []
        while len(children) < n:
            i1, i2 = rng.choice(n, size=2, p=weights)
            p1 = population[int(i1)].to_array()
            p2 = population[int(i2)].to_array()
            r = rng.random()
            c1 = r * p1 + (1.0 - r) * p2
            c2 = (1.0 - r) * p1 + r * p2
            for c in (c1, c2):
                if len(children) >= n:
                    break
                if rng.random() < config.mutation_threshold:
                    c = c + rng.normal(0.0, sigma)
                children.append(DesignVector.from_array(bounds.clip(c)))
        population = children
        records = [evaluator(x) for x in population]
        evaluations += n
        for rec in records:
            archive.observe(rec)
        scores = _penalty_scores(records, config)
        trace.append(_baseline_trace(iteration, records, scores, archive))
    return [trace, archive, evaluations]


def _run_pso(evaluator: Evaluator, bounds: Bounds, config: OptimizerConfig,
             rng: np.random.Generator) -> tuple[list, int]:
    """Inertia-weight particle swarm with personal/global bests."""
    n = config.population_size
    positions = rng.uniform(bounds.lower, bounds.upper, size=(n, 4))
    velocities = np.zeros((n, 4))
    vmax = config.pso_vmax_scale * bounds.span

    records = [evaluator(DesignVector.from_array(x)) for x in positions]
    evaluations = n
    archive = _IncumbentArchive()
    for r in records:
        archive.observe(r)
    scores = _penalty_scores(records, config)
    pbest_pos = positions.copy()
    pbest_scores = scores.copy()
    g_idx = int(np.argmin(scores))
    gbest_pos = positions[g_idx].copy()
    gbest_score = float(scores[g_idx])
    trace = [_baseline_trace(1, records, scores, archive)]

    for iteration in range(2, config.iterations + 1):
        frac = (iteration - 1) / max(config.iterations - 1, 1)
        w = config.pso_inertia_start - frac * (config.pso_inertia_start
                                               - config.pso_inertia_end)
        r1 = rng.random((n, 4))
        r2 = rng.random((n, 4))
        velocities = (w * velocities
                      + config.pso_cognitive * r1 * (pbest_pos - positions)
                      + config.pso_social * r2 * (gbest_pos[None, :] - positions))
        velocities = np.clip(velocities, -vmax, vmax)
        positions = np.clip(positions + velocities, bounds.lower, bounds.upper)

        records = [evaluator(DesignVector.from_array(x)) for x in positions]
        evaluations += n
        for rec in records:
            archive.observe(rec)
        scores = _penalty_scores(records, config)
        improved = scores < pbest_scores
        pbest_pos[improved] = positions[improved]
        pbest_scores[improved] = scores[improved]
        g_idx = int(np.argmin(pbest_scores))
        if pbest_scores[g_idx] < gbest_score:
            gbest_score = float(pbest_scores[g_idx])
            gbest_pos = pbest_pos[g_idx].copy()
        trace.append(_baseline_trace(iteration, records, scores, archive))
    return [trace, archive, evaluations]


def _run_sca(evaluator: Evaluator, bounds: Bounds, config: OptimizerConfig,
             rng: np.random.Generator) -> tuple[list, int]:
    """Sine-cosine algorithm with linearly decaying amplitude."""
    n = config.population_size
    positions = rng.uniform(bounds.lower, bounds.upper, size=(n, 4))
    records = [evaluator(DesignVector.from_array(x)) for x in positions]
    evaluations = n
    archive = _IncumbentArchive()
    for r in records:
        archive.observe(r)
    scores = _penalty_scores(records, config)
    d_idx = int(np.argmin(scores))
    dest = positions[d_idx].copy()
    dest_score = float(scores[d_idx])
    trace = [_baseline_trace(1, records, scores, archive)]

    for iteration in range(2, config.iterations + 1):
        r1 = config.sca_amplitude * (1.0 - (iteration - 1)
                                     / max(config.iterations - 1, 1))
        r2 = rng.uniform(0.0, 2.0 * math.pi, size=(n, 4))
        r3 = rng.uniform(0.0, 2.0, size=(n, 4))
        r4 = rng.random((n, 4))
        swing = np.abs(r3 * dest[None, :] - positions)
        step = np.where(r4 < 0.5, r1 * np.sin(r2) * swing,
                        r1 * np.cos(r2) * swing)
        positions = np.clip(positions + step, bounds.lower, bounds.upper)

        records = [evaluator(DesignVector.from_array(x)) for x in positions]
        evaluations += n
        for rec in records:
            archive.observe(rec)
        scores = _penalty_scores(records, config)
        s_idx = int(np.argmin(scores))
        if scores[s_idx] < dest_score:
            dest_score = float(scores[s_idx])
            dest = positions[s_idx].copy()
        trace.append(_baseline_trace(iteration, records, scores, archive))
    return [trace, archive, evaluations]


def _run_gwo(evaluator: Evaluator, bounds: Bounds, config: OptimizerConfig,
             rng: np.random.Generator) -> tuple[list, int]:
    """Grey wolf optimizer: the three best solutions seen so far steer the
    pack, with a linearly decaying encircling coefficient."""
    n = config.population_size
    positions = rng.uniform(bounds.lower, bounds.upper, size=(n, 4))
    records = [evaluator(DesignVector.from_array(x)) for x in positions]
    evaluations = n
    archive = _IncumbentArchive()
    for r in records:
        archive.observe(r)
    scores = _penalty_scores(records, config)
    trace = [_baseline_trace(1, records, scores, archive)]

    leader_pos = np.empty((3, 4))
    leader_scores = np.full(3, np.inf)

    def update_leaders():
        for i in range(n):
            s = scores[i]
            for k in range(3):
                if s < leader_scores[k]:
                    leader_pos[k + 1:] = leader_pos[k:2].copy()
                    leader_scores[k + 1:] = leader_scores[k:2].copy()
                    leader_pos[k] = positions[i]
                    leader_scores[k] = s
                    break

    update_leaders()
    for iteration in range(2, config.iterations + 1):
        a = 2.0 * (1.0 - (iteration - 1) / max(config.iterations - 1, 1))
        new_positions = np.empty_like(positions)
        for i in range(n):
            guided = np.empty((3, 4))
            for k in range(3):
                a_vec = 2.0 * a * rng.random(4) - a
                c_vec = 2.0 * rng.random(4)
                guided[k] = leader_pos[k] - a_vec * np.abs(
                    c_vec * leader_pos[k] - positions[i])
            new_positions[i] = guided.mean(axis=0)
        positions = np.clip(new_positions, bounds.lower, bounds.upper)

        records = [evaluator(DesignVector.from_array(x)) for x in positions]
        evaluations += n
        for rec in records:
            archive.observe(rec)
        scores = _penalty_scores(records, config)
        update_leaders()
        trace.append(_baseline_trace(iteration, records, scores, archive))
    return [trace, archive, evaluations]


def _lattice_steps(bounds: Bounds, config: OptimizerConfig) -> np.ndarray:
    """Move quantum per gene: one unit for the integer genes, a span
    fraction for the continuous ones."""
    steps = config.tabu_step_scale * bounds.span
    steps[1] = 1.0
    steps[2] = 1.0
    return steps


def _run_tabu(evaluator: Evaluator, bounds: Bounds, config: OptimizerConfig,
              rng: np.random.Generator) -> tuple[list, int]:
    """Tabu search over a rounded-lattice neighborhood of the current
    solution; recently visited lattice cells are forbidden unless they
    beat the best score seen (aspiration)."""
    n = config.population_size
    steps = _lattice_steps(bounds, config)

    def lattice_key(genes: np.ndarray) -> tuple:
        return tuple(int(round(v)) for v in (genes - bounds.lower) / steps)

    current = rng.uniform(bounds.lower, bounds.upper)
    current_rec = evaluator(DesignVector.from_array(current))
    evaluations = 1
    archive = _IncumbentArchive()
    archive.observe(current_rec)
    best_score = classical_penalty(current_rec.objective, current_rec.p1,
                                   current_rec.p2, config.rho1, config.rho2)
    tabu: list[tuple] = [lattice_key(current)]
    trace: list[TracePoint] = []

    for iteration in range(1, config.iterations + 1):
        neighbors = np.empty((n, 4))
        for i in range(n):
            genes = current.copy()
            n_moves = 1 + int(rng.integers(2))
            for _ in range(n_moves):
                gene = int(rng.integers(4))
                k = 1 + int(rng.integers(config.tabu_max_steps))
                sign = 1.0 if rng.random() < 0.5 else -1.0
                genes[gene] += sign * k * steps[gene]
            neighbors[i] = bounds.clip(genes)

        records = [evaluator(DesignVector.from_array(x)) for x in neighbors]
        evaluations += n
        for rec in records:
            archive.observe(rec)
        scores = _penalty_scores(records, config)

        order = np.argsort(scores, kind="stable")
        chosen = None
        for idx in order:
            key = lattice_key(neighbors[idx])
            if key not in tabu or scores[idx] < best_score:
                chosen = int(idx)
                break
        if chosen is None:
            chosen = int(order[0])
        current = neighbors[chosen]
        best_score = min(best_score, float(scores[chosen]))
        tabu.append(lattice_key(current))
        if len(tabu) > config.tabu_tenure:
            tabu.pop(0)
        trace.append(_baseline_trace(iteration, records, scores, archive))
    return [trace, archive, evaluations]


BASELINE_KINDS = ("classical-ga", "pso", "sca", "gwo", "tabu")

_BASELINE_RUNNERS = {
    "classical-ga": _run_classical_ga,
    "pso": _run_pso,
    "sca": _run_sca,
    "gwo": _run_gwo,
    "tabu": _run_tabu,
}


def run_baseline(kind: str, evaluator: Evaluator, bounds: Bounds,
                 config: OptimizerConfig) -> OptimizationResult:
    """Run one baseline metaheuristic under the classical penalty score."""
    if kind not in _BASELINE_RUNNERS:
        raise ParameterError(
            f"unknown baseline '{kind}'; expected one of {BASELINE_KINDS}")
    rng = np.random.default_rng(config.seed)
    trace, archive, evaluations = _BASELINE_RUNNERS[kind](
        evaluator, bounds, config, rng)
    best_record, feasible = archive.result_record()
    return OptimizationResult(
        algorithm=kind, seed=config.seed, best_design=best_record.design,
        best_record=best_record, feasible=feasible, trace=trace,
        evaluations=evaluations,
    )


ALGORITHM_KINDS = ("improved",) + BASELINE_KINDS


def run_algorithm(kind: str, evaluator: Evaluator, bounds: Bounds,
                  config: OptimizerConfig) -> OptimizationResult:
    """Dispatch to the improved GA or one of the baselines."""
    if kind == "improved":
        return run_improved_ga(evaluator, bounds, config)
    return run_baseline(kind, evaluator, bounds, config)
