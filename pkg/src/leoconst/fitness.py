"""Constraint handling and both fitness formulations.

Violations are measured with Phi(x) = max(x, 0), oriented so that a
violation is zero exactly when the corresponding QoS constraint holds:

    p1 = Phi(eta_th - eta_min)          coverage-ratio shortfall
    p2 = Phi(n_required - n_visible)    serving-satellite shortfall

The adaptive fitness normalizes objective and violations against the
extremes of the population being ranked and applies an exponent that
hardens both with the infeasible fraction and with the iteration count:

    F_s = f_s1 * (p_s1 * p_s2)^((m_fe/N_totp) * (alpha1 - alpha2/n_it))

Higher F_s is better and F_s is always in [0, 1]. The classical fixed
penalty F = f1 + rho1*p1 + rho2*p2 (lower is better) is kept for the
baseline optimizers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import ParameterError

if TYPE_CHECKING:
    from .optim import DesignVector


@dataclass(frozen=True)
class EvaluationRecord:
    """Objective and constraint outcome of one design evaluation."""

    design: "DesignVector"
    objective: float
    p1: float
    p2: float
    eta_min: float
    min_visible: float

    @property
    def feasible(self) -> bool:
        return self.p1 == 0.0 and self.p2 == 0.0

    @property
    def total_violation(self) -> float:
        return self.p1 + self.p2


@dataclass(frozen=True)
class PopulationStats:
    """Extremes and feasibility counts of the population being ranked."""

    f1_min: float
    f1_max: float
    p1_max: float
    p2_max: float
    infeasible_count: int
    pool_size: int
    iteration: int

    def __post_init__(self):
        if self.iteration < 1:
            raise ParameterError(f"iteration index starts at 1, got {self.iteration}")
        if not 0 <= self.infeasible_count <= self.pool_size:
            raise ParameterError("infeasible count outside 0..pool size")
        if self.f1_min > self.f1_max:
            raise ParameterError("f1_min exceeds f1_max")

    @classmethod
    def from_records(cls, records: list[EvaluationRecord],
                     iteration: int) -> "PopulationStats":
        if not records:
            raise ParameterError("cannot compute stats of an empty population")
        objectives = [r.objective for r in records]
        return cls(
            f1_min=min(objectives),
            f1_max=max(objectives),
            p1_max=max(r.p1 for r in records),
            p2_max=max(r.p2 for r in records),
            infeasible_count=sum(1 for r in records if not r.feasible),
            pool_size=len(records),
            iteration=iteration,
        )


def constraint_violations(eta_min: float, eta_th: float, min_visible: float,
                          n_required: float) -> tuple[float, float]:
    """Degree of violation of the coverage and capacity constraints.

    Both components are zero exactly when eta_min >= eta_th and
    min_visible >= n_required.
    """
    if not 0 <= eta_min <= 1 or not 0 <= eta_th <= 1:
        raise ParameterError("coverage ratios must lie in [0, 1]")
    p1 = max(eta_th - eta_min, 0.0)
    p2 = max(n_required - min_visible, 0.0)
    return p1, p2


def satisfaction_scores(record: EvaluationRecord,
                        stats: PopulationStats) -> tuple[float, float, float]:
    """Normalized-to-[0,1] satisfaction of the objective and constraints.

    Degenerate denominators resolve to full satisfaction: a population
    with equal objectives scores 1 on the objective, and a constraint
    nobody violates scores 1 for everyone.
    """
    if stats.f1_max == stats.f1_min:
        f_s1 = 1.0
    else:
        f_s1 = (stats.f1_max - record.objective) / (stats.f1_max - stats.f1_min)
    p_s1 = 1.0 if stats.p1_max == 0.0 else (stats.p1_max - record.p1) / stats.p1_max
    p_s2 = 1.0 if stats.p2_max == 0.0 else (stats.p2_max - record.p2) / stats.p2_max
    return f_s1, p_s1, p_s2


def adaptive_exponent(stats: PopulationStats, alpha1: float, alpha2: float) -> float:
    """Penalty exponent (m_fe/N_totp) * (alpha1 - alpha2/n_it)."""
    return (stats.infeasible_count / stats.pool_size
            * (alpha1 - alpha2 / stats.iteration))


def adaptive_fitness(f_s1: float, p_s1: float, p_s2: float,
                     stats: PopulationStats, alpha1: float,
                     alpha2: float) -> float:
    """Satisfaction-product fitness; higher is better, range [0, 1]."""
    exponent = adaptive_exponent(stats, alpha1, alpha2)
    return f_s1 * (p_s1 * p_s2) ** exponent


def classical_penalty(f1: float, p1: float, p2: float, rho1: float,
                      rho2: float) -> float:
    """Fixed-penalty score f1 + rho1*p1 + rho2*p2; lower is better."""
    if rho1 < 0 or rho2 < 0:
        raise ParameterError("penalty factors must be nonnegative")
    return f1 + rho1 * p1 + rho2 * p2
