"""Full design evaluation: orbits -> coverage -> link -> cost -> violations.

One evaluation expands the rounded design into a Walker-Delta pattern,
scores band coverage and the worst-case visible-satellite count over the
configured window, computes the capacity analytics at the design
altitude, prices the constellation, and measures both QoS violations.
Evaluations are pure functions of (config, design).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import ExperimentConfig
from .cost import CostBreakdown, space_segment_cost
from .coverage import coverage_ratio_timeline, footprint_geometry
from .errors import ParameterError
from .fitness import EvaluationRecord, constraint_violations
from .geo import ConstellationGeometry, WalkerConfig
from .link import CapacityResult, capacity_result
from .optim import Bounds, DesignVector


@dataclass(frozen=True)
class DesignReport:
    """Everything known about one evaluated design."""

    design: DesignVector
    planes: int
    sats_per_plane: int
    altitude_m: float
    inclination_rad: float
    phase_factor: int
    eta_per_slot: np.ndarray
    eta_min: float
    mean_eta: float
    min_visible: int
    capacity: CapacityResult
    cost: CostBreakdown
    p1: float
    p2: float

    @property
    def feasible(self) -> bool:
        return self.p1 == 0.0 and self.p2 == 0.0

    @property
    def required_count(self) -> float:
        return self.capacity.required_count

    def to_record(self) -> EvaluationRecord:
        return EvaluationRecord(
            design=self.design,
            objective=self.cost.constellation_total,
            p1=self.p1,
            p2=self.p2,
            eta_min=self.eta_min,
            min_visible=self.min_visible,
        )

    def to_items(self) -> list[tuple[str, object]]:
        """Flat key/value view for structured-text output (full-precision
        repr for every number)."""
        return [
            ("design.altitude_km", self.altitude_m / 1e3),
            ("design.planes", self.planes),
            ("design.sats_per_plane", self.sats_per_plane),
            ("design.inclination_deg", math.degrees(self.inclination_rad)),
            ("design.phase_factor", self.phase_factor),
            ("design.total_satellites", self.planes * self.sats_per_plane),
            ("coverage.eta_min", self.eta_min),
            ("coverage.eta_mean", self.mean_eta),
            ("coverage.min_visible", self.min_visible),
            ("link.mean_interference_w", self.capacity.mean_interference_w),
            ("link.psi_m2", self.capacity.psi_m2),
            ("link.xi_bits_per_hz", self.capacity.xi_bits_per_hz),
            ("link.mean_rate_bps", self.capacity.mean_rate_bps),
            ("link.mean_capacity_bps", self.capacity.mean_capacity_bps),
            ("link.required_count", self.capacity.required_count),
            ("cost.manufacture", self.cost.manufacture),
            ("cost.launch", self.cost.launch),
            ("cost.insurance", self.cost.insurance),
            ("cost.per_satellite_total", self.cost.per_satellite_total),
            ("cost.constellation_total", self.cost.constellation_total),
            ("qos.p1", self.p1),
            ("qos.p2", self.p2),
            ("qos.feasible", self.feasible),
        ]


def _validated_counts(config: ExperimentConfig,
                      design: DesignVector) -> tuple[int, int]:
    planes = design.rounded_planes
    sats = design.rounded_sats
    bounds = config.bounds()
    genes = np.array([design.altitude_m, planes, sats, design.inclination_rad])
    if not bounds.contains(genes):
        raise ParameterError(
            f"design {genes} outside the configured bounds "
            f"[{bounds.lower}, {bounds.upper}]")
    return planes, sats


def evaluate_design(config: ExperimentConfig,
                    design: DesignVector) -> DesignReport:
    """Evaluate one design under the configured fidelity.

    Raises ParameterError for out-of-bounds designs and GeometryError when
    the configured coverage-cone angle is infeasible at the design
    altitude.
    """
    planes, sats = _validated_counts(config, design)
    h = design.altitude_m

    walker = WalkerConfig(
        sats_per_plane=sats, planes=planes,
        phase_factor=config.walker_phase_factor,
        altitude_m=h, inclination_rad=design.inclination_rad,
    )
    constellation = ConstellationGeometry.from_walker(walker)

    theta_min = config.min_elevation_rad(h)
    footprint = footprint_geometry(h, theta_min)
    grid = config.grid_spec()
    timeline = config.timeline()
    report = coverage_ratio_timeline(constellation, grid, timeline, footprint)
    # The same elevation gates the serving set, so the footprint counts
    # double as visibility counts.
    min_visible = report.min_visible_count

    env = config.link_environment(h)
    capacity = capacity_result(env, config.qos_capacity_th_bps, min_visible)

    cost = space_segment_cost(
        sats_per_plane=sats, planes=planes, altitude_km=h / 1e3,
        sat_mass_kg=config.cost_sat_mass_kg,
        insurance_ratio=config.cost_insurance_ratio,
        manufacture_coeff=config.cost_manufacture_coeff,
        launch_coeff=config.cost_launch_coeff,
    )

    p1, p2 = constraint_violations(report.eta_min, config.qos_eta_th,
                                   min_visible, capacity.required_count)
    return DesignReport(
        design=design, planes=planes, sats_per_plane=sats, altitude_m=h,
        inclination_rad=design.inclination_rad,
        phase_factor=config.walker_phase_factor,
        eta_per_slot=report.eta_per_slot, eta_min=report.eta_min,
        mean_eta=report.mean_eta, min_visible=min_visible,
        capacity=capacity, cost=cost, p1=p1, p2=p2,
    )


class RecordEvaluator:
    """Callable DesignVector -> EvaluationRecord with call accounting.

    Repeated designs that round to an identical constellation reuse the
    cached outcome (evaluations are pure), but every call still counts
    toward the budget.
    """

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.calls = 0
        self._cache: dict[tuple, tuple] = {}

    def __call__(self, design: DesignVector) -> EvaluationRecord:
        self.calls += 1
        key = (design.altitude_m, design.rounded_planes, design.rounded_sats,
               design.inclination_rad)
        hit = self._cache.get(key)
        if hit is None:
            report = evaluate_design(self.config, design)
            hit = (report.cost.constellation_total, report.p1, report.p2,
                   report.eta_min, report.min_visible)
            self._cache[key] = hit
        objective, p1, p2, eta_min, min_visible = hit
        return EvaluationRecord(design=design, objective=objective, p1=p1,
                                p2=p2, eta_min=eta_min,
                                min_visible=min_visible)


def make_evaluator(config: ExperimentConfig) -> RecordEvaluator:
    return RecordEvaluator(config)
