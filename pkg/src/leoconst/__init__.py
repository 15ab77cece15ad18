"""LEO constellation design toolkit.

Evaluates Walker-Delta constellations (band coverage, backhaul capacity,
deployment cost) with an orbit/coverage simulator and closed-form link
analytics, and searches the design space with an adaptive-penalty genetic
algorithm plus five baseline metaheuristics.
"""
from .config import ExperimentConfig, apply_profile
from .coverage import (CoverageReport, FootprintGeometry, GridSpec, Timeline,
                       footprint_geometry, theta_from_beta)
from .errors import (CapacityError, ConstellationError, GeometryError,
                     ParameterError)
from .evaluator import DesignReport, evaluate_design, make_evaluator
from .geo import (ConstellationGeometry, OrbitalElements, WalkerConfig,
                  walker_delta_elements)
from .link import LinkEnvironment, mean_interference, mean_spectral_efficiency
from .optim import (Bounds, DesignVector, OptimizerConfig, run_baseline,
                    run_improved_ga)
from .runner import compare_trials, run_experiment

__version__ = "0.1.0"

__all__ = [
    "Bounds", "CapacityError", "ConstellationError", "ConstellationGeometry",
    "CoverageReport", "DesignReport", "DesignVector", "ExperimentConfig",
    "FootprintGeometry", "GeometryError", "GridSpec", "LinkEnvironment",
    "OptimizerConfig", "OrbitalElements", "ParameterError", "Timeline",
    "WalkerConfig", "apply_profile", "compare_trials", "evaluate_design",
    "footprint_geometry", "make_evaluator", "mean_interference",
    "mean_spectral_efficiency", "run_baseline", "run_experiment",
    "run_improved_ga", "theta_from_beta", "walker_delta_elements",
]
