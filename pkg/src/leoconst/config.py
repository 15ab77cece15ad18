"""Experiment configuration: defaults, profiles, and text-file round trip.

Every system parameter, QoS threshold, search bound, and optimizer
hyperparameter has a flat dotted key (e.g. link.carrier_frequency_hz) and
a default equal to the reference simulation setup. Values are written and
parsed as `key = value` lines with full-precision repr text, so
parse -> serialize -> parse is the identity.

Two fidelity profiles are provided:

  paper: 10 deg grid, 60 s time step, full coverage-cone angle of 45 deg.
  desk:  30 deg grid, 600 s time step, 90 deg cone angle. The wider cone
         treats the tabulated coverage angle as a half-angle, which keeps
         the desk-scale constrained problem well posed (the faithful
         45 deg full-cone reading yields footprints so small that no
         in-range design can keep every grid point served at all times);
         the reduction in fidelity is deliberate and documented here
         rather than hidden.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

import numpy as np

from .coverage import GridSpec, Timeline, theta_from_beta
from .errors import ParameterError
from .link import LinkEnvironment
from .optim import Bounds, OptimizerConfig


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def dbm_to_watts(value_dbm: float) -> float:
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class ExperimentConfig:
    """All experiment parameters with reference-table defaults."""

    # link: RF and traffic parameters (dB/dBm/dBW at this boundary only).
    link_carrier_frequency_hz: float = 5.0e9
    link_bandwidth_hz: float = 250.0e6
    link_sat_gain_dbi: float = 17.0
    link_dev_gain_dbi: float = 3.0
    link_rain_fading_db: float = -2.6
    link_rician_factor_db: float = 10.0
    link_noise_power_dbm: float = -106.0
    link_antennas: int = 16
    link_activity: float = 0.005
    link_device_density_per_km2: float = 8.0e-5
    link_tx_power_dbw: float = 3.0
    link_sequence_length: int = 100
    link_coverage_angle_beta_deg: float = 45.0

    # qos: thresholds of the design problem.
    qos_eta_th: float = 0.9
    qos_capacity_th_bps: float = 80.0e6

    # cost model.
    cost_sat_mass_kg: float = 227.0
    cost_insurance_ratio: float = 0.2
    cost_manufacture_coeff: float = 0.00185
    cost_launch_coeff: float = 0.000166

    # walker pattern.
    walker_phase_factor: int = 1

    # grid and timeline fidelity.
    grid_lat_min_deg: float = -60.0
    grid_lat_max_deg: float = 60.0
    grid_step_deg: float = 10.0
    time_start: str = "2025-01-01T00:00:00"
    time_duration_s: float = 86340.0
    time_step_s: float = 60.0

    # bounds: search box of the design problem.
    bounds_h_min_km: float = 500.0
    bounds_h_max_km: float = 1800.0
    bounds_p_min: int = 4
    bounds_p_max: int = 20
    bounds_n_min: int = 4
    bounds_n_max: int = 20
    bounds_i_min_deg: float = 20.0
    bounds_i_max_deg: float = 60.0

    # optimizer hyperparameters.
    opt_population_size: int = 30
    opt_iterations: int = 50
    opt_mutation_threshold: float = 0.3
    opt_alpha1: float = 2.0
    opt_alpha2: float = 1.0
    opt_rho1: float = 1000.0
    opt_rho2: float = 1000.0
    opt_sigma_scale: float = 0.1
    opt_seed: int = 1

    # run orchestration.
    run_seeds: tuple[int, ...] = tuple(range(1, 21))
    run_output_dir: str = "runs"

    # Derived accessors -------------------------------------------------

    def grid_spec(self) -> GridSpec:
        return GridSpec(lat_min_deg=self.grid_lat_min_deg,
                        lat_max_deg=self.grid_lat_max_deg,
                        step_deg=self.grid_step_deg)

    def timeline(self) -> Timeline:
        return Timeline(duration_s=self.time_duration_s,
                        step_s=self.time_step_s, start=self.time_start)

    def bounds(self) -> Bounds:
        return Bounds(
            lower=np.array([self.bounds_h_min_km * 1e3, self.bounds_p_min,
                            self.bounds_n_min,
                            math.radians(self.bounds_i_min_deg)]),
            upper=np.array([self.bounds_h_max_km * 1e3, self.bounds_p_max,
                            self.bounds_n_max,
                            math.radians(self.bounds_i_max_deg)]),
        )

    def optimizer_config(self, seed: int | None = None) -> OptimizerConfig:
        return OptimizerConfig(
            population_size=self.opt_population_size,
            iterations=self.opt_iterations,
            mutation_threshold=self.opt_mutation_threshold,
            alpha1=self.opt_alpha1,
            alpha2=self.opt_alpha2,
            sigma_scale=self.opt_sigma_scale,
            rho1=self.opt_rho1,
            rho2=self.opt_rho2,
            seed=self.opt_seed if seed is None else seed,
        )

    def min_elevation_rad(self, altitude_m: float) -> float:
        """Service elevation implied by the configured coverage-cone angle
        at the given altitude."""
        return theta_from_beta(
            math.radians(self.link_coverage_angle_beta_deg), altitude_m)

    def link_environment(self, altitude_m: float) -> LinkEnvironment:
        """Linear-unit link environment at the given altitude (dB and
        per-km2 values converted here, nowhere else)."""
        return LinkEnvironment(
            carrier_frequency_hz=self.link_carrier_frequency_hz,
            bandwidth_hz=self.link_bandwidth_hz,
            sat_gain=db_to_linear(self.link_sat_gain_dbi),
            dev_gain=db_to_linear(self.link_dev_gain_dbi),
            rain_loss=db_to_linear(self.link_rain_fading_db),
            rician_factor=db_to_linear(self.link_rician_factor_db),
            antennas=self.link_antennas,
            sequence_length=self.link_sequence_length,
            activity=self.link_activity,
            device_density_per_m2=self.link_device_density_per_km2 / 1e6,
            tx_power_w=db_to_linear(self.link_tx_power_dbw),
            noise_var_w=dbm_to_watts(self.link_noise_power_dbm),
            altitude_m=altitude_m,
            min_elevation_rad=self.min_elevation_rad(altitude_m),
        )


PROFILES = ("paper", "desk")


def apply_profile(config: ExperimentConfig, profile: str) -> ExperimentConfig:
    """Overlay one of the named fidelity profiles onto a configuration."""
    if profile == "paper":
        return replace(config, grid_step_deg=10.0, time_step_s=60.0,
                       link_coverage_angle_beta_deg=45.0)
    if profile == "desk":
        return replace(config, grid_step_deg=30.0, time_step_s=600.0,
                       link_coverage_angle_beta_deg=90.0)
    raise ParameterError(f"unknown profile '{profile}'; expected one of {PROFILES}")


# Flat-key serialization ------------------------------------------------

_TYPE_NAMES = {"float": float, "int": int, "str": str,
               "tuple[int, ...]": tuple}


def _field_to_key(name: str) -> str:
    prefix, rest = name.split("_", 1)
    return f"{prefix}.{rest}"


def _format_value(value) -> str:
    if isinstance(value, tuple):
        return ",".join(repr(v) for v in value)
    return repr(value)


def _parse_value(text: str, kind: type) -> object:
    text = text.strip()
    if kind is tuple:
        if not text:
            return tuple()
        return tuple(int(part.strip()) for part in text.split(","))
    if kind is float:
        return float(text)
    if kind is int:
        return int(text)
    if kind is str:
        return text.strip("'\"")
    raise ParameterError(f"unsupported config value type {kind}")


def serialize_config(config: ExperimentConfig) -> str:
    """Render a configuration as sorted `key = value` lines."""
    lines = []
    for f in sorted(fields(config), key=lambda f: _field_to_key(f.name)):
        lines.append(f"{_field_to_key(f.name)} = "
                     f"{_format_value(getattr(config, f.name))}")
    return "\n".join(lines) + "\n"


def parse_config(text: str,
                 base: ExperimentConfig | None = None) -> ExperimentConfig:
    """Parse `key = value` lines over a base configuration.

    Unknown keys raise ParameterError; blank lines and '#' comments are
    skipped.
    """
    base = base if base is not None else ExperimentConfig()
    by_key = {_field_to_key(f.name): f for f in fields(base)}
    overrides = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParameterError(f"config line {lineno} is not 'key = value': "
                                 f"{raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if key not in by_key:
            raise ParameterError(f"unknown config key '{key}' (line {lineno})")
        f = by_key[key]
        type_name = f.type if isinstance(f.type, str) else f.type.__name__
        kind = _TYPE_NAMES.get(type_name)
        if kind is None:
            raise ParameterError(f"unsupported config field type {type_name}")
        overrides[f.name] = _parse_value(value, kind)
    return replace(base, **overrides)


def load_config(path: str, base: ExperimentConfig | None = None) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read(), base=base)


def save_config(config: ExperimentConfig, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_config(config))
