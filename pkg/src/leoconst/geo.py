"""Orbit representation, Walker-Delta generation, and frame conversion.

Circular two-body orbits around a spherical Earth. Positions follow the
standard orbital-element parameterization

    r = a * [cos(u)cos(O) - sin(u)sin(O)cos(i),
             cos(u)sin(O) + sin(u)cos(O)cos(i),
             sin(u)sin(i)]

with u = arg_perigee + true_anomaly, O the RAAN, and a = R_e + h. All
angles are radians and all lengths meters; degrees appear only at
configuration boundaries.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .constants import EARTH_RADIUS_M, EARTH_ROTATION_RAD_S, MU_EARTH_M3_S2
from .errors import ParameterError

TWO_PI = 2.0 * math.pi


def _wrap_angle(angle: float) -> float:
    """Normalize an angle to [0, 2*pi)."""
    return angle % TWO_PI


@dataclass(frozen=True)
class OrbitalElements:
    """Classical elements of one circular orbit (angles in radians).

    Eccentricity must be exactly 0; the perigee is undefined for circular
    orbits, so the along-track phase is carried by arg_perigee +
    true_anomaly_epoch (arg_perigee is kept at 0 by convention in the
    Walker generator).
    """

    semi_major_axis_m: float
    eccentricity: float
    inclination_rad: float
    raan_rad: float
    arg_perigee_rad: float
    true_anomaly_epoch_rad: float

    def __post_init__(self):
        if self.eccentricity != 0.0:
            raise ParameterError(
                f"only circular orbits are supported, got e={self.eccentricity}"
            )
        if self.semi_major_axis_m <= EARTH_RADIUS_M:
            raise ParameterError(
                f"semi-major axis {self.semi_major_axis_m} m must exceed the "
                f"Earth radius {EARTH_RADIUS_M} m"
            )
        for name in ("inclination_rad", "raan_rad", "arg_perigee_rad",
                     "true_anomaly_epoch_rad"):
            object.__setattr__(self, name, _wrap_angle(getattr(self, name)))

    @property
    def altitude_m(self) -> float:
        return self.semi_major_axis_m - EARTH_RADIUS_M

    @property
    def mean_motion_rad_s(self) -> float:
        return math.sqrt(MU_EARTH_M3_S2 / self.semi_major_axis_m**3)

    @property
    def period_s(self) -> float:
        return TWO_PI / self.mean_motion_rad_s


@dataclass(frozen=True)
class WalkerConfig:
    """Walker-Delta pattern: P planes of N satellites with phase factor F.

    F in 0..P-1 staggers corresponding satellites of adjacent planes by
    360*F/(N*P) degrees along track.
    """

    sats_per_plane: int
    planes: int
    phase_factor: int
    altitude_m: float
    inclination_rad: float

    def __post_init__(self):
        if self.sats_per_plane < 1 or self.planes < 1:
            raise ParameterError(
                f"need at least one plane and one satellite per plane, got "
                f"N={self.sats_per_plane}, P={self.planes}"
            )
        if not 0 <= self.phase_factor <= self.planes - 1:
            raise ParameterError(
                f"phase factor {self.phase_factor} outside 0..{self.planes - 1}"
            )
        if self.altitude_m <= 0:
            raise ParameterError(f"altitude must be positive, got {self.altitude_m}")

    @property
    def total_satellites(self) -> int:
        return self.sats_per_plane * self.planes

    @property
    def phase_difference_rad(self) -> float:
        """Along-track stagger between adjacent planes, 2*pi*F/(N*P)."""
        return TWO_PI * self.phase_factor / self.total_satellites


@dataclass(frozen=True)
class EciPosition:
    """Cartesian position in the Earth-centered inertial frame at epoch
    offset t seconds."""

    x: float
    y: float
    z: float
    t: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @property
    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)


@dataclass(frozen=True)
class EcefPosition:
    """Cartesian position in the Earth-fixed frame at epoch offset t seconds."""

    x: float
    y: float
    z: float
    t: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @property
    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    @property
    def subsatellite_lat_rad(self) -> float:
        return math.asin(self.z / self.norm)

    @property
    def subsatellite_lon_rad(self) -> float:
        return math.atan2(self.y, self.x)


def walker_delta_elements(config: WalkerConfig) -> list[OrbitalElements]:
    """Expand a Walker-Delta pattern into per-satellite orbital elements.

    Plane p gets RAAN = p * 360/P degrees; satellite n of plane p starts at
    along-track phase n * 360/N + p * 360*F/(N*P) degrees. Returns N*P
    element sets ordered plane-major.
    """
    a = EARTH_RADIUS_M + config.altitude_m
    in_plane_step = TWO_PI / config.sats_per_plane
    raan_step = TWO_PI / config.planes
    stagger = config.phase_difference_rad

    elements = []
    for p in range(config.planes):
        raan = p * raan_step
        for n in range(config.sats_per_plane):
            elements.append(OrbitalElements(
                semi_major_axis_m=a,
                eccentricity=0.0,
                inclination_rad=config.inclination_rad,
                raan_rad=raan,
                arg_perigee_rad=0.0,
                true_anomaly_epoch_rad=n * in_plane_step + p * stagger,
            ))
    return elements


@dataclass(frozen=True)
class ConstellationGeometry:
    """The expanded set of per-satellite orbital elements."""

    elements: tuple[OrbitalElements, ...]

    @classmethod
    def from_walker(cls, config: WalkerConfig) -> "ConstellationGeometry":
        return cls(elements=tuple(walker_delta_elements(config)))

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _state(self) -> dict[str, np.ndarray]:
        return constellation_state_arrays(self)


def propagate_eci(elements: OrbitalElements, t: float) -> EciPosition:
    """Position of a circular orbit at epoch offset t seconds.

    The true anomaly advances uniformly at the mean motion sqrt(mu/a^3);
    the returned vector has norm a = R_e + h.
    """
    a = elements.semi_major_axis_m
    u = elements.arg_perigee_rad + elements.true_anomaly_epoch_rad \
        + elements.mean_motion_rad_s * t
    cos_u, sin_u = math.cos(u), math.sin(u)
    cos_o, sin_o = math.cos(elements.raan_rad), math.sin(elements.raan_rad)
    cos_i = math.cos(elements.inclination_rad)
    sin_i = math.sin(elements.inclination_rad)
    return EciPosition(
        x=a * (cos_u * cos_o - sin_u * sin_o * cos_i),
        y=a * (cos_u * sin_o + sin_u * cos_o * cos_i),
        z=a * sin_u * sin_i,
        t=t,
    )


def eci_to_ecef(pos: EciPosition, t: float | None = None) -> EcefPosition:
    """Rotate an inertial position into the Earth-fixed frame.

    The Greenwich sidereal angle is taken as 0 at epoch, so the frames
    coincide at t = 0 and the Earth-fixed frame is rotated by
    theta = omega_e * t afterwards. Pure z-rotation; the norm is preserved.
    """
    if t is None:
        t = pos.t
    theta = EARTH_ROTATION_RAD_S * t
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    return EcefPosition(
        x=pos.x * cos_t + pos.y * sin_t,
        y=-pos.x * sin_t + pos.y * cos_t,
        z=pos.z,
        t=t,
    )


def constellation_state_arrays(
    constellation: ConstellationGeometry,
) -> dict[str, np.ndarray]:
    """Bundle per-satellite element columns for vectorized propagation."""
    els = constellation.elements
    return {
        "a": np.array([e.semi_major_axis_m for e in els]),
        "inc": np.array([e.inclination_rad for e in els]),
        "raan": np.array([e.raan_rad for e in els]),
        "u0": np.array([e.arg_perigee_rad + e.true_anomaly_epoch_rad for e in els]),
        "n_mean": np.array([e.mean_motion_rad_s for e in els]),
    }


def propagate_ecef_units(
    constellation: ConstellationGeometry, times: np.ndarray
) -> np.ndarray:
    """Earth-fixed unit position vectors for every (time, satellite) pair.

    Returns shape (T, S, 3). The direction matches propagate_eci followed
    by eci_to_ecef per pair; circular orbits make the radius exactly
    R_e + h, so unit vectors need no normalization step.
    """
    times = np.asarray(times, dtype=float)
    state = constellation._state
    if state["a"].size == 0:
        return np.zeros((times.size, 0, 3))

    u = state["u0"][None, :] + state["n_mean"][None, :] * times[:, None]
    cos_u, sin_u = np.cos(u), np.sin(u)
    cos_o, sin_o = np.cos(state["raan"]), np.sin(state["raan"])
    cos_i, sin_i = np.cos(state["inc"]), np.sin(state["inc"])

    x = cos_u * cos_o[None, :] - sin_u * (sin_o * cos_i)[None, :]
    y = cos_u * sin_o[None, :] + sin_u * (cos_o * cos_i)[None, :]
    z = sin_u * sin_i[None, :]

    theta = EARTH_ROTATION_RAD_S * times
    cos_t, sin_t = np.cos(theta)[:, None], np.sin(theta)[:, None]
    x_f = x * cos_t + y * sin_t
    y_f = -x * sin_t + y * cos_t

    return np.stack([x_f, y_f, z], axis=-1)


def propagate_ecef_batch(
    constellation: ConstellationGeometry, times: np.ndarray
) -> np.ndarray:
    """Earth-fixed positions in meters for every (time, satellite) pair.

    Returns an array of shape (T, S, 3). Equivalent to calling
    propagate_eci followed by eci_to_ecef per pair, but vectorized.
    """
    units = propagate_ecef_units(constellation, times)
    if units.shape[1] == 0:
        return units
    return units * constellation._state["a"][None, :, None]
