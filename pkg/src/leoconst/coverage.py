"""Footprint geometry and grid-based coverage statistics.

A satellite at altitude h serving down to elevation theta_min covers a
spherical cap of Earth-central angular radius

    phi_max = arccos(R_e/(R_e+h) * cos(theta_min)) - theta_min

with area 2*pi*R_e^2*(1 - cos(phi_max)). The full cone angle of that
footprint seen from the satellite is beta = 2*arcsin(R_e/(R_e+h) *
cos(theta_min)). Constellation coverage is scored on a lat/lon grid over a
latitude band: a point counts as covered in a time slot when at least one
satellite's subsatellite point is within phi_max (closed inequality, so a
point exactly on the rim is covered).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import EARTH_RADIUS_M
from .errors import GeometryError, ParameterError
from .geo import ConstellationGeometry, EcefPosition, propagate_ecef_units


@dataclass(frozen=True)
class FootprintGeometry:
    """Single-satellite footprint at one altitude/min-elevation pair."""

    phi_max_rad: float
    beta_rad: float
    theta_min_rad: float
    area_m2: float


def footprint_geometry(altitude_m: float, theta_min_rad: float) -> FootprintGeometry:
    """Footprint angular radius, cone angle, and area for one satellite.

    Args:
        altitude_m: orbit altitude above the spherical Earth, > 0.
        theta_min_rad: minimum service elevation in [0, pi/2].
    """
    if altitude_m <= 0:
        raise ParameterError(f"altitude must be positive, got {altitude_m}")
    if not 0 <= theta_min_rad <= math.pi / 2:
        raise ParameterError(
            f"minimum elevation must lie in [0, 90] deg, got "
            f"{math.degrees(theta_min_rad)} deg"
        )
    ratio = EARTH_RADIUS_M / (EARTH_RADIUS_M + altitude_m)
    s = ratio * math.cos(theta_min_rad)
    phi_max = math.acos(s) - theta_min_rad
    beta = 2.0 * math.asin(s)
    area = 2.0 * math.pi * EARTH_RADIUS_M**2 * (1.0 - math.cos(phi_max))
    return FootprintGeometry(
        phi_max_rad=phi_max,
        beta_rad=beta,
        theta_min_rad=theta_min_rad,
        area_m2=area,
    )


def theta_from_beta(beta_rad: float, altitude_m: float) -> float:
    """Minimum elevation implied by a satellite cone angle beta.

    Inverts beta = 2*arcsin(R_e/(R_e+h)*cos(theta_min)). Raises
    GeometryError when sin(beta/2)*(R_e+h)/R_e > 1, i.e. the requested
    cone is wider than the geometric maximum at this altitude.
    """
    if altitude_m <= 0:
        raise ParameterError(f"altitude must be positive, got {altitude_m}")
    if not 0 < beta_rad <= math.pi:
        raise ParameterError(
            f"cone angle must lie in (0, 180] deg, got {math.degrees(beta_rad)}"
        )
    arg = math.sin(beta_rad / 2.0) * (EARTH_RADIUS_M + altitude_m) / EARTH_RADIUS_M
    if arg > 1.0:
        raise GeometryError(
            f"coverage angle {math.degrees(beta_rad):.2f} deg exceeds the "
            f"geometric maximum at altitude {altitude_m / 1e3:.0f} km "
            f"(requires sin(beta/2)*(R_e+h)/R_e <= 1, got {arg:.4f})"
        )
    return math.acos(arg)


@dataclass(frozen=True)
class GridSpec:
    """Uniform lat/lon observation grid over a latitude band.

    Points sit at cell centers of a step_deg lattice; all points weigh
    equally in the coverage ratio.
    """

    lat_min_deg: float = -60.0
    lat_max_deg: float = 60.0
    step_deg: float = 10.0

    def __post_init__(self):
        if self.step_deg <= 0:
            raise ParameterError(f"grid step must be positive, got {self.step_deg}")
        if self.lat_max_deg <= self.lat_min_deg:
            raise ParameterError(
                f"empty latitude band [{self.lat_min_deg}, {self.lat_max_deg}]"
            )
        if self.lat_max_deg - self.lat_min_deg < self.step_deg:
            raise ParameterError("latitude band narrower than one grid cell")

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        """Grid point latitudes and longitudes in degrees (flattened)."""
        n_lat = int(round((self.lat_max_deg - self.lat_min_deg) / self.step_deg))
        n_lon = int(round(360.0 / self.step_deg))
        lats = self.lat_min_deg + (np.arange(n_lat) + 0.5) * self.step_deg
        lons = -180.0 + (np.arange(n_lon) + 0.5) * self.step_deg
        lat_grid, lon_grid = np.meshgrid(lats, lons, indexing="ij")
        return lat_grid.ravel(), lon_grid.ravel()

    @property
    def point_count(self) -> int:
        lats, _ = self.points()
        return lats.size

    def unit_vectors(self) -> np.ndarray:
        """Unit position vectors of all grid points, shape (G, 3)."""
        lats, lons = self.points()
        lat_r, lon_r = np.radians(lats), np.radians(lons)
        cos_lat = np.cos(lat_r)
        return np.stack(
            [cos_lat * np.cos(lon_r), cos_lat * np.sin(lon_r), np.sin(lat_r)],
            axis=-1,
        )


@dataclass(frozen=True)
class Timeline:
    """Observation window split into uniform slots.

    Slot offsets run from 0 to duration_s inclusive (when divisible), in
    steps of step_s, mirroring an inclusive start/end sampling convention.
    The start field is carried as metadata only; the simulation is
    epoch-relative with zero Greenwich offset at t = 0.
    """

    duration_s: float
    step_s: float
    start: str = "2025-01-01T00:00:00"

    def __post_init__(self):
        if self.step_s <= 0:
            raise ParameterError(f"time step must be positive, got {self.step_s}")
        if self.duration_s < self.step_s:
            raise ParameterError("duration must cover at least one step")

    def offsets(self) -> np.ndarray:
        return np.arange(0.0, self.duration_s + 1e-9, self.step_s)

    @property
    def slot_count(self) -> int:
        return self.offsets().size


@dataclass(frozen=True)
class CoverageReport:
    """Per-slot coverage ratios plus band minima over the window."""

    eta_per_slot: np.ndarray
    eta_min: float
    min_visible_count: int
    mean_eta: float

    def __post_init__(self):
        object.__setattr__(self, "eta_per_slot",
                           np.asarray(self.eta_per_slot, dtype=float))


def covered_indicator(sat: EcefPosition, lat_deg: float, lon_deg: float,
                      phi_max_rad: float) -> int:
    """1 iff the grid point lies within the satellite footprint.

    The test compares the Earth-central angle between the subsatellite
    point and the grid point against phi_max with a closed inequality.
    """
    lat_r, lon_r = math.radians(lat_deg), math.radians(lon_deg)
    g = np.array([
        math.cos(lat_r) * math.cos(lon_r),
        math.cos(lat_r) * math.sin(lon_r),
        math.sin(lat_r),
    ])
    s = sat.as_array() / sat.norm
    cos_angle = float(np.clip(np.dot(g, s), -1.0, 1.0))
    return 1 if cos_angle >= math.cos(phi_max_rad) else 0


def _visible_counts(constellation: ConstellationGeometry, grid: GridSpec,
                    timeline: Timeline, cos_phi_max: np.ndarray) -> np.ndarray:
    """Number of satellites within their footprint radius of each grid
    point, for every slot. cos_phi_max is scalar or per-satellite (S,).

    Returns an int array of shape (T, G). Work is chunked over time slots
    to bound memory; the per-cell computation is pure so the result is
    identical to a sequential double loop.
    """
    times = timeline.offsets()
    grid_units = grid.unit_vectors()
    n_slots, n_grid = times.size, grid_units.shape[0]
    n_sats = len(constellation)
    counts = np.zeros((n_slots, n_grid), dtype=np.int32)
    if n_sats == 0:
        return counts

    cos_phi_max = np.broadcast_to(np.asarray(cos_phi_max, dtype=float), (n_sats,))
    chunk = max(1, int(8e6 / (n_sats * n_grid + 1)))
    for lo in range(0, n_slots, chunk):
        hi = min(lo + chunk, n_slots)
        units = propagate_ecef_units(constellation, times[lo:hi])  # (t, S, 3)
        # Grid-major matmul layout: (G, t*S) runs far faster than the
        # (t*S, G) orientation for this k=3 product.
        cosines = grid_units @ units.reshape(-1, 3).T
        covered = cosines >= np.tile(cos_phi_max, hi - lo)[None, :]
        counts[lo:hi] = covered.reshape(n_grid, hi - lo, n_sats).sum(
            axis=2, dtype=np.int32).T
    return counts


def coverage_ratio_timeline(constellation: ConstellationGeometry, grid: GridSpec,
                            timeline: Timeline,
                            footprint: FootprintGeometry) -> CoverageReport:
    """Coverage ratio of the band grid for every slot of the window.

    A slot's ratio is the fraction of grid points covered by at least one
    satellite; the report carries the minimum ratio over slots and the
    minimum per-point visible-satellite count over all (slot, point) pairs
    for the same footprint elevation.
    """
    counts = _visible_counts(constellation, grid, timeline,
                             math.cos(footprint.phi_max_rad))
    eta = (counts >= 1).mean(axis=1) if counts.size else np.zeros(0)
    if eta.size == 0:
        raise ParameterError("empty grid or timeline")
    return CoverageReport(
        eta_per_slot=eta,
        eta_min=float(eta.min()),
        min_visible_count=int(counts.min()),
        mean_eta=float(eta.mean()),
    )


def min_visible_satellites(constellation: ConstellationGeometry, grid: GridSpec,
                           timeline: Timeline, theta_min_rad: float) -> int:
    """Fewest satellites at elevation >= theta_min over all slots and points.

    Visibility is evaluated through the equivalent central-angle test with
    each satellite's own altitude, which matches the elevation-angle
    definition exactly for circular orbits.
    """
    if len(constellation) == 0:
        return 0
    cos_thresholds = np.array([
        math.cos(footprint_geometry(e.altitude_m, theta_min_rad).phi_max_rad)
        for e in constellation.elements
    ])
    counts = _visible_counts(constellation, grid, timeline, cos_thresholds)
    return int(counts.min())
