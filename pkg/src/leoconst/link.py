"""Channel model, interference/rate analytics, and backhaul capacity.

Large-scale gain of a device-satellite link at distance d:

    g^2 = (c/(4*pi*f_c*d))^2 * G_sat * G_dev * rain_loss

where rain_loss is the linear rain attenuation in (0, 1]. Small-scale
fading is Rician over M_a antennas, normalized so E||h_tilde||^2 = M_a.

The mean interference at a satellite from a homogeneous Poisson field of
devices (density lambda per m^2, activity eps, power xi, sequence length
L) over its full visible cap integrates to

    E[I] = xi*eps*L*M_a*lambda * (c/(4*pi*f_c))^2 * G_sat*G_dev*rain_loss
           * (pi*R_e/(R_e+h)) * ln(2*R_e/h + 1)

and the mean spectral efficiency over a device's serving cap reduces to
the mean of log2(1 + Psi/u) for u uniform on [h^2, d_max^2]:

    Xi = 1/((d_max^2 - h^2) * ln 2) * integral_{h^2}^{d_max^2} ln(1 + Psi/u) du

with the closed-form antiderivative u*ln(1 + Psi/u) + Psi*ln(u + Psi).
Both closed forms are validated against independent oracles (Poisson
Monte Carlo sampling and adaptive quadrature) in the test suite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import EARTH_RADIUS_M, SPEED_OF_LIGHT_M_S
from .errors import CapacityError, GeometryError, ParameterError


@dataclass(frozen=True)
class LinkEnvironment:
    """All RF and traffic parameters of the device-satellite link.

    Strictly SI and linear units: gains are linear power ratios,
    rain_loss is the linear attenuation factor in (0, 1], device density
    is per square meter, powers are watts.
    """

    carrier_frequency_hz: float
    bandwidth_hz: float
    sat_gain: float
    dev_gain: float
    rain_loss: float
    rician_factor: float
    antennas: int
    sequence_length: int
    activity: float
    device_density_per_m2: float
    tx_power_w: float
    noise_var_w: float
    altitude_m: float
    min_elevation_rad: float

    def __post_init__(self):
        positives = (
            "carrier_frequency_hz", "bandwidth_hz", "sat_gain", "dev_gain",
            "rician_factor", "antennas", "sequence_length",
            "device_density_per_m2", "tx_power_w", "noise_var_w", "altitude_m",
        )
        for name in positives:
            if getattr(self, name) <= 0:
                raise ParameterError(f"{name} must be strictly positive, "
                                     f"got {getattr(self, name)}")
        if not 0 < self.activity <= 1:
            raise ParameterError(f"activity must be in (0, 1], got {self.activity}")
        if not 0 < self.rain_loss <= 1:
            raise ParameterError(
                f"rain_loss must be a linear attenuation in (0, 1], "
                f"got {self.rain_loss}")
        if not 0 <= self.min_elevation_rad <= math.pi / 2:
            raise ParameterError("min_elevation_rad outside [0, pi/2]")

    @property
    def free_space_factor_m2(self) -> float:
        """(c/(4*pi*f_c))^2, the path-loss numerator in m^2."""
        return (SPEED_OF_LIGHT_M_S / (4.0 * math.pi * self.carrier_frequency_hz))**2

    def large_scale_gain(self, distance_m: float) -> float:
        """Amplitude gain g at the given slant distance."""
        g2 = (self.free_space_factor_m2 / distance_m**2
              * self.sat_gain * self.dev_gain * self.rain_loss)
        return math.sqrt(g2)


def slant_range(elevation_rad: float, altitude_m: float) -> float:
    """Device-to-satellite distance at a given elevation angle.

    d = -R_e*sin(theta) + sqrt((R_e*sin(theta))^2 + h^2 + 2*h*R_e);
    equals h at zenith and sqrt(h^2 + 2*h*R_e) at the horizon.
    """
    if not 0 <= elevation_rad <= math.pi / 2:
        raise ParameterError("elevation outside [0, pi/2]")
    if altitude_m <= 0:
        raise ParameterError(f"altitude must be positive, got {altitude_m}")
    rs = EARTH_RADIUS_M * math.sin(elevation_rad)
    return -rs + math.sqrt(rs * rs + altitude_m * altitude_m
                           + 2.0 * altitude_m * EARTH_RADIUS_M)


@dataclass(frozen=True)
class ChannelSample:
    """One draw of the full channel vector g * h_tilde."""

    vector: np.ndarray
    large_scale_gain: float

    @property
    def small_scale(self) -> np.ndarray:
        return self.vector / self.large_scale_gain


def array_response(env: LinkEnvironment, off_axis_rad: float, azimuth_rad: float,
                   array_diameter_m: float) -> np.ndarray:
    """Uniform-circular-array response vector; every entry has modulus
    1/sqrt(M_a) so the vector is unit norm."""
    m = env.antennas
    phase_scale = (math.pi * array_diameter_m * env.carrier_frequency_hz
                   / SPEED_OF_LIGHT_M_S * math.sin(off_axis_rad))
    j = np.arange(m)
    eta = 2.0 * math.pi * j / m
    return np.exp(1j * phase_scale * np.cos(azimuth_rad - eta)) / math.sqrt(m)


def sample_channel(env: LinkEnvironment, off_axis_rad: float, azimuth_rad: float,
                   distance_m: float, rng: np.random.Generator,
                   array_diameter_m: float = 0.5) -> ChannelSample:
    """Draw one Rician channel realization for the given link geometry.

    The LoS part is sqrt(M_a) times the array response; the NLoS part is
    complex Gaussian with unit per-entry variance, which is the
    normalization that makes E||h_tilde||^2 = M_a for every Rician factor.
    """
    m = env.antennas
    k = env.rician_factor
    los = math.sqrt(m) * array_response(env, off_axis_rad, azimuth_rad,
                                        array_diameter_m)
    nlos = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / math.sqrt(2.0)
    h_tilde = math.sqrt(k / (k + 1.0)) * los + math.sqrt(1.0 / (k + 1.0)) * nlos
    g = env.large_scale_gain(distance_m)
    return ChannelSample(vector=g * h_tilde, large_scale_gain=g)


def _visible_cap_cos(altitude_m: float) -> float:
    """cos of the Earth-central angular radius of the cap visible from a
    satellite (horizon-limited)."""
    return EARTH_RADIUS_M / (EARTH_RADIUS_M + altitude_m)


def mean_interference(env: LinkEnvironment) -> float:
    """Mean co-channel interference power (W) at one satellite.

    Closed form of the Poisson-field integral over the full visible cap;
    dimensionally consistent completion of the cap integral (the factor
    pi*R_e/(R_e+h) carries the 1/(2*R_e*(R_e+h)) of the substitution).
    """
    h = env.altitude_m
    if h <= 0:
        raise ParameterError(f"altitude must be positive, got {h}")
    geometric = (math.pi * EARTH_RADIUS_M / (EARTH_RADIUS_M + h)
                 * math.log(2.0 * EARTH_RADIUS_M / h + 1.0))
    return (env.tx_power_w * env.activity * env.sequence_length * env.antennas
            * env.device_density_per_m2 * env.free_space_factor_m2
            * env.sat_gain * env.dev_gain * env.rain_loss * geometric)


def hppp_interference_mc(env: LinkEnvironment, realizations: int = 200,
                         seed: int = 0, density_inflation: float = 1.0) -> float:
    """Monte Carlo estimate of the mean interference at one satellite.

    Independent of the closed form: samples device positions as a
    homogeneous Poisson process on the visible spherical cap (area-uniform
    via cos of the central angle), sums xi*L*M_a*g^2 per active device,
    and averages over realizations. density_inflation scales the sampled
    intensity for variance control; the estimate is divided back by it
    (the expectation is linear in density). Deterministic for a fixed
    seed; realizations are reduced in a fixed order.
    """
    if realizations < 1:
        raise ParameterError("need at least one realization")
    rng = np.random.default_rng(seed)
    h = env.altitude_m
    cos_cap = _visible_cap_cos(h)
    cap_area = 2.0 * math.pi * EARTH_RADIUS_M**2 * (1.0 - cos_cap)
    intensity = env.activity * env.device_density_per_m2 * density_inflation
    expected_devices = intensity * cap_area

    per_device = (env.tx_power_w * env.sequence_length * env.antennas
                  * env.free_space_factor_m2 * env.sat_gain * env.dev_gain
                  * env.rain_loss)
    r_orbit = EARTH_RADIUS_M + h
    totals = np.zeros(realizations)
    for i in range(realizations):
        n = rng.poisson(expected_devices)
        if n == 0:
            continue
        cos_phi = rng.uniform(cos_cap, 1.0, size=n)
        d2 = EARTH_RADIUS_M**2 + r_orbit**2 - 2.0 * EARTH_RADIUS_M * r_orbit * cos_phi
        totals[i] = per_device * np.sum(1.0 / d2)
    return float(totals.mean() / density_inflation)


def spectral_efficiency_from_psi(psi_m2: float, altitude_m: float,
                                 d_max_m: float) -> float:
    """Mean of log2(1 + Psi/u) for u uniform on [h^2, d_max^2].

    Uses the antiderivative u*ln(1 + Psi/u) + Psi*ln(u + Psi), arranged
    with log1p so large Psi/u ratios stay accurate.
    """
    if d_max_m <= altitude_m:
        raise GeometryError(
            f"maximum communication distance {d_max_m} m must exceed the "
            f"altitude {altitude_m} m")
    if psi_m2 < 0:
        raise ParameterError(f"psi must be nonnegative, got {psi_m2}")
    if psi_m2 == 0.0:
        return 0.0
    lo, hi = altitude_m**2, d_max_m**2
    integral = (hi * math.log1p(psi_m2 / hi) - lo * math.log1p(psi_m2 / lo)
                + psi_m2 * math.log1p((hi - lo) / (lo + psi_m2)))
    return integral / ((hi - lo) * math.log(2.0))


@dataclass(frozen=True)
class SpectralEfficiency:
    """Mean spectral efficiency Xi with its SINR scale Psi."""

    xi_bits_per_hz: float
    psi_m2: float
    d_max_m: float
    mean_interference_w: float


def mean_spectral_efficiency(env: LinkEnvironment) -> SpectralEfficiency:
    """Mean per-link spectral efficiency over a device's serving cap.

    The serving cap spans slant distances from h (zenith) to
    d_max = slant_range(theta_min); Psi folds transmit power, array size,
    path loss and the mean interference plus noise.
    """
    e_i = mean_interference(env)
    psi = (env.tx_power_w * env.sequence_length * env.antennas
           * env.free_space_factor_m2 * env.sat_gain * env.dev_gain
           * env.rain_loss) / (e_i + env.noise_var_w)
    d_max = slant_range(env.min_elevation_rad, env.altitude_m)
    xi = spectral_efficiency_from_psi(psi, env.altitude_m, d_max)
    return SpectralEfficiency(xi_bits_per_hz=xi, psi_m2=psi, d_max_m=d_max,
                              mean_interference_w=e_i)


def required_satellite_count(capacity_threshold_bps: float, bandwidth_hz: float,
                             xi_bits_per_hz: float) -> float:
    """Serving satellites needed to reach the capacity threshold,
    C_th / (B_w * Xi). Real-valued; callers compare against integer
    visible counts."""
    if capacity_threshold_bps < 0:
        raise ParameterError("capacity threshold must be nonnegative")
    if bandwidth_hz <= 0:
        raise ParameterError("bandwidth must be positive")
    if xi_bits_per_hz <= 0:
        raise CapacityError(
            "zero spectral efficiency: no satellite count can meet the "
            "capacity threshold")
    return capacity_threshold_bps / (bandwidth_hz * xi_bits_per_hz)


def mean_capacity(n_serving: float, mean_rate_bps: float) -> float:
    """Total backhaul capacity from n_serving satellites at the mean
    per-link rate."""
    if n_serving < 0 or mean_rate_bps < 0:
        raise ParameterError("capacity inputs must be nonnegative")
    return n_serving * mean_rate_bps


@dataclass(frozen=True)
class CapacityResult:
    """Backhaul analytics bundle for one environment and visible count."""

    mean_interference_w: float
    psi_m2: float
    xi_bits_per_hz: float
    mean_rate_bps: float
    mean_capacity_bps: float
    required_count: float


def capacity_result(env: LinkEnvironment, capacity_threshold_bps: float,
                    n_serving: float) -> CapacityResult:
    """Assemble interference, rate, capacity and the required-count
    transform of the capacity constraint for n_serving visible satellites."""
    se = mean_spectral_efficiency(env)
    rate = env.bandwidth_hz * se.xi_bits_per_hz
    return CapacityResult(
        mean_interference_w=se.mean_interference_w,
        psi_m2=se.psi_m2,
        xi_bits_per_hz=se.xi_bits_per_hz,
        mean_rate_bps=rate,
        mean_capacity_bps=mean_capacity(n_serving, rate),
        required_count=required_satellite_count(
            capacity_threshold_bps, env.bandwidth_hz, se.xi_bits_per_hz),
    )
