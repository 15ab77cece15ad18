"""Space-segment cost model: manufacturing, launch, and insurance.

Per-satellite costs as a function of satellite mass W (kg) and orbit
altitude h (km):

    manufacture = 0.00185 * W
    launch      = 0.000166 * W * (h / 1.609)^0.43
    insurance   = beta_ins * (manufacture + launch)

The 1.609 divisor converts km to miles inside the launch term. The
coefficients are replaceable configuration values; costs are treated as
opaque relative units throughout.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError

MANUFACTURE_COEFF_DEFAULT = 0.00185
LAUNCH_COEFF_DEFAULT = 0.000166


@dataclass(frozen=True)
class CostBreakdown:
    """Per-satellite cost components and the constellation total."""

    manufacture: float
    launch: float
    insurance: float
    per_satellite_total: float
    constellation_total: float


def space_segment_cost(sats_per_plane: int, planes: int, altitude_km: float,
                       sat_mass_kg: float, insurance_ratio: float,
                       manufacture_coeff: float = MANUFACTURE_COEFF_DEFAULT,
                       launch_coeff: float = LAUNCH_COEFF_DEFAULT) -> CostBreakdown:
    """Total space-segment cost of an N x P constellation.

    altitude_km must be in kilometers (the launch term's 1.609 factor is a
    km-to-mile conversion); insurance_ratio may be zero.
    """
    if sats_per_plane <= 0 or planes <= 0:
        raise ParameterError(
            f"satellite counts must be positive, got N={sats_per_plane}, "
            f"P={planes}")
    if altitude_km <= 0 or sat_mass_kg <= 0:
        raise ParameterError(
            f"altitude and mass must be positive, got h={altitude_km} km, "
            f"W={sat_mass_kg} kg")
    if insurance_ratio < 0:
        raise ParameterError(
            f"insurance ratio must be nonnegative, got {insurance_ratio}")

    manufacture = manufacture_coeff * sat_mass_kg
    launch = launch_coeff * sat_mass_kg * (altitude_km / 1.609) ** 0.43
    insurance = insurance_ratio * (manufacture + launch)
    per_satellite = manufacture + launch + insurance
    return CostBreakdown(
        manufacture=manufacture,
        launch=launch,
        insurance=insurance,
        per_satellite_total=per_satellite,
        constellation_total=sats_per_plane * planes * per_satellite,
    )
