"""Physical constants shared across the toolkit (SI units)."""

# Earth radius, km value taken from the system-parameter table of the
# simulation setup (spherical Earth model).
EARTH_RADIUS_M = 6378.14e3

# WGS-84 gravitational parameter and Earth rotation rate.
MU_EARTH_M3_S2 = 3.986004418e14
EARTH_ROTATION_RAD_S = 7.2921159e-5

SPEED_OF_LIGHT_M_S = 299792458.0

SIDEREAL_DAY_S = 86164.1
