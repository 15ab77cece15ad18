"""Typed exceptions used across the toolkit.

The CLI maps these onto distinct exit codes: parameter errors exit 2,
geometry/capacity infeasibility exits 3, IO failures exit 4.
"""


class ConstellationError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(ConstellationError, ValueError):
    """An input violates a documented precondition."""


class GeometryError(ConstellationError):
    """A geometric request is infeasible (e.g. coverage angle too wide
    for the requested altitude, or a degenerate communication range)."""


class CapacityError(ConstellationError):
    """Capacity analytics cannot be evaluated (zero spectral efficiency)."""
