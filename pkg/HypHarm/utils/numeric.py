"""Small numeric helpers shared by the services."""

import math

# Parameters like -(n-1)(q-1) are computed from floating q and land near
# integers; anything this close is treated as the integer.
INTEGER_TOLERANCE = 1e-12


def snap_integer(value: float, tol: float = INTEGER_TOLERANCE) -> float:
    """Return the nearest integer (as float) if value is within tol of it.

    Args:
        value: Value to snap
        tol: Absolute snapping tolerance

    Returns:
        float: The snapped value, or value unchanged
    """
    nearest = round(value)
    if abs(value - nearest) <= tol:
        return float(nearest)
    return value


def is_integer(value: float, tol: float = INTEGER_TOLERANCE) -> bool:
    """Check whether value is an integer within tol."""
    return math.isfinite(value) and abs(value - round(value)) <= tol


def is_nonpositive_integer(value: float, tol: float = INTEGER_TOLERANCE) -> bool:
    """Check whether value is 0, -1, -2, ... within tol."""
    return is_integer(value, tol) and round(value) <= 0
