"""Formatting utilities for reports."""

import math


def format_quantity(value: float, digits: int = 10) -> str:
    """Format a float for terminal tables.

    Args:
        value: Number to format
        digits: Significant digits

    Returns:
        Formatted string; "inf", "-inf" and "nan" for non-finite values
    """
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{digits}g}"


def format_duration(seconds: float) -> str:
    """Format a wall time showing at most 2 units (e.g., "1m 5s", "2.35s", "12ms")."""
    if seconds < 0:
        return "N/A"
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"
    if seconds < 60:
        return f"{seconds:.2f}s"
    minutes, secs = divmod(int(seconds), 60)
    if minutes < 60:
        return f"{minutes}m {secs}s"
    hours, minutes = divmod(minutes, 60)
    return f"{hours}h {minutes}m"
