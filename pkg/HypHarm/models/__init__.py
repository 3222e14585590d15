"""Data models for HypHarm."""

from .boundary import BoundaryFunction
from .geometry import BallPoint, UnitVector
from .params import ExponentPair, HypergeomParams, QuadratureMethod, QuadratureSpec
from .reports import CheckResult, IntegralEstimate, SharpnessReport, TableRow

__all__ = [
    "BallPoint",
    "BoundaryFunction",
    "CheckResult",
    "ExponentPair",
    "HypergeomParams",
    "IntegralEstimate",
    "QuadratureMethod",
    "QuadratureSpec",
    "SharpnessReport",
    "TableRow",
    "UnitVector",
]
