"""Tests for result records."""

import math

import numpy as np
import pytest

from HypHarm.models.geometry import BallPoint
from HypHarm.models.params import ExponentPair, QuadratureMethod
from HypHarm.models.reports import (
    MAX_TOLERANCE,
    CheckResult,
    IntegralEstimate,
    SharpnessReport,
    TableRow,
)


class TestIntegralEstimate:
    """Test cases for IntegralEstimate."""

    def test_magnitude(self):
        """Test the Euclidean norm and its propagated error."""
        estimate = IntegralEstimate(
            np.array([3.0, 4.0]),
            np.array([0.3, 0.4]),
            QuadratureMethod.MONTE_CARLO,
            100,
        )
        assert estimate.magnitude == pytest.approx(5.0)
        assert estimate.magnitude_stderr == pytest.approx(math.sqrt(3.37) / 5.0)
        assert estimate.scalar == 3.0

    def test_zero_value(self):
        """Test the error of a vanishing integral."""
        estimate = IntegralEstimate(
            np.zeros(2), np.array([0.3, 0.4]), QuadratureMethod.MONTE_CARLO, 10
        )
        assert estimate.magnitude_stderr == pytest.approx(0.5)

    def test_to_dict(self):
        """Test the report form."""
        estimate = IntegralEstimate(
            np.array([1.0]), np.zeros(1), QuadratureMethod.ZONAL_GAUSS_LEGENDRE, 200
        )
        assert estimate.to_dict() == {
            "value": [1.0],
            "stderr": [0.0],
            "method": "zonal",
            "evaluations": 200,
        }


class TestSharpnessReport:
    """Test cases for SharpnessReport."""

    def _report(self, ratio, error):
        return SharpnessReport(
            x=BallPoint.from_radius(0.5, 3),
            exponents=ExponentPair.from_p(2.0),
            lhs=ratio,
            rhs=1.0,
            ratio=ratio,
            quadrature_error=error,
        )

    def test_tolerance_floor(self):
        """Test that an exact quadrature still leaves room for rounding."""
        report = self._report(1.0 + 5e-13, 0.0)
        assert report.tolerance == pytest.approx(1e-12)
        assert report.holds
        assert report.sharp

    def test_violation(self):
        """Test that a ratio well above 1 neither holds nor is sharp."""
        report = self._report(1.01, 1e-6)
        assert not report.holds
        assert not report.sharp

    def test_not_sharp(self):
        """Test that a ratio well below 1 holds without being sharp."""
        report = self._report(0.5, 1e-6)
        assert report.holds
        assert not report.sharp

    def test_unresolved_quadrature(self):
        """Test that a large quadrature error cannot make a poor ratio sharp."""
        report = self._report(0.568, 0.866)
        assert report.tolerance == MAX_TOLERANCE
        assert not report.resolved
        assert not report.sharp
        assert report.holds
        assert not self._report(1.2, 0.866).holds

    def test_to_dict(self):
        """Test the report form."""
        data = self._report(1.0, 1e-10).to_dict()
        assert data["resolved"] is True
        assert data["exponents"] == {"p": 2.0, "q": 2.0}
        assert data["x"]["radius"] == 0.5
        assert data["sharp"] is True


class TestCheckResult:
    """Test cases for CheckResult."""

    def test_non_finite_encoding(self):
        """Test that NaN and infinity become strings."""
        result = CheckResult("n3", "anchor", False, math.nan, math.inf)
        data = result.to_dict()
        assert data["measured"] == "nan"
        assert data["tolerance"] == "inf"
        assert data["detail"] == {}


class TestTableRow:
    """Test cases for TableRow."""

    def test_values_follow_columns(self):
        """Test that values() lines up with COLUMNS."""
        row = TableRow(3, 2.0, 2.0, 0.5, 1.9, 5.3, 1.8, 3.0)
        assert row.values() == (3, 2.0, 2.0, 0.5, 1.9, 5.3, 1.8, 3.0)
        assert len(row.values()) == len(TableRow.COLUMNS)

    def test_to_dict(self):
        """Test infinite p and the error field."""
        row = TableRow(3, 1.0, math.inf, 0.5, 1.0, 1.0, 1.0, 1.0)
        assert row.to_dict()["p"] == "inf"
        assert "error" not in row.to_dict()
        failed = TableRow(3, 2.0, math.nan, 1.0, *(math.nan,) * 4, error="bad radius")
        assert failed.to_dict()["error"] == "bad radius"
        assert failed.to_dict()["C_q_x"] == "nan"
