"""Tests for (q, |x|) sweeps."""

import math
import os
from unittest.mock import patch

import pytest

from HypHarm.errors import ValidationError
from HypHarm.services.sweep import resolve_thread_count, sweep_table, table_row


class TestResolveThreadCount:
    """Test cases for resolve_thread_count."""

    def test_explicit(self):
        """Test that a positive count is kept."""
        assert resolve_thread_count(3) == 3
        assert resolve_thread_count("2") == 2

    def test_zero_means_cpu_count(self):
        """Test that 0 uses one worker per CPU."""
        with patch("HypHarm.services.sweep.os.cpu_count", return_value=6):
            assert resolve_thread_count(0) == 6
        with patch("HypHarm.services.sweep.os.cpu_count", return_value=None):
            assert resolve_thread_count(0) == 1
        assert resolve_thread_count(0) == (os.cpu_count() or 1)

    def test_invalid(self):
        """Test that negative or non-numeric values are rejected."""
        with pytest.raises(ValidationError):
            resolve_thread_count(-1)
        with pytest.raises(ValidationError):
            resolve_thread_count("many")
        with pytest.raises(ValidationError):
            resolve_thread_count(None)


class TestTableRow:
    """Test cases for table_row."""

    def test_anchor(self):
        """Test the n = 3, q = 2, |x| = 0.5 cell."""
        row = table_row(3, 2.0, 0.5)
        assert row.p == 2.0
        assert row.C_q_x == pytest.approx(91.0 / 48.0, abs=1e-12)
        assert row.C_q_sup == pytest.approx(16.0 / 3.0, abs=1e-12)
        assert row.bound_pointwise == pytest.approx(math.sqrt(91.0 / 48.0) / 0.75)
        assert row.bound_uniform == pytest.approx(math.sqrt(16.0 / 3.0) / 0.75)
        assert row.error is None

    def test_q_one(self):
        """Test the p = inf endpoint."""
        row = table_row(4, 1.0, 0.3)
        assert math.isinf(row.p)
        assert row.C_q_x == row.C_q_sup == 1.0
        assert row.bound_pointwise == row.bound_uniform == 1.0

    def test_failure_is_recorded(self):
        """Test that an invalid cell becomes a row with an error."""
        row = table_row(3, 2.0, 1.0)
        assert row.error
        assert math.isnan(row.C_q_x)
        assert row.radius == 1.0


class TestSweepTable:
    """Test cases for sweep_table."""

    def test_q_major_order(self):
        """Test that rows run over radii for each q in turn."""
        rows = sweep_table(3, (1.5, 2.0), (0.0, 0.5, 0.9))
        assert [(row.q, row.radius) for row in rows] == [
            (1.5, 0.0),
            (1.5, 0.5),
            (1.5, 0.9),
            (2.0, 0.0),
            (2.0, 0.5),
            (2.0, 0.9),
        ]

    def test_thread_independent(self):
        """Test that rows are identical for any thread count."""
        q_values = (1.25, 1.5, 2.0, 3.0, 5.0)
        radii = (0.0, 0.25, 0.5, 0.75, 0.9)
        serial = sweep_table(4, q_values, radii, threads=1)
        parallel = sweep_table(4, q_values, radii, threads=4)
        assert serial == parallel

    def test_bounds_increase_with_radius(self):
        """Test that both bounds grow towards the boundary."""
        rows = sweep_table(3, (2.0,), (0.0, 0.25, 0.5, 0.75, 0.9))
        pointwise = [row.bound_pointwise for row in rows]
        assert pointwise == sorted(pointwise)
        assert all(row.bound_pointwise <= row.bound_uniform for row in rows)
