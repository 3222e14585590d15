"""Numerical services for HypHarm."""
