"""Test package for HypHarm."""
