"""Utility modules for HypHarm."""

from .logging import setup_logging

__all__ = ["setup_logging"]
