"""HypHarm - sharp Hardy-space estimates for hyperbolic harmonic mappings."""

__version__ = "0.1.0"
