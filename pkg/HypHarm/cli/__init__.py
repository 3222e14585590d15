"""Command-line front end for HypHarm."""

from .commands import cli
from .run_config import RunConfig
from .runner import RunResult, run

__all__ = ["RunConfig", "RunResult", "cli", "run"]
