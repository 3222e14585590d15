"""Entry point for the hypharm command."""

import logging
import sys
from typing import Optional, Sequence

import click

from HypHarm.cli import cli
from HypHarm.cli.runner import EXIT_INVALID, EXIT_OK
from HypHarm.utils.logging import setup_logging

logger = logging.getLogger("HypHarm")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit status.

    Click usage errors map to status 1 so that 2 stays reserved for
    verification failures.
    """
    log_file = setup_logging()
    if log_file:  # Only log if debug mode is enabled
        logger.info(f"Logging initialized. Log file: {log_file}")

    try:
        status = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="hypharm",
            standalone_mode=False,
        )
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_INVALID
    except click.ClickException as e:
        e.show()
        return EXIT_INVALID
    return status if isinstance(status, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
