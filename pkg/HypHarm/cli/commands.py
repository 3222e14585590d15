"""
Command-line interface for HypHarm.

Usage:
    hypharm constant --n 3 --q 2 --radius 0.5     # C_q(x) and C_q
    hypharm bound --n 4 --p 1.5 --radius 0.8      # pointwise and uniform bounds
    hypharm kernel --n 3 --coords 0,0,0.5         # kernel values and normalization
    hypharm verify --suite sharpness --p 2        # analytic identities, pass/fail
    hypharm table --n 3 --q-values 1.5,2,3        # (q, |x|) sweep as CSV/JSON
"""

from pathlib import Path
from typing import Optional, Tuple

import click

from .. import __version__
from ..config import config
from ..errors import ValidationError
from ..models.params import QuadratureMethod
from ..services.sweep import resolve_thread_count
from ..services.verification import SUITE_NAMES
from .run_config import DEFAULT_Q_VALUES, DEFAULT_RADII, FORMATS, RunConfig
from .runner import EXIT_INVALID, run

__all__ = ["cli"]


def _parse_floats(ctx, param, value: Optional[str]) -> Optional[Tuple[float, ...]]:
    """Comma-separated floats, e.g. "0,0,0.5"."""
    if value is None:
        return None
    try:
        return tuple(float(item) for item in value.split(",") if item.strip())
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}")


def _config_default(key: str):
    return lambda: config.get(key)


POINT_OPTIONS = [
    click.option("--radius", type=float, default=None, help="|x|, with x along --axis"),
    click.option(
        "--axis",
        type=int,
        default=None,
        help="1-based coordinate axis for --radius (default: n)",
    ),
    click.option(
        "--coords", callback=_parse_floats, help="Explicit point, e.g. 0,0.3,0.4"
    ),
]


EXPONENT_OPTIONS = [
    click.option("--p", "p", type=float, default=None, help="Exponent p in (1, inf]"),
    click.option("--q", "q", type=float, default=None, help="Conjugate exponent q"),
]


RUN_OPTIONS = [
    click.option(
        "--method",
        type=click.Choice([m.value for m in QuadratureMethod]),
        default=_config_default("quadrature.method"),
        show_default="quadrature.method",
        help="Surface quadrature",
    ),
    click.option(
        "--nodes",
        type=int,
        default=_config_default("quadrature.nodes"),
        show_default="quadrature.nodes",
        help="Zonal quadrature nodes",
    ),
    click.option(
        "--samples",
        type=int,
        default=_config_default("monte_carlo.samples"),
        show_default="monte_carlo.samples",
        help="Monte Carlo samples",
    ),
    click.option(
        "--seed",
        type=int,
        default=_config_default("monte_carlo.seed"),
        show_default="monte_carlo.seed",
        help="Monte Carlo seed",
    ),
    click.option(
        "--threads",
        type=int,
        default=None,
        help="Worker threads (default: HYPHARM_THREADS or one per CPU)",
    ),
    click.option(
        "--format",
        "fmt",
        type=click.Choice(FORMATS),
        default=_config_default("output.format"),
        show_default="output.format",
    ),
    click.option(
        "--output",
        "-o",
        type=click.Path(dir_okay=False, path_type=Path),
        default=None,
        help="Write the report to a file instead of standard output",
    ),
    click.option("--timing", is_flag=True, help="Include wall time in the report"),
]


def options(*groups):
    """Apply option lists in order, first option shown first."""

    def decorate(func):
        for group in reversed(groups):
            for option in reversed(group):
                func = option(func)
        return func

    return decorate


def _execute(ctx: click.Context, command: str, **fields):
    """Build a RunConfig, run it, print the report and exit with its status."""
    fmt = fields.pop("fmt")
    method = fields.pop("method")
    try:
        threads = resolve_thread_count(
            config.get("threads", 0) if fields["threads"] is None else fields["threads"]
        )
        fields["threads"] = threads
        run_config = RunConfig(
            command=command, format=fmt, method=QuadratureMethod(method), **fields
        )
    except (ValidationError, ValueError) as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_INVALID)

    result = run(run_config)
    if result.exit_code == EXIT_INVALID and result.text.startswith("Error:"):
        click.echo(result.text, err=True, nl=False)
    elif run_config.output is None:
        click.echo(result.text, nl=False)
    ctx.exit(result.exit_code)


@click.group()
@click.version_option(version=__version__, prog_name="hypharm")
def cli():
    """
    Sharp pointwise estimates for hyperbolic harmonic mappings.

    Computes the constants C_q(x) and C_q of the Hardy-space bound
    |u(x)| <= C_q(x)^{1/q} / (1 - |x|^2)^{(n-1)/p} ||u||_p and checks the
    underlying identities numerically.

    Exit status: 0 success, 1 invalid input, 2 verification failure.
    """


@cli.command()
@click.option("--n", "n", type=int, default=3, show_default=True, help="Dimension")
@options(EXPONENT_OPTIONS, POINT_OPTIONS, RUN_OPTIONS)
@click.pass_context
def constant(ctx, **fields):
    """
    C_q(x) by its closed form and by quadrature, and C_q = sup C_q(x).

    Example:

        hypharm constant --n 3 --q 2 --radius 0.5
    """
    _execute(ctx, "constant", **fields)


@cli.command()
@click.option("--n", "n", type=int, default=3, show_default=True, help="Dimension")
@options(EXPONENT_OPTIONS, POINT_OPTIONS)
@click.option(
    "--sharpness-factor",
    type=float,
    default=_config_default("verify.sharpness_factor"),
    show_default="verify.sharpness_factor",
)
@options(RUN_OPTIONS)
@click.pass_context
def bound(ctx, **fields):
    """
    Pointwise and uniform bound factors, with a sharpness check at x.

    Example:

        hypharm bound --n 4 --p 1.5 --radius 0.8
    """
    _execute(ctx, "bound", **fields)


@cli.command()
@click.option("--n", "n", type=int, default=3, show_default=True, help="Dimension")
@options(POINT_OPTIONS)
@click.option("--zeta", callback=_parse_floats, help="Boundary point (default e_n)")
@click.option(
    "--harmonic-step",
    type=float,
    default=_config_default("verify.harmonic_step"),
    show_default="verify.harmonic_step",
)
@options(RUN_OPTIONS)
@click.pass_context
def kernel(ctx, **fields):
    """
    Poisson-Szego kernel at (x, zeta), its maximum and normalization residual.

    Example:

        hypharm kernel --n 3 --radius 0.5 --zeta 1,0,0
    """
    _execute(ctx, "kernel", **fields)


@cli.command()
@click.option("--n", "n", type=int, default=None, help="Focus on one dimension")
@options(EXPONENT_OPTIONS)
@click.option("--radius", type=float, default=None, help="Focus on one radius")
@click.option(
    "--suite",
    type=click.Choice(SUITE_NAMES),
    default="all",
    show_default=True,
)
@click.option(
    "--harmonic-step",
    type=float,
    default=_config_default("verify.harmonic_step"),
    show_default="verify.harmonic_step",
)
@click.option(
    "--sharpness-factor",
    type=float,
    default=_config_default("verify.sharpness_factor"),
    show_default="verify.sharpness_factor",
)
@options(RUN_OPTIONS)
@click.pass_context
def verify(ctx, **fields):
    """
    Run verification suites and report pass/fail with measured errors.

    Example:

        hypharm verify --n 3 --suite sharpness --p 2 --radius 0.5
    """
    _execute(ctx, "verify", **fields)


@cli.command()
@click.option("--n", "n", type=int, default=3, show_default=True, help="Dimension")
@click.option(
    "--q-values",
    callback=_parse_floats,
    default=",".join(str(q) for q in DEFAULT_Q_VALUES),
    show_default=True,
)
@click.option(
    "--radii",
    callback=_parse_floats,
    default=",".join(str(r) for r in DEFAULT_RADII),
    show_default=True,
)
@options(RUN_OPTIONS)
@click.pass_context
def table(ctx, **fields):
    """
    Sweep C_q(x), C_q and both bounds over a (q, |x|) grid.

    Example:

        hypharm table --n 3 --q-values 1.5,2,3 --radii 0,0.5,0.9 --format csv
    """
    _execute(ctx, "table", **fields)
