import click

from app.cli.deps import (
    build_config,
    cap_options,
    output_options,
    q_grid_option,
    run_and_emit,
    source_options,
    triangle_options,
)
from app.models.schemas import CheckTarget, Command, OutputFormat


@click.command("check")
@source_options
@triangle_options
@click.option("--property", "property", required=True,
              type=click.Choice([t.value for t in CheckTarget]), help="Property to certify.")
@click.option("--n", "n", type=int, default=None,
              help="Hankel order for matrix properties; number of terms for window properties.")
@click.option("--depth", type=int, default=None, help="m for m-log-convex (default 2).")
@q_grid_option
@click.option("--strict", is_flag=True, default=False, help="Require strict positivity.")
@click.option("--jacobi-size", type=int, default=None, help="Jacobi truncation size for --property jacobi.")
@cap_options
@output_options(OutputFormat.JSON)
def check(fmt, out, **options):
    """Certify one property of a sequence, triangle or Jacobi matrix.

    Exits 0 on pass and 3 on a certified failure.
    """
    config = build_config(Command.CHECK, fmt, **options)
    run_and_emit(config, out)
