import click

from app.cli.deps import build_config, cap_options, output_options, run_and_emit, source_options
from app.models.schemas import Command, IterOperator, OutputFormat


@click.command("iterate")
@source_options
@click.option("--operator", type=click.Choice([o.value for o in IterOperator]),
              default=IterOperator.LOGCONVEX.value, show_default=True)
@click.option("--depth", type=int, default=None, help="Number of applications; default 2.")
@click.option("--n", "n", type=int, default=None, help="Number of input terms; default 12.")
@click.option("--strict", is_flag=True, default=False, help="Require strictly positive levels.")
@cap_options
@output_options(OutputFormat.JSON)
def iterate(fmt, out, **options):
    """Apply the log-convexity (or log-concavity) operator repeatedly and report each level."""
    config = build_config(Command.ITERATE, fmt, **options)
    run_and_emit(config, out)
