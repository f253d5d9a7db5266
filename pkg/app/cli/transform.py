import click

from app.cli.deps import build_config, cap_options, output_options, run_and_emit, source_options, triangle_options
from app.models.schemas import Command, OutputFormat


@click.command("transform")
@source_options
@triangle_options
@click.option("--n", "n", type=int, default=None, help="Number of output terms; default 10.")
@cap_options
@output_options(OutputFormat.TEXT)
def transform(fmt, out, **options):
    """z_n = sum_k a(n,k) x_k for a triangle a and input sequence x."""
    config = build_config(Command.TRANSFORM, fmt, **options)
    run_and_emit(config, out)


@click.command("convolve")
@source_options
@triangle_options
@click.option("--y-family", default=None, help="Family of the second sequence (default: same as --family).")
@click.option("--y-param", "y_params", multiple=True, metavar="KEY=VALUE")
@click.option("--y-seq-file", type=click.Path(dir_okay=False), default=None, help="JSON file for the second sequence.")
@click.option("--n", "n", type=int, default=None, help="Number of output terms; default 10.")
@cap_options
@output_options(OutputFormat.TEXT)
def convolve(fmt, out, **options):
    """z_n = sum_k a(n,k) x_k y_(n-k) for a triangle a and sequences x, y."""
    config = build_config(Command.CONVOLVE, fmt, **options)
    run_and_emit(config, out)
