import click

from app.cli.deps import build_config, cap_options, output_options, run_and_emit, source_options, triangle_options
from app.models.schemas import Command, OutputFormat


@click.command("generate")
@source_options
@triangle_options
@click.option("--n", "n", type=int, default=None, help="Number of terms (or triangle rows); default 10.")
@click.option("--symbolic-q", is_flag=True, default=False, help="Keep q symbolic even when --q is given.")
@cap_options
@output_options(OutputFormat.TEXT)
def generate(fmt, out, **options):
    """Print the first N terms of a sequence or the first N rows of a triangle."""
    config = build_config(Command.GENERATE, fmt, **options)
    run_and_emit(config, out)
