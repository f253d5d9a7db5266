from pathlib import Path

import click

from app.cli.deps import FORMAT_CHOICE, emit
from app.models.schemas import OutputFormat
from app.services.runner import RunService


@click.command("replay")
@click.argument("report", type=click.Path(exists=False, dir_okay=False, path_type=Path))
@click.option("--format", "fmt", type=FORMAT_CHOICE, default=OutputFormat.JSON.value, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
def replay(report, fmt, out):
    """Re-run the configuration embedded in a saved JSON report."""
    result, code = RunService().replay(report)
    emit(result, fmt, out)
    click.get_current_context().exit(code)
