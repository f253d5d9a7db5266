import click

from app.cli.deps import FORMAT_CHOICE
from app.services.families.factory import SequenceFactory, TriangleFactory
from app.services.recursive.presets import available_presets, get_preset
from app.services.report_renderer import dumps


@click.command("families")
@click.option("--format", "fmt", type=FORMAT_CHOICE, default="text", show_default=True)
def families(fmt):
    """List registered sequence families, triangles and recursive presets."""
    listing = {
        "families": SequenceFactory.available_families(),
        "triangles": TriangleFactory.available_triangles(),
        "presets": available_presets(),
    }
    if fmt == "json":
        click.echo(dumps(listing).decode())
        return
    for section in ("families", "triangles"):
        click.echo(f"{section}:")
        for name in listing[section]:
            click.echo(f"  {name}")
    click.echo("presets:")
    for name in listing["presets"]:
        click.echo(f"  {name:<14} {get_preset(name).description}")
