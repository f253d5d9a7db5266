import click

from app.cli.deps import build_config, cap_options, output_options, q_grid_option, run_and_emit
from app.models.schemas import Command, OutputFormat


@click.command("explore")
@click.option("--r", "r", type=int, default=2, show_default=True)
@click.option("--s", "s", type=int, default=2, show_default=True)
@click.option("--q", "q", default=None, help="Numeric q (default 1).")
@click.option("--symbolic-q", is_flag=True, default=False, help="Keep q symbolic; SM becomes PSM.")
@click.option("--depth", type=int, default=None, help="Log-convexity iteration depth.")
@click.option("--n", "n", type=int, default=None, help="Terms fed to the iteration (default 2*depth+1).")
@click.option("--sm-order", type=int, default=None, help="Hankel order of the SM (or PSM) check.")
@click.option("--q-sm-order", type=int, default=None, help="Hankel order of the q-SM check.")
@click.option("--slcx-prefix", type=int, default=None, help="Number of terms for the q-SLCX check.")
@q_grid_option
@cap_options
@output_options(OutputFormat.JSON)
def explore(fmt, out, r, s, **options):
    """Run concurrent finite checks on the generalized Apery polynomials A_n(r,s;q)."""
    config = build_config(Command.EXPLORE, fmt, family="apery_general", r=r, s=s, **options)
    run_and_emit(config, out)
