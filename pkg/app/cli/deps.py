"""
Options and helpers shared by the subcommands.

Each subcommand collects its click options, turns them into a RunConfig with
build_config(), and hands the RunConfig to RunService through run_and_emit().
"""
from functools import reduce
from pathlib import Path
from typing import Any, Callable, Optional

import click
from pydantic import ValidationError

from app.errors import InvalidParams
from app.logging_config import get_logger
from app.models.schemas import Caps, Command, OutputFormat, RunConfig
from app.services.families.loaders import load_recursive_file, load_sequence_file, load_triangle_file
from app.services.report_renderer import Report, ReportRenderer
from app.services.runner import RunService

logger = get_logger(__name__)

FORMAT_CHOICE = click.Choice([f.value for f in OutputFormat])


def _stack(*decorators: Callable) -> Callable:
    """Apply option decorators so they show up in --help in the order given."""
    def apply(fn: Callable) -> Callable:
        return reduce(lambda acc, dec: dec(acc), reversed(decorators), fn)
    return apply


def _parse_params(values: tuple[str, ...]) -> dict[str, int]:
    params: dict[str, int] = {}
    for item in values:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise click.BadParameter(f"expected KEY=VALUE, got {item!r}", param_hint="--param")
        try:
            params[key.strip()] = int(raw)
        except ValueError:
            raise click.BadParameter(f"{key} must be an integer, got {raw!r}", param_hint="--param")
    return params


def output_options(default: OutputFormat) -> Callable:
    return _stack(
        click.option("--format", "fmt", type=FORMAT_CHOICE, default=default.value, show_default=True,
                     help="Report format."),
        click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help="Write the report to FILE instead of stdout."),
    )


cap_options = _stack(
    click.option("--max-n", type=int, default=None, help="Cap on generated terms."),
    click.option("--max-depth", type=int, default=None, help="Cap on iteration depth."),
    click.option("--max-order", type=int, default=None,
                 help="Minor order to enumerate up to (also raises the minor-order cap)."),
    click.option("--max-hankel-order", type=int, default=None, help="Cap on Hankel order."),
)


source_options = _stack(
    click.option("--family", default=None, help="Registered sequence family name."),
    click.option("--param", "params", multiple=True, metavar="KEY=VALUE", help="Family parameter."),
    click.option("--r", "r", type=int, default=None, help="Exponent r of apery_general."),
    click.option("--s", "s", type=int, default=None, help="Exponent s of apery_general."),
    click.option("--seq-file", type=click.Path(dir_okay=False, path_type=Path), default=None,
                 help="JSON sequence file."),
    click.option("--recursive", default=None, help="Recursive-matrix preset name."),
    click.option("--recursive-file", type=click.Path(dir_okay=False, path_type=Path), default=None,
                 help="JSON recursive spec (sigma, tau)."),
    click.option("--q", "q", default=None, help="Specialize q to this rational (e.g. 1, 1/2)."),
)


triangle_options = _stack(
    click.option("--triangle", default=None, help="Registered triangle name."),
    click.option("--triangle-file", type=click.Path(dir_okay=False, path_type=Path), default=None,
                 help="JSON triangle file."),
)


q_grid_option = click.option(
    "--q-grid", default=None, help="Comma separated q values for PSM, e.g. 0,1/2,1,2 (default PSM_GRID)."
)


def caps_from(max_n: Optional[int], max_depth: Optional[int], max_order: Optional[int],
              max_hankel_order: Optional[int]) -> Caps:
    """Settings caps with per-run overrides from the command line."""
    caps = Caps.from_settings()
    overrides = {
        "max_terms": max_n,
        "max_depth": max_depth,
        "max_hankel_order": max_hankel_order,
    }
    if max_order is not None and max_order > caps.max_minor_order:
        overrides["max_minor_order"] = max_order
    return caps.model_copy(update={k: v for k, v in overrides.items() if v is not None})


def build_config(command: Command, fmt: str, **options: Any) -> RunConfig:
    """
    Assemble a RunConfig from parsed options.

    File options are loaded and embedded so the config alone reproduces the run.
    """
    caps = caps_from(
        options.pop("max_n", None),
        options.pop("max_depth", None),
        options.get("max_order"),
        options.pop("max_hankel_order", None),
    )

    params = _parse_params(options.pop("params", ()) or ())
    for key in ("r", "s"):
        value = options.pop(key, None)
        if value is not None:
            params[key] = value
    y_params = _parse_params(options.pop("y_params", ()) or ())

    seq_file = options.pop("seq_file", None)
    y_seq_file = options.pop("y_seq_file", None)
    triangle_file = options.pop("triangle_file", None)
    recursive_file = options.pop("recursive_file", None)
    q_grid = options.pop("q_grid", None)

    data = {k: v for k, v in options.items() if v is not None}
    if seq_file is not None:
        data["sequence"] = load_sequence_file(seq_file)
    if y_seq_file is not None:
        data["y_sequence"] = load_sequence_file(y_seq_file)
    if triangle_file is not None:
        data["triangle_data"] = load_triangle_file(triangle_file)
    if recursive_file is not None:
        data["recursive_spec"] = load_recursive_file(recursive_file)
    if q_grid:
        data["q_grid"] = [v.strip() for v in q_grid.split(",") if v.strip()]

    try:
        return RunConfig(command=command, format=fmt, params=params, y_params=y_params, caps=caps, **data)
    except ValidationError as exc:
        raise InvalidParams(f"Invalid options: {exc}") from exc


def emit(report: Report, fmt: OutputFormat | str, out: Optional[Path]) -> None:
    text = ReportRenderer().render(report, OutputFormat(fmt))
    if out is None:
        click.echo(text, nl=False)
        return
    out.write_text(text, encoding="utf-8")
    logger.info(f"Report written to {out}")


def run_and_emit(config: RunConfig, out: Optional[Path]) -> None:
    """Execute the run, write the report and exit with the run's code."""
    report, code = RunService().execute(config)
    emit(report, config.format, out)
    click.get_current_context().exit(code)
