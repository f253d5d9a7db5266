import time
from uuid import uuid4

import click

from app.config import get_settings
from app.errors import CertificationError
from app.logging_config import get_logger, run_context, setup_logging
from app.cli.check import check
from app.cli.explore import explore
from app.cli.families import families
from app.cli.generate import generate
from app.cli.iterate import iterate
from app.cli.replay import replay
from app.cli.transform import convolve, transform

logger = get_logger(__name__)

EXIT_ERROR = 1


class CertifyGroup(click.Group):
    """Command group with run logging and a global exception handler."""

    def invoke(self, ctx: click.Context):
        start_time = time.time()
        try:
            result = super().invoke(ctx)
        except click.exceptions.Exit as exc:
            self._log_completed(start_time, exc.exit_code)
            raise
        except (click.ClickException, click.Abort):
            raise
        except CertificationError as exc:
            self._handle(exc, start_time, exc.exit_code, exc_info=False)
        except Exception as exc:
            self._handle(exc, start_time, EXIT_ERROR, exc_info=True)
        self._log_completed(start_time, 0)
        return result

    @staticmethod
    def _log_completed(start_time: float, code: int) -> None:
        duration_ms = round((time.time() - start_time) * 1000, 2)
        logger.info("Run completed", extra={"result": code, "duration_ms": duration_ms})

    @staticmethod
    def _handle(exc: Exception, start_time: float, code: int, exc_info: bool) -> None:
        """Log the failure, print a one-line error and exit with the mapped code."""
        duration_ms = round((time.time() - start_time) * 1000, 2)
        logger.error(
            f"Run failed: {type(exc).__name__}: {exc}",
            extra={
                "duration_ms": duration_ms,
                "error_type": type(exc).__name__,
                "error_detail": str(exc),
            },
            exc_info=exc_info,
        )
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        raise click.exceptions.Exit(code)


@click.group(cls=CertifyGroup)
@click.option("--verbose", is_flag=True, default=False, help="DEBUG logging.")
@click.option("--log-format", type=click.Choice(["json", "text"]), default=None,
              help="Log line format on stderr (default from LOG_JSON).")
@click.version_option(get_settings().tool_version, prog_name="moments")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, log_format: str | None):
    """Exact certification of Stieltjes moment and log-convexity properties."""
    settings = get_settings()
    json_format = settings.log_json if log_format is None else log_format == "json"
    setup_logging(
        level="DEBUG" if verbose or settings.debug else "INFO",
        json_format=json_format,
    )
    run_context.run_id = str(uuid4())[:8]
    run_context.command = ctx.invoked_subcommand
    logger.info("Run started")


cli.add_command(generate)
cli.add_command(check)
cli.add_command(iterate)
cli.add_command(transform)
cli.add_command(convolve)
cli.add_command(explore)
cli.add_command(replay)
cli.add_command(families)


if __name__ == "__main__":
    cli()
