"""
Logging configuration for the certification toolkit.
Provides structured logging with run tracking and error capture.

Log lines go to stderr; stdout is reserved for reports.
"""
import logging
import sys
import json
from datetime import datetime, timezone
from typing import Optional


_EXTRA_FIELDS = (
    "run_id",
    "command",
    "family",
    "property",
    "result",
    "check_id",
    "duration_ms",
    "error_type",
    "error_detail",
)


class JSONFormatter(logging.Formatter):
    """JSON formatter for structured logging."""

    def format(self, record: logging.LogRecord) -> str:
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        for field in _EXTRA_FIELDS:
            if hasattr(record, field):
                log_data[field] = getattr(record, field)

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_data, default=str)


class RunContextFilter(logging.Filter):
    """Filter that stamps the current run context on log records."""

    def __init__(self):
        super().__init__()
        self.run_id: Optional[str] = None
        self.command: Optional[str] = None

    def filter(self, record: logging.LogRecord) -> bool:
        record.run_id = self.run_id or "no-run"
        record.command = self.command or "none"
        return True


run_context = RunContextFilter()


def setup_logging(
    level: str = "INFO",
    json_format: bool = True,
) -> logging.Logger:
    """
    Configure application logging.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR)
        json_format: Use JSON format (True for production, False for dev)

    Returns:
        Configured logger
    """
    logger = logging.getLogger("moments")
    logger.setLevel(getattr(logging, level.upper(), logging.INFO))

    logger.handlers.clear()

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(logging.DEBUG)
    handler.addFilter(run_context)

    if json_format:
        handler.setFormatter(JSONFormatter())
    else:
        handler.setFormatter(logging.Formatter(
            "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
        ))

    logger.addHandler(handler)
    logger.propagate = False

    return logger


def get_logger(name: str = "moments") -> logging.Logger:
    """Get a logger instance under the toolkit's logger tree."""
    if name != "moments" and not name.startswith("moments."):
        name = f"moments.{name}"
    return logging.getLogger(name)


logger = setup_logging(level="WARNING")
