"""structlog configuration for the command line.

Events render as key=value lines on stderr so that stdout carries only
command output.
"""

import logging
import sys

import structlog

LEVELS = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
}


def configure_logging(level: str = "WARNING") -> None:
    """Route structlog events at or above `level` to stderr.

    Raises:
        ValueError: If the level name is unknown.
    """
    try:
        threshold = LEVELS[level.upper()]
    except KeyError:
        raise ValueError(f"Unknown log level: {level}") from None

    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.KeyValueRenderer(
                key_order=["timestamp", "level", "event"]
            ),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(threshold),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
