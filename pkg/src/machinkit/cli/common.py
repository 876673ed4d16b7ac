"""Options and helpers shared by the machin commands."""

from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated

import typer
import yaml
from pydantic import ValidationError

from machinkit.config import MachinSettings, resolve_settings
from machinkit.errors import MachinError, MachinErrorCode, RelationParseError
from machinkit.logging import configure_logging

EXIT_FAILURE = 1
EXIT_USAGE = 2

# Codes that mean the input was unusable rather than that a check failed
USAGE_CODES = frozenset(
    {
        MachinErrorCode.BAD_BASIS,
        MachinErrorCode.DOMAIN_ERROR,
        MachinErrorCode.NOT_APPLICABLE,
        MachinErrorCode.NOT_SPLITTABLE,
        MachinErrorCode.ON_DIAGONAL,
        MachinErrorCode.OUT_OF_RANGE,
        MachinErrorCode.OUT_OF_STATED_DOMAIN,
        MachinErrorCode.PARSE_ERROR,
        MachinErrorCode.PRECONDITION,
        MachinErrorCode.CONFIG_INVALID,
    }
)

ConfigOption = Annotated[
    Path | None,
    typer.Option(
        "--config",
        "-c",
        help="Path to settings.yml (default: ./settings.yml if present)",
    ),
]

VerboseOption = Annotated[
    bool,
    typer.Option(
        "--verbose",
        "-v",
        help="Log progress events to stderr",
    ),
]


def load_cli_settings(config: Path | None, verbose: bool = False) -> MachinSettings:
    """Resolve settings and configure logging, exiting 2 on any config error."""
    try:
        settings = resolve_settings(config)
    except FileNotFoundError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_USAGE) from e
    except yaml.YAMLError as e:
        typer.echo(f"Error: Invalid YAML in {config}: {e}", err=True)
        raise typer.Exit(EXIT_USAGE) from e
    except (ValidationError, ValueError) as e:
        typer.echo(f"Error: Invalid settings: {e}", err=True)
        raise typer.Exit(EXIT_USAGE) from e

    level = settings.logging.level
    if verbose and level in ("WARNING", "ERROR"):
        level = "INFO"
    configure_logging(level)
    return settings


@contextmanager
def exit_on_error() -> Iterator[None]:
    """Turn library errors into an error line and exit code 1 or 2."""
    try:
        yield
    except RelationParseError as e:
        typer.echo(f"Error: {e.message}", err=True)
        raise typer.Exit(EXIT_USAGE) from e
    except MachinError as e:
        typer.echo(f"Error: {e}", err=True)
        code = EXIT_USAGE if e.code in USAGE_CODES else EXIT_FAILURE
        raise typer.Exit(code) from e
    except FileNotFoundError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_USAGE) from e
