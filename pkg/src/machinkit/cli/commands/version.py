"""Version command for the machin CLI.

Provides `machin version`, printing the installed version of machinkit.
"""

import sys
from importlib.metadata import PackageNotFoundError, version
from typing import Annotated

import typer

DEPENDENCIES = ["mpmath", "sympy", "pydantic", "pyyaml", "structlog", "typer"]


def get_version(package: str = "machinkit") -> str:
    """Return the installed version of `package`, or 'unknown'."""
    try:
        return version(package)
    except PackageNotFoundError:
        return "unknown"


def version_command(
    verbose: Annotated[
        bool,
        typer.Option(
            "--verbose",
            "-v",
            help="Show detailed version information",
        ),
    ] = False,
) -> None:
    """Show machinkit version information."""
    machinkit_version = get_version()

    if not verbose:
        typer.echo(f"machinkit {machinkit_version}")
        return

    typer.echo(f"machinkit version: {machinkit_version}")
    typer.echo(f"Python version: {sys.version}")

    typer.echo("\nDependencies:")
    for dep in DEPENDENCIES:
        typer.echo(f"  {dep}: {get_version(dep)}")
