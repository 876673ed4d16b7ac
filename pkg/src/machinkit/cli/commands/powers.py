"""Powers command for the machin CLI.

This module provides `machin powers`, which lists the pure powers among the
values x² + 1 and (x² + 1)/2.
"""

from typing import Annotated

import typer

from machinkit.cli.common import (
    ConfigOption,
    VerboseOption,
    exit_on_error,
    load_cli_settings,
)
from machinkit.solver import pure_power_scan


def powers_command(
    x_max: Annotated[
        int | None,
        typer.Option("--x-max", help="Upper end of the scanned range", min=1),
    ] = None,
    n_max: Annotated[
        int,
        typer.Option("--n-max", help="Largest exponent n tried"),
    ] = 40,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """List (x, e, y, n) with x^2 + 1 = 2^e * y^n, n >= 3, as TSV."""
    settings = load_cli_settings(config, verbose)
    limit = x_max if x_max is not None else settings.search.x_max

    with exit_on_error():
        found = pure_power_scan(limit, n_max)

    typer.echo("x\te\ty\tn")
    for x, e, y, n in found:
        typer.echo(f"{x}\t{e}\t{y}\t{n}")
