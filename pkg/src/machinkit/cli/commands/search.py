"""Search commands for the machin CLI.

This module provides `machin search`, which discovers three-term formulae
over a basis of two moduli, and `machin census`, which counts the solutions
of x² + 1 = 2^v·m1^k·m2^l per parity class.
"""

from enum import Enum
from typing import Annotated

import typer

from machinkit.cli.common import (
    EXIT_FAILURE,
    ConfigOption,
    VerboseOption,
    exit_on_error,
    load_cli_settings,
)
from machinkit.config import MachinSettings
from machinkit.solver import (
    enumerate_solutions,
    find_three_term,
    parity_census,
    solutions_tsv,
)


class SearchFormat(str, Enum):
    TEXT = "text"
    TSV = "tsv"
    RELATIONS = "relations"


class SearchMethodChoice(str, Enum):
    TRIAL = "trial"
    SIEVE = "sieve"


XMaxOption = Annotated[
    int | None,
    typer.Option("--x-max", help="Upper end of the scanned range", min=1),
]

MethodOption = Annotated[
    SearchMethodChoice | None,
    typer.Option("--method", help="Enumeration method"),
]

WorkersOption = Annotated[
    int | None,
    typer.Option("--workers", help="Worker processes for block scanning", min=1),
]


def _search_args(
    settings: MachinSettings,
    x_max: int | None,
    method: SearchMethodChoice | None,
    workers: int | None,
) -> dict:
    return {
        "x_max": x_max if x_max is not None else settings.search.x_max,
        "method": method.value if method is not None else settings.search.method,
        "workers": workers if workers is not None else settings.search.workers,
        "block_size": settings.search.block_size,
    }


def search_command(
    m1: Annotated[int, typer.Argument(help="Smaller modulus")],
    m2: Annotated[int, typer.Argument(help="Larger modulus")],
    x_max: XMaxOption = None,
    method: MethodOption = None,
    workers: WorkersOption = None,
    output_format: Annotated[
        SearchFormat,
        typer.Option(
            "--format",
            help="text report, solutions as tsv, or relations only",
        ),
    ] = SearchFormat.TEXT,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Find three-term Machin-type formulae over the basis (M1, M2)."""
    settings = load_cli_settings(config, verbose)

    with exit_on_error():
        report = find_three_term(
            m1, m2, **_search_args(settings, x_max, method, workers)
        )

    if output_format is SearchFormat.TSV:
        typer.echo(solutions_tsv(report.solutions), nl=False)
    elif output_format is SearchFormat.RELATIONS:
        typer.echo(report.relations_text(), nl=False)
    else:
        typer.echo(report.to_text(), nl=False)


def census_command(
    m1: Annotated[int, typer.Argument(help="Smaller modulus")],
    m2: Annotated[int, typer.Argument(help="Larger modulus")],
    x_max: XMaxOption = None,
    method: MethodOption = None,
    workers: WorkersOption = None,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Count solutions per parity class of (v, k, l).

    Exits 1 when a class holds two solutions or a class has no odd exponent.
    """
    settings = load_cli_settings(config, verbose)

    with exit_on_error():
        solutions = enumerate_solutions(
            m1, m2, **_search_args(settings, x_max, method, workers)
        )
    census = parity_census(solutions)

    for parity, count in sorted(
        census.counts.items(), key=lambda item: [tag.value for tag in item[0]]
    ):
        label = ",".join(tag.value for tag in parity)
        typer.echo(f"{label}\t{count}")
    typer.echo(f"classes {len(census.counts)}")
    typer.echo(f"total {census.total}")
    typer.echo(f"violation {'yes' if census.violation else 'no'}")
    if census.violation:
        raise typer.Exit(EXIT_FAILURE)
