"""Bounds commands for the machin CLI.

This module provides the commands over the bounds engine:
`machin bounds` (exponent bound for a pair of moduli), `machin tables`
(published tables with recomputed columns, or their consistency report) and
`machin theorem` (Case I and Case II pipelines).
"""

from enum import Enum
from typing import Annotated

import mpmath
import typer

from machinkit.bounds.exponent import exponent_bound
from machinkit.bounds.functions import precision
from machinkit.bounds.tables import consistency_report, parse_real, render_table
from machinkit.bounds.theorem import theorem_case1, theorem_case2
from machinkit.cli.common import (
    EXIT_FAILURE,
    EXIT_USAGE,
    ConfigOption,
    VerboseOption,
    exit_on_error,
    load_cli_settings,
)
from machinkit.config import BoundsSettings


class ModeChoice(str, Enum):
    AS_PUBLISHED = "as-published"
    RECOMPUTE = "recompute"


class TableFormat(str, Enum):
    TEXT = "text"
    TSV = "tsv"


class CaseChoice(str, Enum):
    ONE = "1"
    TWO = "2"


ModeOption = Annotated[
    ModeChoice | None,
    typer.Option("--mode", help="Use printed constants or recompute them from C1"),
]


def _bounds_args(settings: BoundsSettings, mode: ModeChoice | None) -> dict:
    return {
        "mode": mode.value if mode is not None else settings.mode,
        "c1_policy": settings.c1_policy,
        "c1_value": settings.c1_value,
    }


def _fmt(value: mpmath.mpf | None) -> str:
    return "-" if value is None else mpmath.nstr(value, 10)


def bounds_command(
    m1: Annotated[str, typer.Argument(help="Smaller modulus, e.g. 13 or e^31")],
    m2: Annotated[str, typer.Argument(help="Larger modulus, above e^30")],
    mode: ModeOption = None,
    output_format: Annotated[
        TableFormat,
        typer.Option("--format", help="Column layout"),
    ] = TableFormat.TEXT,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Bound e1 log m1 + e2 log m2 by the maximum over applicable table rows."""
    settings = load_cli_settings(config, verbose)
    sep = "\t" if output_format is TableFormat.TSV else " | "

    with exit_on_error(), precision(settings.bounds.dps):
        try:
            low, high = parse_real(m1), parse_real(m2)
        except (ValueError, TypeError) as e:
            typer.echo(f"Error: Not a number: {e}", err=True)
            raise typer.Exit(EXIT_USAGE) from e
        result = exponent_bound(
            low,
            high,
            dps=settings.bounds.dps,
            exponent=settings.bounds.exponent_symbol,
            **_bounds_args(settings.bounds, mode),
        )
        typer.echo(sep.join(["row", "C", "Y", "Y_eff", "bound"]))
        for entry in result.per_row:
            cells = [entry.c, entry.y, entry.y_effective, entry.value]
            typer.echo(sep.join([entry.row.label, *(_fmt(v) for v in cells)]))
        typer.echo(sep.join(["max", _fmt(result.value), result.row.label]))


def tables_command(
    which: Annotated[
        str,
        typer.Argument(help="Table number 1-6, or 'check' for the report"),
    ],
    output_format: Annotated[
        TableFormat,
        typer.Option("--format", help="Column layout"),
    ] = TableFormat.TEXT,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Print a published table with recomputed columns (marked *).

    `tables check` lists every row with its recomputed Y0 and τ and exits 1
    if a printed τ is smaller than the recomputed one.
    """
    settings = load_cli_settings(config, verbose)
    fmt = output_format.value
    dps = settings.bounds.dps

    if which != "check":
        if not which.isdigit():
            typer.echo(f"Error: Unknown table '{which}'", err=True)
            raise typer.Exit(EXIT_USAGE)
        with exit_on_error():
            typer.echo(render_table(int(which), fmt, dps=dps), nl=False)
        return

    with exit_on_error():
        entries = consistency_report(dps=dps)
    sep = "\t" if fmt == "tsv" else " | "
    typer.echo(sep.join(["row", "Y0", "Y0*", "tau", "tau*", "status", "C1"]))
    mismatches = 0
    with precision(dps):
        for entry in entries:
            row = entry.row
            cells = [
                row.label,
                row.y0 or "-",
                _fmt(entry.y0_recomputed),
                row.tau,
                _fmt(entry.tau_recomputed),
                entry.tau_status,
                _fmt(entry.implied_c1),
            ]
            typer.echo(sep.join(cells))
            mismatches += entry.tau_status == "mismatch"
    typer.echo(f"{len(entries)} rows, {mismatches} mismatched")
    if mismatches:
        raise typer.Exit(EXIT_FAILURE)


def theorem_command(
    case: Annotated[
        CaseChoice,
        typer.Option("--case", help="Case I (m1 = m2 chain) or Case II"),
    ] = CaseChoice.ONE,
    mode: ModeOption = None,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Run a theorem pipeline and print the resulting caps."""
    settings = load_cli_settings(config, verbose)
    bounds = settings.bounds
    pipeline = theorem_case1 if case is CaseChoice.ONE else theorem_case2

    with exit_on_error():
        state = pipeline(
            exponent=bounds.exponent_symbol,
            tolerance=bounds.fixed_point_tolerance,
            max_iterations=bounds.max_iterations,
            dps=bounds.dps,
            **_bounds_args(bounds, mode),
        )
        with precision(bounds.dps):
            text = state.to_text()

    typer.echo(text, nl=False)
