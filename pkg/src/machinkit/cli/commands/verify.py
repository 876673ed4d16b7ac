"""Verify command for the machin CLI.

This module provides the `machin verify` command that checks every relation
of a relation file exactly.
"""

from pathlib import Path
from typing import Annotated

import typer

from machinkit.cli.common import (
    EXIT_FAILURE,
    ConfigOption,
    VerboseOption,
    exit_on_error,
    load_cli_settings,
)
from machinkit.corpus import NAMED_RELATIONS, load_corpus
from machinkit.precision import numeric_check
from machinkit.relations import format_relation, verify


def verify_command(
    file: Annotated[
        Path | None,
        typer.Argument(help="Relation file (default: the bundled corpus)"),
    ] = None,
    numeric: Annotated[
        bool,
        typer.Option(
            "--numeric",
            help="Also confirm each relation numerically at --digits decimals",
        ),
    ] = False,
    digits: Annotated[
        int,
        typer.Option("--digits", help="Decimals for --numeric", min=20),
    ] = 50,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Verify every relation in a file exactly.

    Prints one PASS or FAIL line per relation and exits 1 if any fails.
    """
    settings = load_cli_settings(config, verbose)

    with exit_on_error():
        corpus = load_corpus(file)
        reference = NAMED_RELATIONS.get(settings.precision.reference_relation)
        fallback = NAMED_RELATIONS.get(settings.precision.fallback_reference_relation)

        failures = 0
        for line_number, rel in corpus.entries:
            outcome = verify(rel)
            if outcome and numeric and not numeric_check(
                rel, digits, reference, fallback
            ):
                outcome_text = "FAIL numeric check disagrees"
            elif outcome:
                outcome_text = "PASS"
            else:
                outcome_text = f"FAIL {outcome.reason}"
            if not outcome_text.startswith("PASS"):
                failures += 1
            typer.echo(f"line {line_number}: {outcome_text}: {format_relation(rel)}")

    typer.echo(f"{len(corpus.entries)} relations, {failures} failed")
    if failures:
        raise typer.Exit(EXIT_FAILURE)
