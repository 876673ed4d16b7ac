"""Pi command for the machin CLI.

This module provides `machin pi`, which prints π from a verified Machin-type
formula and optionally cross-checks it against a second formula.
"""

from typing import Annotated

import typer

from machinkit.cli.common import (
    EXIT_FAILURE,
    EXIT_USAGE,
    ConfigOption,
    VerboseOption,
    exit_on_error,
    load_cli_settings,
)
from machinkit.corpus import NAMED_RELATIONS
from machinkit.precision import agreeing_digits, format_blocks, pi_from_relation
from machinkit.relations import ArctanRelation, parse_relation

# Two digits of slack: the last digits of both values may round differently
AGREEMENT_SLACK = 2


def resolve_relation(text: str) -> ArctanRelation:
    """Return a named relation, or parse `text` as relation text.

    Raises:
        typer.Exit: With code 2 for an unknown name.
        RelationParseError: If the text is not a valid relation.
    """
    if text in NAMED_RELATIONS:
        return NAMED_RELATIONS[text]
    if "atan" in text:
        return parse_relation(text)
    names = ", ".join(NAMED_RELATIONS)
    typer.echo(f"Error: Unknown relation '{text}'. Known: {names}", err=True)
    raise typer.Exit(EXIT_USAGE)


def pi_command(
    relation: Annotated[
        str | None,
        typer.Argument(help="Relation name or relation text (default: reference)"),
    ] = None,
    digits: Annotated[
        int | None,
        typer.Option("--digits", help="Decimals of pi to print", min=1),
    ] = None,
    against: Annotated[
        str | None,
        typer.Option("--against", help="Second relation to cross-check with"),
    ] = None,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Print pi from a Machin-type formula in blocks of ten digits."""
    settings = load_cli_settings(config, verbose)
    count = digits if digits is not None else settings.precision.digits

    with exit_on_error():
        rel = resolve_relation(relation or settings.precision.reference_relation)
        value = pi_from_relation(
            rel,
            count,
            guard_digits=settings.precision.guard_digits,
            binary_split_threshold=settings.precision.binary_split_threshold,
        )
        *digit_lines, error_line = format_blocks(value).splitlines()
        typer.echo("\n".join(digit_lines))

        if against is None:
            typer.echo(error_line)
            return
        other = pi_from_relation(
            resolve_relation(against),
            count,
            guard_digits=settings.precision.guard_digits,
            binary_split_threshold=settings.precision.binary_split_threshold,
        )

    # The error bound stays the last line
    agreed = agreeing_digits(value, other)
    typer.echo(f"agrees with {against} to {agreed} digits")
    typer.echo(error_line)
    if agreed < count - AGREEMENT_SLACK:
        raise typer.Exit(EXIT_FAILURE)
