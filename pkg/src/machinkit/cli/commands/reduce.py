"""Reduce and solve commands for the machin CLI.

`machin reduce` factors x² + 1 over a basis of moduli and prints its
exponent signature. `machin solve` lists every x whose x² + 1 is smooth over
a set of primes congruent to 1 mod 4.
"""

from typing import Annotated

import typer

from machinkit.cli.common import (
    EXIT_FAILURE,
    ConfigOption,
    VerboseOption,
    exit_on_error,
    load_cli_settings,
)
from machinkit.relations import ExponentSignature, ModulusExponent, reduce
from machinkit.solver import enumerate_general

SIGN_LABELS = {1: "+", -1: "-", 0: "mixed"}


def _factor(entry: ModulusExponent) -> str:
    if entry.exponent == 0:
        return f"{entry.modulus}^0"
    return f"{entry.modulus}^{entry.exponent}({SIGN_LABELS[entry.sign]})"


def format_signature(sig: ExponentSignature) -> str:
    """Render `x^2 + 1 = 2^v * m^e(sign) * ...`, sign being +, - or mixed."""
    parts = [f"2^{sig.v}", *(_factor(entry) for entry in sig.exps)]
    return f"{sig.x}^2 + 1 = " + " * ".join(parts)


def reduce_command(
    x: Annotated[int, typer.Argument(help="The integer x of x^2 + 1", min=1)],
    basis: Annotated[list[int], typer.Argument(help="Odd moduli m = a^2 + b^2")],
    config: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Factor X^2 + 1 over BASIS and print its exponent signature.

    Exits 1 if X^2 + 1 has a factor outside 2 and the basis.
    """
    load_cli_settings(config, verbose)

    with exit_on_error():
        sig = reduce(x, basis)

    if sig is None:
        moduli = ", ".join(str(m) for m in basis)
        typer.echo(f"{x}^2 + 1 is not smooth over 2, {moduli}")
        raise typer.Exit(EXIT_FAILURE)
    typer.echo(format_signature(sig))


def solve_command(
    primes: Annotated[list[int], typer.Argument(help="Primes congruent to 1 mod 4")],
    x_max: Annotated[
        int | None,
        typer.Option("--x-max", help="Upper end of the scanned range", min=1),
    ] = None,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """List every x with x^2 + 1 = 2^v * p1^e1 * ... as TSV."""
    settings = load_cli_settings(config, verbose)
    limit = x_max if x_max is not None else settings.search.x_max

    with exit_on_error():
        results = enumerate_general(primes, limit)

    typer.echo("\t".join(["x", "v", *(f"e_{p}" for p in primes)]))
    for x, exponents in results:
        typer.echo("\t".join(str(value) for value in (x, *exponents)))
