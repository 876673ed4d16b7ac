"""machin CLI entry point.

This module provides the main Typer application and entry point for the
`machin` CLI.

Usage:
    machin verify [FILE]            - Verify relations exactly
    machin search M1 M2 [options]   - Find three-term formulae over (M1, M2)
    machin census M1 M2 [options]   - Count solutions per parity class
    machin reduce X M...            - Factor X^2 + 1 over a basis
    machin solve P... [options]     - Smooth values of x^2 + 1 over primes
    machin powers [options]         - Pure powers among x^2 + 1 and (x^2 + 1)/2
    machin pi [RELATION] [options]  - Digits of pi from a formula
    machin bounds M1 M2 [options]   - Exponent bound for a pair of moduli
    machin tables N|check           - Published constant tables
    machin theorem [options]        - Case I / Case II pipelines
    machin version [options]        - Show version information
"""

import typer

from machinkit.cli.commands import bounds, pi, powers, reduce, search, verify, version

app = typer.Typer(
    name="machin",
    help="machin - Machin-type arctangent formulae, verified exactly",
    no_args_is_help=True,
)

app.command(name="verify")(verify.verify_command)
app.command(name="search")(search.search_command)
app.command(name="census")(search.census_command)
app.command(name="reduce")(reduce.reduce_command)
app.command(name="solve")(reduce.solve_command)
app.command(name="powers")(powers.powers_command)
app.command(name="pi")(pi.pi_command)
app.command(name="bounds")(bounds.bounds_command)
app.command(name="tables")(bounds.tables_command)
app.command(name="theorem")(bounds.theorem_command)
app.command(name="version")(version.version_command)


def main() -> None:
    """Main entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
