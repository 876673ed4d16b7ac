"""The exponent bound e1·log m1 + e2·log m2 < 2τ·C·log m1·log m2·log^ψ Y.

Only one of the table rows is known to hold for a given pair of moduli, so the
bound is the maximum over every applicable row.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import mpmath
import structlog
from mpmath import mpf

from machinkit.bounds.functions import DEFAULT_DPS, Real, precision
from machinkit.bounds.tables import (
    BoundMode,
    BoundTableRow,
    C1Policy,
    applicable_rows,
    load_rows,
    row_constant,
    row_y,
)
from machinkit.errors import BoundsError, MachinErrorCode

logger = structlog.get_logger()

ExponentSymbol = Literal["psi", "mu"]


@dataclass(frozen=True)
class RowBound:
    """The bound contributed by one row.

    Attributes:
        row: The table row.
        c: Constant C at (m1, m2).
        y: Y = 2·C·β·log^ν1 m1·log^ν2 m2.
        y_effective: max(Y, Y0), the argument τ is valid for.
        exponent: The power of log Y used.
        value: 2τ·C·log m1·log m2·log^exponent(Y_effective).
    """

    row: BoundTableRow
    c: mpf
    y: mpf
    y_effective: mpf
    exponent: mpf
    value: mpf

    @property
    def kl_cap(self) -> mpf:
        """4τ·C²·log m1·log m2·log^(2·exponent) Y, the cap on K·L."""
        return (
            self.value
            * 2
            * self.c
            * mpmath.log(self.y_effective) ** self.exponent
        )


@dataclass(frozen=True)
class ExponentBound:
    """Maximum of the per-row bounds.

    Attributes:
        value: The bound on e1·log m1 + e2·log m2.
        row: The row attaining it.
        per_row: Every row evaluated, in table order.
    """

    value: mpf
    row: BoundTableRow
    per_row: tuple[RowBound, ...]

    @property
    def kl_cap(self) -> mpf:
        return max(entry.kl_cap for entry in self.per_row)


def row_exponent(row: BoundTableRow, symbol: ExponentSymbol = "psi") -> mpf:
    """Return ψ, or μ when asked for and the row carries one."""
    if symbol == "mu" and row.mu is not None:
        return mpf(row.mu)
    return row.psi_value


def evaluate_row(
    row: BoundTableRow,
    m1: Real,
    m2: Real,
    mode: BoundMode = "as-published",
    c1_policy: C1Policy = "implied",
    c1_value: Real | None = None,
    exponent: ExponentSymbol = "psi",
) -> RowBound:
    c = row_constant(row, m1, m2, mode, c1_policy, c1_value)
    y = row_y(row, m1, m2, c)
    y0 = row.y0_value
    y_effective = y if y0 is None else max(y, y0)
    power = row_exponent(row, exponent)
    # τ only holds for Y >= Y0, so log Y is taken at the clamped argument
    value = (
        2
        * row.tau_value
        * c
        * mpmath.log(m1)
        * mpmath.log(m2)
        * mpmath.log(y_effective) ** power
    )
    return RowBound(row, c, y, y_effective, power, value)


def maximum_over_rows(
    m1: Real,
    m2: Real,
    rows: list[BoundTableRow],
    mode: BoundMode = "as-published",
    c1_policy: C1Policy = "implied",
    c1_value: Real | None = None,
    exponent: ExponentSymbol = "psi",
) -> ExponentBound:
    """Evaluate every row admitted at m1 and keep the largest bound.

    No domain checks beyond the ones each factor makes; the theorem pipelines
    call this directly at m2 = e^30.

    Raises:
        BoundsError: DOMAIN_ERROR if no row applies at m1; NOT_APPLICABLE if
            the μ exponent is asked for and no admitted row carries μ.
    """
    admitted = applicable_rows(rows, m1)
    if not admitted:
        raise BoundsError(
            code=MachinErrorCode.DOMAIN_ERROR,
            message=f"no table row applies at m1 = {mpmath.nstr(mpf(m1), 10)}",
        )
    if exponent == "mu" and all(row.mu is None for row in admitted):
        raise BoundsError(
            code=MachinErrorCode.NOT_APPLICABLE,
            message="the mu exponent needs a row with mu; these rows only carry psi",
        )
    per_row = tuple(
        evaluate_row(row, m1, m2, mode, c1_policy, c1_value, exponent)
        for row in admitted
    )
    best = max(per_row, key=lambda entry: entry.value)
    return ExponentBound(best.value, best.row, per_row)


def exponent_bound(
    m1: Real,
    m2: Real,
    rows: list[BoundTableRow] | None = None,
    mode: BoundMode = "as-published",
    c1_policy: C1Policy = "implied",
    c1_value: Real | None = None,
    exponent: ExponentSymbol = "psi",
    dps: int = DEFAULT_DPS,
) -> ExponentBound:
    """Bound e1·log m1 + e2·log m2 for moduli m1 < m2.

    Args:
        m1: Smaller modulus.
        m2: Larger modulus, above e^30.
        rows: Table rows to consider (all bundled rows by default).
        mode: "as-published" uses the printed constants; "recompute" rebuilds
            C from C1·C2·f.
        c1_policy: How C1 is obtained in recompute mode.
        c1_value: C1 for the "fixed" policy.
        exponent: Power of log Y, ψ or the literal μ.
        dps: Working precision.

    Returns:
        ExponentBound with the maximum over applicable rows.

    Raises:
        BoundsError: DOMAIN_ERROR unless m2 > m1 > 1; OUT_OF_STATED_DOMAIN if
            m2 <= e^30; NOT_APPLICABLE for the μ exponent over rows without μ.
    """
    with precision(dps):
        m1, m2 = mpf(m1), mpf(m2)
        if not m2 > m1 > 1:
            raise BoundsError(
                code=MachinErrorCode.DOMAIN_ERROR,
                message="the exponent bound needs m2 > m1 > 1",
            )
        if m2 <= mpmath.exp(30):
            raise BoundsError(
                code=MachinErrorCode.OUT_OF_STATED_DOMAIN,
                message=f"m2 = {mpmath.nstr(m2, 10)} does not exceed e^30",
            )
        result = maximum_over_rows(
            m1, m2, rows if rows is not None else load_rows(),
            mode, c1_policy, c1_value, exponent,
        )
    logger.debug(
        "exponent_bound_evaluated",
        m1=mpmath.nstr(m1, 12),
        m2=mpmath.nstr(m2, 12),
        row=result.row.label,
        value=mpmath.nstr(result.value, 12),
    )
    return result
