"""Published constant tables of the exponent bound.

The bundled `data/tables.yml` holds every published value verbatim. Loading
it yields a flat list of BoundTableRow, one per (case, shape, m1 floor), which
is what the exponent bound and the theorem pipelines consume.

Classes:
    - RowShape: (ν1, ν2, β) pattern of a row
    - BoundTableRow: One row of constants
    - ConsistencyEntry: Recomputed against published values for one row

Functions:
    - load_rows: Parse the bundled (or a given) table file
    - applicable_rows: Rows whose m1 floor admits a given m1
    - row_constant: The constant C of a row at (m1, m2)
    - row_y: Y = 2·C·β·log^ν1 m1·log^ν2 m2
    - consistency_report: Recompute Y0, τ and C1 for every row
    - render_table: Text or TSV layout of one published table
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from importlib.resources import files
from pathlib import Path
from typing import Literal

import mpmath
import structlog
import yaml
from mpmath import mpf
from pydantic import BaseModel, ConfigDict

from machinkit.bounds.functions import (
    ALPHA_FACTOR,
    DEFAULT_DPS,
    HALF_ALPHA_FACTOR,
    Real,
    compute_c2,
    f1,
    f2,
    f3,
    f4,
    g1,
    g2,
    precision,
    tau_for,
)
from machinkit.errors import BoundsError, MachinErrorCode

logger = structlog.get_logger()

MATCH_TOLERANCE = mpf("1e-3")

BoundMode = Literal["as-published", "recompute"]
C1Policy = Literal["implied", "fixed"]


def parse_real(text: str) -> mpf:
    """Parse "12.5", "7/3" or "e^30" into an mpf."""
    text = text.strip()
    if text.startswith("e^"):
        return mpmath.exp(mpf(text[2:]))
    if "/" in text:
        frac = Fraction(text)
        return mpf(frac.numerator) / frac.denominator
    return mpf(text)


class RowShape(str, Enum):
    """(ν1, ν2, β) pattern of a row."""

    ALPHA2 = "alpha2"
    ALPHA3 = "alpha3"
    E_SMALL = "e_small"
    B_SMALL = "b_small"

    @property
    def nu(self) -> tuple[mpf, mpf]:
        return {
            RowShape.ALPHA2: (mpf("0.5"), mpf("0.5")),
            RowShape.ALPHA3: (mpf(0), mpf("0.5")),
            RowShape.E_SMALL: (mpf(0), mpf(0)),
            RowShape.B_SMALL: (mpf(0), mpf(1)),
        }[self]

    def beta(self, m1: Real) -> mpf:
        if self is RowShape.ALPHA2:
            return g1(m1) / (mpf(ALPHA_FACTOR) * mpmath.pi)
        if self is RowShape.ALPHA3:
            return g2(m1) / mpmath.sqrt(mpf(HALF_ALPHA_FACTOR) * mpmath.pi)
        if self is RowShape.B_SMALL:
            return mpf("0.3432")
        return mpf(1)


# =============================================================================
# File models
# =============================================================================


class FixedRowEntry(BaseModel):
    case: str
    shape: RowShape
    psi: str
    constant: Literal["A", "Bb"]
    tau: str
    y0: str


class FloorRowEntry(BaseModel):
    m1_floor: str
    c: str
    rho: str
    mu: str
    y0_alpha2: str
    tau_alpha2: str
    y0_alpha3: str
    tau_alpha3: str
    tau_e_small: str | None = None


class FloorTableEntry(BaseModel):
    case: Literal["B.a", "C"]
    psi: str
    multiplier: int
    additive: str
    rows: list[FloorRowEntry]


class PsiY0Entry(BaseModel):
    case: str
    psi0: str
    y0: str


class Table2Entry(BaseModel):
    beta1: dict[str, str]
    psi0_y0: list[PsiY0Entry]


class TablesFile(BaseModel):
    fixed_rows: list[FixedRowEntry]
    table2: Table2Entry
    floor_tables: dict[int, FloorTableEntry]


# =============================================================================
# Rows
# =============================================================================


class BoundTableRow(BaseModel):
    """One row of constants of the exponent bound.

    Attributes:
        case_tag: A.i, A.ii, B.a, B.b, C.i or C.ii.
        table: Published table the row comes from (1 for cases A and B.b).
        shape: The (ν1, ν2, β) pattern.
        psi: ψ as printed, e.g. "7/3".
        constant: How C is formed: "A" (28962·f1), "Bb" (40.4·f3) or
            "floor" (printed per m1 floor).
        c: Printed C (floor rows only).
        multiplier: 1 or 400 (floor rows only).
        additive: Additive term of C (floor rows only).
        tau: Printed τ.
        y0: Printed Y0 (None where the table prints none).
        rho, mu: ρ and μ (floor rows only).
        m1_floor: Smallest m1 the row admits, e.g. "e^30" (None: any m1).
    """

    model_config = ConfigDict(frozen=True)

    case_tag: Literal["A.i", "A.ii", "B.a", "B.b", "C.i", "C.ii"]
    table: int
    shape: RowShape
    psi: str
    constant: Literal["A", "Bb", "floor"]
    c: str | None = None
    multiplier: int = 1
    additive: str = "0"
    tau: str
    y0: str | None = None
    rho: str | None = None
    mu: str | None = None
    m1_floor: str | None = None

    @property
    def psi_value(self) -> mpf:
        return parse_real(self.psi)

    @property
    def tau_value(self) -> mpf:
        return parse_real(self.tau)

    @property
    def y0_value(self) -> mpf | None:
        return None if self.y0 is None else parse_real(self.y0)

    @property
    def floor_value(self) -> mpf:
        return mpf(1) if self.m1_floor is None else parse_real(self.m1_floor)

    @property
    def case_letter(self) -> Literal["B", "C"]:
        return "C" if self.case_tag.startswith("C") else "B"

    @property
    def label(self) -> str:
        floor = f" m1>={self.m1_floor}" if self.m1_floor else ""
        return f"{self.case_tag} T{self.table} {self.shape.value}{floor}"


def _expand(layout: TablesFile) -> list[BoundTableRow]:
    rows = [
        BoundTableRow(
            case_tag=fixed.case,
            table=1,
            shape=fixed.shape,
            psi=fixed.psi,
            constant=fixed.constant,
            tau=fixed.tau,
            y0=fixed.y0,
        )
        for fixed in layout.fixed_rows
    ]
    for number, table in sorted(layout.floor_tables.items()):
        # Case C splits into C.i (α₂ = i, and E < b'') and C.ii (α₃ = i)
        first, second = ("B.a", "B.a") if table.case == "B.a" else ("C.i", "C.ii")
        for floor_row in table.rows:
            columns: list[tuple[RowShape, str, str, str | None]] = [
                (RowShape.ALPHA2, first, floor_row.tau_alpha2, floor_row.y0_alpha2),
                (RowShape.ALPHA3, second, floor_row.tau_alpha3, floor_row.y0_alpha3),
            ]
            if floor_row.tau_e_small is not None:
                columns.append((RowShape.E_SMALL, first, floor_row.tau_e_small, None))
            for shape, case_tag, tau, y0 in columns:
                rows.append(
                    BoundTableRow(
                        case_tag=case_tag,
                        table=number,
                        shape=shape,
                        psi=table.psi,
                        constant="floor",
                        c=floor_row.c,
                        multiplier=table.multiplier,
                        additive=table.additive,
                        tau=tau,
                        y0=y0,
                        rho=floor_row.rho,
                        mu=floor_row.mu,
                        m1_floor=floor_row.m1_floor,
                    )
                )
    return rows


def load_tables_file(path: str | Path | None = None) -> TablesFile:
    """Parse a table file (the bundled one when path is None)."""
    if path is None:
        text = files("machinkit.bounds").joinpath("data/tables.yml").read_text(
            encoding="utf-8"
        )
    else:
        text = Path(path).read_text(encoding="utf-8")
    return TablesFile.model_validate(yaml.safe_load(text))


@lru_cache(maxsize=1)
def _bundled_rows() -> tuple[BoundTableRow, ...]:
    return tuple(_expand(load_tables_file()))


def load_rows(path: str | Path | None = None) -> list[BoundTableRow]:
    """Return every row of the bundled (or given) table file."""
    if path is None:
        return list(_bundled_rows())
    return _expand(load_tables_file(path))


def case_a_rows(rows: list[BoundTableRow] | None = None) -> list[BoundTableRow]:
    return [row for row in (rows or load_rows()) if row.case_tag.startswith("A")]


def applicable_rows(rows: list[BoundTableRow], m1: Real) -> list[BoundTableRow]:
    """Keep, per (case, table, shape), the row with the largest floor <= m1."""
    m1 = mpf(m1)
    best: dict[tuple[str, int, RowShape], BoundTableRow] = {}
    for row in rows:
        if row.floor_value > m1:
            continue
        key = (row.case_tag, row.table, row.shape)
        if key not in best or row.floor_value > best[key].floor_value:
            best[key] = row
    return list(best.values())


# =============================================================================
# Per-row evaluation
# =============================================================================


def _floor_m2(row: BoundTableRow) -> mpf:
    return max(row.floor_value, mpmath.exp(30))


def _correction(row: BoundTableRow, m1: Real, m2: Real) -> mpf:
    if row.case_letter == "C":
        return f4(m1, m2, parse_real(row.rho))
    return f2(m1, m2, parse_real(row.rho))


def implied_c1_for_row(row: BoundTableRow) -> mpf:
    """Back C1 out of the printed C at (floor, max(floor, e^30)).

    Raises:
        BoundsError: DOMAIN_ERROR for rows without a printed C.
    """
    if row.constant != "floor":
        raise BoundsError(
            code=MachinErrorCode.DOMAIN_ERROR,
            message=f"row {row.label} has no printed C",
        )
    rho = parse_real(row.rho)
    m1 = max(row.floor_value, mpf(5))
    return (parse_real(row.c) - parse_real(row.additive)) / (
        row.multiplier
        * compute_c2(row.case_letter, rho)
        * _correction(row, m1, _floor_m2(row))
    )


def row_constant(
    row: BoundTableRow,
    m1: Real,
    m2: Real,
    mode: BoundMode = "as-published",
    c1_policy: C1Policy = "implied",
    c1_value: Real | None = None,
) -> mpf:
    """Return the constant C of a row at (m1, m2)."""
    if row.constant == "A":
        return 28962 * f1(m1, m2)
    if row.constant == "Bb":
        return mpf("40.4") * f3(m1, m2)
    if mode == "as-published":
        return parse_real(row.c)

    if c1_policy == "fixed":
        if c1_value is None:
            raise BoundsError(
                code=MachinErrorCode.DOMAIN_ERROR,
                message="c1_policy 'fixed' needs a c1_value",
            )
        c1 = mpf(c1_value)
    else:
        c1 = implied_c1_for_row(row)
    rho = parse_real(row.rho)
    return (
        row.multiplier
        * c1
        * compute_c2(row.case_letter, rho)
        * _correction(row, m1, m2)
        + parse_real(row.additive)
    )


def row_y(row: BoundTableRow, m1: Real, m2: Real, c: Real) -> mpf:
    """Return Y = 2·C·β·log^ν1 m1·log^ν2 m2."""
    nu1, nu2 = row.shape.nu
    return (
        2 * mpf(c) * row.shape.beta(m1)
        * mpmath.log(m1) ** nu1 * mpmath.log(m2) ** nu2
    )


# =============================================================================
# Consistency report
# =============================================================================


@dataclass
class ConsistencyEntry:
    """Recomputed against published values for one row.

    Attributes:
        row: The row.
        y0_recomputed: Y at the floor, for alpha2 rows of Tables 3-6.
        y0_discrepancy: Relative difference to the printed Y0.
        tau_recomputed: tau_for(printed Y0, ψ), when a Y0 is printed.
        tau_discrepancy: Relative difference to the printed τ.
        tau_status: "match", "conservative" (printed τ larger), "mismatch",
            or "printed" (nothing to recompute from).
        implied_c1: C1 backed out of the printed C.
        c2: C2 for the row's case and ρ.
    """

    row: BoundTableRow
    y0_recomputed: mpf | None = None
    y0_discrepancy: mpf | None = None
    tau_recomputed: mpf | None = None
    tau_discrepancy: mpf | None = None
    tau_status: Literal["match", "conservative", "mismatch", "printed"] = "printed"
    implied_c1: mpf | None = None
    c2: mpf | None = None


def _relative(recomputed: mpf, published: mpf) -> mpf:
    return abs(recomputed - published) / abs(published)


def check_row(row: BoundTableRow) -> ConsistencyEntry:
    entry = ConsistencyEntry(row=row)
    if row.constant == "floor":
        entry.c2 = compute_c2(row.case_letter, parse_real(row.rho))
        entry.implied_c1 = implied_c1_for_row(row)
        if row.shape is RowShape.ALPHA2:
            m1 = row.floor_value
            entry.y0_recomputed = row_y(row, m1, _floor_m2(row), parse_real(row.c))
            entry.y0_discrepancy = _relative(entry.y0_recomputed, row.y0_value)

    if row.y0_value is not None:
        tau = tau_for(row.y0_value, row.psi_value)
        entry.tau_recomputed = tau
        entry.tau_discrepancy = _relative(tau, row.tau_value)
        if entry.tau_discrepancy <= MATCH_TOLERANCE:
            entry.tau_status = "match"
        elif tau < row.tau_value:
            entry.tau_status = "conservative"
        else:
            entry.tau_status = "mismatch"
    return entry


def consistency_report(
    rows: list[BoundTableRow] | None = None,
    dps: int = DEFAULT_DPS,
) -> list[ConsistencyEntry]:
    """Recompute Y0, τ and the implied C1 for every row."""
    with precision(dps):
        entries = [check_row(row) for row in (rows or load_rows())]
    mismatches = sum(1 for entry in entries if entry.tau_status == "mismatch")
    logger.info("table_consistency_checked", rows=len(entries), mismatches=mismatches)
    return entries


# =============================================================================
# Rendering
# =============================================================================


def _fmt(value: mpf | None, places: int) -> str:
    if value is None:
        return "-"
    return f"{float(value):.{places}f}"


def _places(text: str | None) -> int:
    if text is None or "." not in text:
        return 3
    return len(text.split(".")[1])


def _join(cells: list[str], fmt: Literal["text", "tsv"]) -> str:
    return "\t".join(cells) if fmt == "tsv" else " | ".join(cells)


def render_table(
    number: int,
    fmt: Literal["text", "tsv"] = "text",
    path: str | Path | None = None,
    dps: int = DEFAULT_DPS,
) -> str:
    """Render one published table, adding recomputed τ (and Y0) columns.

    Raises:
        BoundsError: DOMAIN_ERROR for an unknown table number.
    """
    layout = load_tables_file(path)
    rows = load_rows(path)
    with precision(dps):
        lines = _render(number, fmt, layout, rows)
    return "\n".join(lines) + "\n"


def _render(
    number: int,
    fmt: Literal["text", "tsv"],
    layout: TablesFile,
    rows: list[BoundTableRow],
) -> list[str]:
    lines: list[str] = []
    if number == 1:
        header = ["Case", "C", "psi", "nu1", "nu2", "beta", "tau", "tau*"]
        lines.append(_join(header, fmt))
        constants = {"A": "28962 f1(m1, m2)", "Bb": "40.4 f3(m1, m2)"}
        betas = {
            RowShape.ALPHA2: "g1(m1)/(5.296 pi)",
            RowShape.ALPHA3: "g2(m1)/sqrt(2.648 pi)",
            RowShape.B_SMALL: "0.3432",
            RowShape.E_SMALL: "1",
        }
        for row in (r for r in rows if r.table == 1):
            nu1, nu2 = row.shape.nu
            tau = tau_for(row.y0_value, row.psi_value)
            lines.append(
                _join(
                    [
                        row.case_tag,
                        constants[row.constant],
                        row.psi,
                        mpmath.nstr(nu1, 2),
                        mpmath.nstr(nu2, 2),
                        betas[row.shape],
                        row.tau,
                        _fmt(tau, _places(row.tau)),
                    ],
                    fmt,
                )
            )
        for number_, table in sorted(layout.floor_tables.items()):
            multiplier = "" if table.multiplier == 1 else f"{table.multiplier} "
            factor = "f4" if table.case == "C" else "f2"
            c_text = f"{multiplier}C1 C2 {factor}(m1, m2, rho) + {table.additive}"
            cells = [table.case, c_text, table.psi, "*", "*", "*"]
            lines.append(_join([*cells, f"Table {number_}", "-"], fmt))
    elif number == 2:
        lines.append(_join(["Case", "beta1"], fmt))
        for case, beta1 in layout.table2.beta1.items():
            lines.append(_join([case, beta1], fmt))
        lines.append("")
        lines.append(_join(["Case", "psi0", "Y0"], fmt))
        for entry in layout.table2.psi0_y0:
            lines.append(_join([entry.case, entry.psi0, entry.y0], fmt))
    elif number in layout.floor_tables:
        table = layout.floor_tables[number]
        header = [
            "m1>=", "C", "rho", "mu",
            "Y0(a2)", "Y0*(a2)", "tau(a2)", "tau*(a2)",
            "Y0(a3)", "tau(a3)", "tau*(a3)",
        ]
        if any(r.tau_e_small for r in table.rows):
            header.append("tau(E<b'')")
        lines.append(_join(header, fmt))
        by_floor = {
            (r.m1_floor, r.shape): r for r in rows if r.table == number
        }
        for floor_row in table.rows:
            alpha2 = check_row(by_floor[(floor_row.m1_floor, RowShape.ALPHA2)])
            alpha3 = check_row(by_floor[(floor_row.m1_floor, RowShape.ALPHA3)])
            cells = [
                floor_row.m1_floor, floor_row.c, floor_row.rho, floor_row.mu,
                floor_row.y0_alpha2,
                _fmt(alpha2.y0_recomputed, _places(floor_row.y0_alpha2)),
                floor_row.tau_alpha2,
                _fmt(alpha2.tau_recomputed, _places(floor_row.tau_alpha2)),
                floor_row.y0_alpha3,
                floor_row.tau_alpha3,
                _fmt(alpha3.tau_recomputed, _places(floor_row.tau_alpha3)),
            ]
            if floor_row.tau_e_small is not None:
                cells.append(floor_row.tau_e_small)
            lines.append(_join(cells, fmt))
    else:
        raise BoundsError(
            code=MachinErrorCode.DOMAIN_ERROR,
            message=f"unknown table {number}; tables 1-6 are available",
        )
    return lines
