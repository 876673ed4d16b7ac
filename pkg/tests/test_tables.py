"""Tests for the published constant tables.

Tests cover:
    - Loading and expanding the bundled table file
    - Row selection by m1 floor
    - Per-row constants in both modes
    - The consistency report against printed Y0 and τ
    - Rendering
"""

from pathlib import Path

import mpmath
import pytest

from machinkit.bounds.functions import precision
from machinkit.bounds.tables import (
    BoundTableRow,
    ConsistencyEntry,
    RowShape,
    applicable_rows,
    case_a_rows,
    consistency_report,
    implied_c1_for_row,
    load_rows,
    parse_real,
    render_table,
    row_constant,
)
from machinkit.errors import BoundsError, MachinErrorCode


@pytest.fixture(scope="module")
def report() -> list[ConsistencyEntry]:
    return consistency_report()


def _floor_rows(table: int) -> list[BoundTableRow]:
    return [row for row in load_rows() if row.table == table]


class TestParseReal:
    """Tests for parse_real."""

    def test_forms(self) -> None:
        """Verify decimals, fractions and powers of e parse."""
        with precision():
            assert parse_real("12.5") == 12.5
            assert parse_real("7/3") == mpmath.mpf(7) / 3
            assert parse_real(" e^30 ") == mpmath.exp(30)


class TestLoadRows:
    """Tests for load_rows."""

    def test_row_count(self) -> None:
        """Verify five fixed rows and fifty rows from Tables 3-6."""
        rows = load_rows()

        assert len(rows) == 55
        assert len([row for row in rows if row.table == 1]) == 5
        assert [len(_floor_rows(n)) for n in (3, 4, 5, 6)] == [15, 10, 15, 10]

    def test_case_a_rows(self) -> None:
        """Verify the two case A rows."""
        rows = case_a_rows()

        assert [row.case_tag for row in rows] == ["A.i", "A.ii"]
        assert [row.shape for row in rows] == [RowShape.ALPHA2, RowShape.ALPHA3]

    def test_case_c_split(self) -> None:
        """Verify Table 5 assigns α₃ rows to C.ii and the rest to C.i."""
        tags = {(row.shape, row.case_tag) for row in _floor_rows(5)}

        assert tags == {
            (RowShape.ALPHA2, "C.i"),
            (RowShape.ALPHA3, "C.ii"),
            (RowShape.E_SMALL, "C.i"),
        }

    def test_label(self) -> None:
        """Verify the row label names case, table, shape and floor."""
        assert _floor_rows(3)[0].label == "B.a T3 alpha2 m1>=e^30"

    def test_custom_file(self, tmp_path: Path) -> None:
        """Verify a table file on disk is expanded the same way."""
        path = tmp_path / "tables.yml"
        path.write_text(
            "fixed_rows:\n"
            '  - {case: "A.i", shape: alpha2, psi: "2", constant: A,'
            ' tau: "2.351", y0: "32163"}\n'
            "table2:\n"
            "  beta1: {}\n"
            "  psi0_y0: []\n"
            "floor_tables: {}\n"
        )

        rows = load_rows(path)

        assert len(rows) == 1
        assert rows[0].case_tag == "A.i"


class TestApplicableRows:
    """Tests for applicable_rows."""

    def test_small_m1_picks_floor_13(self) -> None:
        """Verify m1 = 100 uses the rows with floor 13."""
        with precision():
            rows = applicable_rows(load_rows(), 100)

        floors = {row.m1_floor for row in rows if row.constant == "floor"}
        assert floors == {"13"}
        assert len(rows) == 15

    def test_large_m1_picks_floor_e30(self) -> None:
        """Verify m1 = e^31 uses the rows with floor e^30."""
        with precision():
            rows = applicable_rows(load_rows(), mpmath.exp(31))

        floors = {row.m1_floor for row in rows if row.constant == "floor"}
        assert floors == {"e^30"}

    def test_below_every_floor(self) -> None:
        """Verify m1 = 4 keeps only the fixed rows."""
        with precision():
            rows = applicable_rows(load_rows(), 4)

        assert all(row.table == 1 for row in rows)
        assert len(rows) == 5


class TestRowConstant:
    """Tests for row_constant and implied_c1_for_row."""

    @pytest.mark.parametrize("table", [3, 4, 5, 6])
    def test_recompute_reproduces_printed_c(self, table: int) -> None:
        """Verify recomputing with the implied C1 at the floor gives the printed C."""
        with precision():
            for row in _floor_rows(table):
                m1 = row.floor_value
                m2 = max(m1, mpmath.exp(30))
                recomputed = row_constant(row, m1, m2, mode="recompute")
                assert float(recomputed) == pytest.approx(
                    float(parse_real(row.c)), rel=1e-12
                )

    def test_as_published(self) -> None:
        """Verify as-published mode returns the printed C for floor rows."""
        row = _floor_rows(3)[0]
        with precision():
            assert row_constant(row, 10**20, 10**30) == parse_real("10312.6108")

    def test_case_a_constant(self) -> None:
        """Verify case A rows use 28962·f1(m1, m2)."""
        row = case_a_rows()[0]
        with precision():
            value = row_constant(row, mpmath.exp(30), mpmath.exp(30))
            expected = 28962 * (1 + 5.296 * mpmath.pi / 30) ** 2

        assert float(value) == pytest.approx(float(expected))

    def test_implied_c1_needs_printed_c(self) -> None:
        """Verify fixed rows have no implied C1."""
        with pytest.raises(BoundsError) as exc_info, precision():
            implied_c1_for_row(case_a_rows()[0])

        assert exc_info.value.code == MachinErrorCode.DOMAIN_ERROR

    def test_fixed_policy_needs_value(self) -> None:
        """Verify the fixed policy without a value raises DOMAIN_ERROR."""
        row = _floor_rows(3)[0]
        with pytest.raises(BoundsError) as exc_info, precision():
            row_constant(row, 100, 10**20, mode="recompute", c1_policy="fixed")

        assert exc_info.value.code == MachinErrorCode.DOMAIN_ERROR

    def test_fixed_policy_scales_linearly(self) -> None:
        """Verify C - additive is proportional to the fixed C1."""
        row = _floor_rows(4)[0]
        additive = parse_real(row.additive)
        with precision():
            one = row_constant(row, 100, 10**20, "recompute", "fixed", 1)
            two = row_constant(row, 100, 10**20, "recompute", "fixed", 2)

        assert float(two - additive) == pytest.approx(2 * float(one - additive))


class TestConsistencyReport:
    """Tests for consistency_report."""

    def test_no_mismatch(self, report: list[ConsistencyEntry]) -> None:
        """Verify no printed τ is smaller than the recomputed one."""
        assert len(report) == 55
        assert all(entry.tau_status != "mismatch" for entry in report)

    def test_case_a_matches(self, report: list[ConsistencyEntry]) -> None:
        """Verify the case A τ values are reproduced."""
        statuses = [e.tau_status for e in report if e.row.case_tag.startswith("A")]

        assert statuses == ["match", "match"]

    @pytest.mark.parametrize("table", [3, 5])
    def test_psi_tables_match(
        self, report: list[ConsistencyEntry], table: int
    ) -> None:
        """Verify every τ with a printed Y0 is reproduced in Tables 3 and 5."""
        entries = [e for e in report if e.row.table == table and e.row.y0]

        assert len(entries) == 10
        assert all(entry.tau_status == "match" for entry in entries)

    @pytest.mark.parametrize("table", [4, 6])
    def test_small_psi_tables_are_safe(
        self, report: list[ConsistencyEntry], table: int
    ) -> None:
        """Verify Tables 4 and 6 print τ at least as large as recomputed."""
        entries = [e for e in report if e.row.table == table]

        assert all(e.tau_status in ("match", "conservative") for e in entries)
        assert all(e.tau_recomputed <= e.row.tau_value for e in entries)

    def test_case_b_b_rows_are_conservative(
        self, report: list[ConsistencyEntry]
    ) -> None:
        """Verify every B.b row prints a τ above τ(564.039, 7/3) = 4.5833."""
        entries = [e for e in report if e.row.case_tag == "B.b"]

        assert len(entries) == 3
        assert [e.tau_status for e in entries] == ["conservative"] * 3
        for entry in entries:
            assert float(entry.tau_recomputed) == pytest.approx(4.5833, abs=1e-3)

    @pytest.mark.parametrize(
        ("table", "printed", "recomputed"),
        [(4, "1.1857", 1.01856), (6, "1.7565", 1.07565)],
    )
    def test_dropped_digit_rows(
        self,
        report: list[ConsistencyEntry],
        table: int,
        printed: str,
        recomputed: float,
    ) -> None:
        """Verify the e^30 α₂ row matches its printed τ with a 0 restored."""
        entry = next(
            e
            for e in report
            if e.row.table == table
            and e.row.m1_floor == "e^30"
            and e.row.shape is RowShape.ALPHA2
        )

        assert entry.row.tau == printed
        assert entry.tau_status == "conservative"
        assert float(entry.tau_recomputed) == pytest.approx(recomputed, abs=2e-4)

    def test_e_small_rows_are_printed_only(
        self, report: list[ConsistencyEntry]
    ) -> None:
        """Verify rows without a printed Y0 are not recomputed."""
        entries = [e for e in report if e.row.shape is RowShape.E_SMALL]

        assert len(entries) == 10
        assert all(entry.tau_status == "printed" for entry in entries)
        assert all(entry.tau_recomputed is None for entry in entries)

    def test_y0_reproduced_at_floor(self, report: list[ConsistencyEntry]) -> None:
        """Verify Y at the floor reproduces the printed α₂ Y0."""
        entries = [e for e in report if e.y0_discrepancy is not None]

        assert len(entries) == 20
        assert all(entry.y0_discrepancy < 1e-3 for entry in entries)

    def test_floor_rows_carry_c2(self, report: list[ConsistencyEntry]) -> None:
        """Verify every floor row reports C2 and a positive implied C1."""
        entries = [e for e in report if e.row.constant == "floor"]

        assert all(entry.c2 is not None for entry in entries)
        assert all(entry.implied_c1 > 0 for entry in entries)


class TestRenderTable:
    """Tests for render_table."""

    def test_table_1(self) -> None:
        """Verify the fixed rows and one summary line per floor table."""
        lines = render_table(1, fmt="tsv").splitlines()

        assert lines[0].split("\t")[:3] == ["Case", "C", "psi"]
        assert lines[1].startswith("A.i\t28962 f1(m1, m2)\t2\t")
        assert len(lines) == 1 + 5 + 4

    def test_table_2(self) -> None:
        """Verify the auxiliary constants."""
        text = render_table(2)

        assert "B.b | 0.3432" in text
        assert "A.i | 2 | 32163" in text

    def test_table_3(self) -> None:
        """Verify the header and the first row of Table 3."""
        lines = render_table(3, fmt="tsv").splitlines()

        assert lines[0].split("\t")[-1] == "tau(E<b'')"
        assert lines[1].split("\t")[:4] == ["e^30", "10312.6108", "7.4", "0.62"]
        assert len(lines) == 6

    def test_table_4_has_no_e_small_column(self) -> None:
        """Verify tables without E < b'' rows omit that column."""
        header = render_table(4).splitlines()[0]

        assert "tau(E<b'')" not in header
        assert header.startswith("m1>= | C | rho | mu")

    def test_unknown_table(self) -> None:
        """Verify table 7 raises DOMAIN_ERROR."""
        with pytest.raises(BoundsError) as exc_info:
            render_table(7)

        assert exc_info.value.code == MachinErrorCode.DOMAIN_ERROR
