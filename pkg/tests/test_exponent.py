"""Tests for the exponent bound."""

import mpmath
import pytest

from machinkit.bounds.exponent import evaluate_row, exponent_bound, row_exponent
from machinkit.bounds.functions import precision
from machinkit.bounds.tables import RowShape, case_a_rows, load_rows
from machinkit.errors import BoundsError, MachinErrorCode


def _exp(x: float) -> mpmath.mpf:
    with precision():
        return mpmath.exp(x)


class TestExponentBound:
    """Tests for exponent_bound."""

    def test_value_is_maximum_over_rows(self) -> None:
        """Verify the bound is the largest per-row value and names its row."""
        result = exponent_bound(_exp(35), _exp(50))

        assert len(result.per_row) == 15
        assert result.value == max(entry.value for entry in result.per_row)
        assert result.row in [entry.row for entry in result.per_row]
        assert result.value > 0

    def test_monotone_in_m2(self) -> None:
        """Verify a larger m2 gives a larger bound."""
        smaller = exponent_bound(_exp(35), _exp(50)).value
        larger = exponent_bound(_exp(35), _exp(60)).value

        assert larger > smaller

    def test_monotone_in_m1_within_floor_band(self) -> None:
        """Verify the bound grows with m1 while the same floors apply."""
        values = [exponent_bound(_exp(x), _exp(50)).value for x in (30.5, 35, 40)]

        assert values == sorted(values)

    @pytest.mark.parametrize("floor", [10, 30])
    def test_drops_across_a_floor(self, floor: int) -> None:
        """Verify passing a floor switches to a smaller C and lowers the bound."""
        rows = [row for row in load_rows() if row.table == 3]
        below = exponent_bound(_exp(floor - 0.1), _exp(50), rows=rows)
        above = exponent_bound(_exp(floor + 0.1), _exp(50), rows=rows)

        assert above.value < below.value
        assert above.row.m1_floor == f"e^{floor}"

    def test_subset_of_rows(self) -> None:
        """Verify restricting the rows can only lower the bound."""
        everything = exponent_bound(_exp(35), _exp(50)).value
        case_a = exponent_bound(_exp(35), _exp(50), rows=case_a_rows()).value

        assert case_a <= everything

    def test_recompute_mode_with_fixed_c1(self) -> None:
        """Verify recompute mode with a fixed C1 yields a finite positive bound."""
        result = exponent_bound(
            _exp(35), _exp(50), mode="recompute", c1_policy="fixed", c1_value=10
        )

        assert result.value > 0

    def test_m2_not_above_e30(self) -> None:
        """Verify m2 <= e^30 raises OUT_OF_STATED_DOMAIN."""
        with pytest.raises(BoundsError) as exc_info:
            exponent_bound(_exp(20), _exp(29))

        assert exc_info.value.code == MachinErrorCode.OUT_OF_STATED_DOMAIN

    @pytest.mark.parametrize(("log_m1", "log_m2"), [(40, 35), (40, 40)])
    def test_m1_not_below_m2(self, log_m1: float, log_m2: float) -> None:
        """Verify m1 >= m2 raises DOMAIN_ERROR."""
        with pytest.raises(BoundsError) as exc_info:
            exponent_bound(_exp(log_m1), _exp(log_m2))

        assert exc_info.value.code == MachinErrorCode.DOMAIN_ERROR

    def test_m1_of_one(self) -> None:
        """Verify m1 = 1 raises DOMAIN_ERROR."""
        with pytest.raises(BoundsError) as exc_info:
            exponent_bound(1, _exp(40))

        assert exc_info.value.code == MachinErrorCode.DOMAIN_ERROR


class TestRowBound:
    """Tests for evaluate_row and RowBound."""

    def test_kl_cap(self) -> None:
        """Verify the K·L cap is value·2·C·log^exponent(Y)."""
        row = case_a_rows()[0]
        with precision():
            entry = evaluate_row(row, mpmath.exp(35), mpmath.exp(50))
            log_y = mpmath.log(entry.y_effective)
            expected = entry.value * 2 * entry.c * log_y**entry.exponent

            assert entry.exponent == 2
            assert entry.kl_cap == expected

    def test_y_clamped_to_y0(self) -> None:
        """Verify log Y is taken at max(Y, Y0) above a row's floor."""
        row = next(
            row
            for row in load_rows()
            if row.table == 3 and row.m1_floor == "5" and row.shape is RowShape.ALPHA2
        )
        with precision():
            entry = evaluate_row(row, 13, mpmath.exp(30))

        assert entry.y < row.y0_value
        assert entry.y_effective == row.y0_value

    def test_mu_exponent(self) -> None:
        """Verify the μ exponent applies to rows that carry μ."""
        floor_row = next(row for row in load_rows() if row.constant == "floor")
        fixed_row = case_a_rows()[0]
        with precision():
            assert row_exponent(floor_row, "mu") == mpmath.mpf("0.62")
            assert row_exponent(floor_row) == mpmath.mpf(7) / 3
            assert row_exponent(fixed_row, "mu") == 2

    def test_mu_without_mu_rows(self) -> None:
        """Verify asking for μ over case A rows raises NOT_APPLICABLE."""
        with pytest.raises(BoundsError) as exc_info:
            exponent_bound(_exp(35), _exp(50), rows=case_a_rows(), exponent="mu")

        assert exc_info.value.code == MachinErrorCode.NOT_APPLICABLE

    def test_mu_with_floor_rows(self) -> None:
        """Verify μ is accepted once a floor row is admitted."""
        result = exponent_bound(_exp(35), _exp(50), exponent="mu")

        assert result.value > 0
