"""Tests for high-precision arctangents and π.

Tests cover:
    - FixedDecimal arithmetic and error propagation
    - arctan(1/x) by series and by binary splitting
    - π from verified relations, cross-checked between formulae
    - Numeric confirmation of relations
"""

import mpmath
import pytest

from machinkit.corpus import (
    EULER,
    GAUSS,
    HUTTON,
    MACHIN,
    NAMED_RELATIONS,
    SIMSON,
)
from machinkit.errors import MachinErrorCode, PrecisionError
from machinkit.precision import (
    FixedDecimal,
    agreeing_digits,
    arctan_recip,
    format_blocks,
    numeric_check,
    pi_from_relation,
)
from machinkit.relations import ArctanRelation


def _within_error(a: FixedDecimal, b: FixedDecimal) -> bool:
    return abs(a.mantissa - b.mantissa) <= a.error_ulps + b.error_ulps


def _true_pi(digits: int) -> int:
    with mpmath.workdps(digits + 20):
        return int(mpmath.nint(mpmath.pi * mpmath.mpf(10) ** digits))


class TestFixedDecimal:
    """Tests for FixedDecimal."""

    def test_digits(self) -> None:
        """Verify the decimal rendering pads and signs correctly."""
        assert FixedDecimal(314159, 5).digits() == "3.14159"
        assert FixedDecimal(-5, 3).digits() == "-0.005"
        assert FixedDecimal(42, 0).digits() == "42"

    def test_errors_add(self) -> None:
        """Verify addition and subtraction add error bounds."""
        a, b = FixedDecimal(100, 2, 1), FixedDecimal(50, 2, 2)

        assert (a + b) == FixedDecimal(150, 2, 3)
        assert (a - b) == FixedDecimal(50, 2, 3)

    def test_scaled(self) -> None:
        """Verify scaling by a negative integer scales the error by |k|."""
        assert FixedDecimal(7, 1, 2).scaled(-3) == FixedDecimal(-21, 1, 6)

    def test_divided_rounds_to_nearest(self) -> None:
        """Verify division rounds to nearest and adds half an ulp of error."""
        result = FixedDecimal(10, 0, 0).divided(4)

        assert result.mantissa == 3
        assert result.error_ulps == 1

    def test_rounded(self) -> None:
        """Verify rounding to fewer decimals."""
        result = FixedDecimal(314159, 5, 3).rounded(2)

        assert result.mantissa == 314
        assert result.error_ulps == 2

    def test_scale_mismatch(self) -> None:
        """Verify adding values of different scale raises."""
        with pytest.raises(ValueError):
            FixedDecimal(1, 2) + FixedDecimal(1, 3)


class TestArctanRecip:
    """Tests for arctan_recip."""

    def test_self_consistent_across_precisions(self) -> None:
        """Verify 30 digits agree with 60 digits rounded to 30."""
        low = arctan_recip(2, 30)
        high = arctan_recip(2, 60).rounded(30)

        assert _within_error(low, high)

    @pytest.mark.parametrize("x", [2, 3, 5, 7, 57, 239, 4443])
    def test_bounded_by_reciprocal(self, x: int) -> None:
        """Verify 0 < arctan(1/x) < 1/x."""
        value = arctan_recip(x, 40)

        assert 0 < value.mantissa < 10**40 // x
        assert value.error_ulps <= 2

    @pytest.mark.parametrize("x", [2, 7, 239])
    def test_doubling_precision_stays_within_error(self, x: int) -> None:
        """Verify recomputing at twice the digits moves the value within the bound."""
        for digits in (25, 120, 400):
            base = arctan_recip(x, digits)
            finer = arctan_recip(x, 2 * digits).rounded(digits)
            assert _within_error(base, finer)

    def test_binary_splitting_matches_series(self) -> None:
        """Verify both evaluation paths agree."""
        series = arctan_recip(7, 300, binary_split_threshold=1000)
        split = arctan_recip(7, 300, binary_split_threshold=100)

        assert _within_error(series, split)

    def test_euler_pair_is_quarter_pi(self) -> None:
        """Verify arctan(1/2) + arctan(1/3) = π/4 against mpmath."""
        digits = 80
        total = arctan_recip(2, digits) + arctan_recip(3, digits)

        assert abs(4 * total.mantissa - _true_pi(digits)) <= 4 * total.error_ulps + 1

    def test_precondition(self) -> None:
        """Verify x < 2 raises PRECONDITION."""
        with pytest.raises(PrecisionError) as exc_info:
            arctan_recip(1, 10)

        assert exc_info.value.code == MachinErrorCode.PRECONDITION


class TestPiFromRelation:
    """Tests for pi_from_relation."""

    def test_matches_mpmath(self) -> None:
        """Verify Machin's formula gives π within the stated error."""
        value = pi_from_relation(MACHIN, 100)

        assert value.scale == 100
        assert value.error_ulps <= 5
        assert abs(value.mantissa - _true_pi(100)) <= value.error_ulps

    def test_machin_and_gauss_agree(self) -> None:
        """Verify Machin and Gauss agree to at least 998 of 1000 digits."""
        machin = pi_from_relation(MACHIN, 1000)
        gauss = pi_from_relation(GAUSS, 1000)

        assert agreeing_digits(machin, gauss) >= 998

    def test_hutton_and_euler_agree(self) -> None:
        """Verify Hutton and Euler agree likewise."""
        hutton = pi_from_relation(HUTTON, 300)
        euler = pi_from_relation(EULER, 300)

        assert agreeing_digits(hutton, euler) >= 298

    def test_r_greater_than_one(self) -> None:
        """Verify the r = 3 formula divides by r correctly."""
        value = pi_from_relation(NAMED_RELATIONS["wrench-2"], 60)

        assert abs(value.mantissa - _true_pi(60)) <= value.error_ulps

    def test_zero_r_rejected(self) -> None:
        """Verify an r = 0 identity does not determine π."""
        identity = ArctanRelation(((4, 1), (5, -1), (21, -1)), 0)
        with pytest.raises(PrecisionError) as exc_info:
            pi_from_relation(identity, 50)

        assert exc_info.value.code == MachinErrorCode.RELATION_NOT_VERIFIED

    def test_unverified_rejected(self) -> None:
        """Verify a false relation is rejected."""
        with pytest.raises(PrecisionError) as exc_info:
            pi_from_relation(ArctanRelation(((5, 5), (239, -1)), 1), 50)

        assert exc_info.value.code == MachinErrorCode.RELATION_NOT_VERIFIED


class TestNumericCheck:
    """Tests for numeric_check."""

    def test_simson(self) -> None:
        """Verify Simson's formula passes."""
        assert numeric_check(SIMSON, 50) is True

    def test_perturbed_simson(self) -> None:
        """Verify Simson's formula with coefficient 9 fails."""
        perturbed = ArctanRelation(((10, 9), (239, -1), (515, -4)), 1)

        assert numeric_check(perturbed, 50) is False

    def test_zero_identity(self) -> None:
        """Verify the (4, 5, 21) identity passes with r = 0."""
        identity = ArctanRelation(((4, 1), (5, -1), (21, -1)), 0)

        assert numeric_check(identity, 50) is True

    def test_reference_itself_uses_fallback(self) -> None:
        """Verify the reference relation is checked against the fallback."""
        assert numeric_check(MACHIN, 50) is True

    @pytest.mark.parametrize("name", sorted(NAMED_RELATIONS))
    def test_corpus_agrees_with_exact_verification(self, name: str) -> None:
        """Verify every exactly verified formula also passes numerically."""
        assert numeric_check(NAMED_RELATIONS[name], 50) is True

    def test_precondition(self) -> None:
        """Verify digits < 20 raises PRECONDITION."""
        with pytest.raises(PrecisionError) as exc_info:
            numeric_check(MACHIN, 19)

        assert exc_info.value.code == MachinErrorCode.PRECONDITION


class TestFormatBlocks:
    """Tests for format_blocks."""

    def test_layout(self) -> None:
        """Verify blocks of ten digits, five per line, and an error line."""
        lines = format_blocks(pi_from_relation(MACHIN, 60)).splitlines()

        assert lines[0] == "3."
        assert lines[1].split(" ")[0] == "1415926535"
        assert len(lines[1].split(" ")) == 5
        assert len(lines[2].split(" ")) == 1
        assert lines[-1].startswith("error <= ")
        assert lines[-1].endswith(" * 10^-60")
