"""Tests for the closed-form constants and linear-form lower bounds.

Tests cover:
    - Correction factors f1-f4, g1, g2
    - C2 for cases B and C
    - Three-, two- and one-logarithm bounds
    - τ from Y0 and ψ
"""

import math

import mpmath
import pytest

from machinkit.bounds.functions import (
    OneLogInputs,
    ThreeLogInputs,
    TwoLogInputs,
    compute_c2,
    f1,
    f2,
    f3,
    f4,
    g1,
    g2,
    implied_c1,
    one_log_lower_bound,
    precision,
    tau_for,
    three_log_b_prime,
    three_log_lower_bound,
    two_log_lower_bound,
)
from machinkit.errors import BoundsError, MachinErrorCode
from machinkit.gaussian import height_of_quotient

SHIFT = 20 / (20 - math.log(2))


class TestCorrectionFactors:
    """Tests for f1-f4, g1 and g2."""

    def test_f3_small_moduli(self) -> None:
        """Verify f3(13, 17)·log 17 > 20.34."""
        with precision():
            assert f3(13, 17) * mpmath.log(17) > 20.34

    def test_f3_large_moduli(self) -> None:
        """Verify f3(m, m)·√log m is about 8.1579 at m = 16816560."""
        m = 16816560
        with precision():
            value = f3(m, m) * mpmath.sqrt(mpmath.log(m))

        assert float(value) == pytest.approx(8.15791, abs=1e-4)

    def test_factors_exceed_one_and_decrease(self) -> None:
        """Verify every factor exceeds 1 and shrinks as the moduli grow."""
        small, large = math.exp(30), math.exp(60)
        with precision():
            assert f1(large, large) < f1(small, small)
            assert f2(large, large, 7.4) < f2(small, small, 7.4)
            assert f4(large, large, 7.4) < f4(small, small, 7.4)
            assert g1(large) < g1(small)
            assert g2(large) < g2(small)
            for value in (f1(small, small), f3(small, small), g2(small)):
                assert value > 1

    def test_g2_squared(self) -> None:
        """Verify g2(x)² = 1 + 2.648π/log x."""
        with precision():
            value = float(g2(100) ** 2)

        assert value == pytest.approx(1 + 2.648 * math.pi / math.log(100))

    def test_full_working_precision(self) -> None:
        """Verify f1, g1 and C2 carry 50 digits, not just double precision."""
        with precision(50):
            k = mpmath.mpf("5.296") * mpmath.pi
            log_m = mpmath.mpf(31)
            expected_f1 = (1 + k / log_m) ** 2
            expected_c2 = (
                mpmath.mpf("2.805")
                * mpmath.pi
                * mpmath.cbrt(mpmath.mpf("18.883") / 9)
                * (mpmath.mpf("7.4") + mpmath.mpf("5.296"))
                * 20
                / (20 - mpmath.log(2))
            )
            m = mpmath.exp(log_m)

            assert abs(f1(m, m) / expected_f1 - 1) < mpmath.mpf("1e-45")
            assert abs(g1(m) / (1 + k / log_m) - 1) < mpmath.mpf("1e-45")
            c2 = compute_c2("B", mpmath.mpf("7.4"))
            assert abs(c2 / expected_c2 - 1) < mpmath.mpf("1e-45")

    def test_log_domain(self) -> None:
        """Verify a modulus of 1 raises DOMAIN_ERROR."""
        with pytest.raises(BoundsError) as exc_info:
            f1(1, 13)

        assert exc_info.value.code == MachinErrorCode.DOMAIN_ERROR

    def test_rho_domain(self) -> None:
        """Verify rho <= 0 raises DOMAIN_ERROR."""
        with pytest.raises(BoundsError) as exc_info:
            f4(13, 17, 0)

        assert exc_info.value.code == MachinErrorCode.DOMAIN_ERROR


class TestComputeC2:
    """Tests for compute_c2."""

    def test_case_b(self) -> None:
        """Verify C2(B, 7.4) is about 148.4."""
        with precision():
            assert float(compute_c2("B", 7.4)) == pytest.approx(148.4, abs=0.1)

    def test_case_c_squares_the_base(self) -> None:
        """Verify C2(C, ρ) = C2(B, ρ)² / shift."""
        with precision():
            b, c = compute_c2("B", 9.5), compute_c2("C", 9.5)

        assert float(c) == pytest.approx(float(b) ** 2 / SHIFT, rel=1e-12)

    def test_small_rho_limit(self) -> None:
        """Verify C2(B, ρ) tends to the ρ = 0 value of the closed form."""
        limit = 2.805 * math.pi * (18.883 / 9) ** (1 / 3) * 5.296 * SHIFT
        with precision():
            assert float(compute_c2("B", 1e-12)) == pytest.approx(limit, rel=1e-9)

    def test_non_positive_rho(self) -> None:
        """Verify rho <= 0 raises DOMAIN_ERROR."""
        with pytest.raises(BoundsError) as exc_info:
            compute_c2("B", -1)

        assert exc_info.value.code == MachinErrorCode.DOMAIN_ERROR

    def test_unknown_case(self) -> None:
        """Verify a case other than B or C raises DOMAIN_ERROR."""
        with pytest.raises(BoundsError) as exc_info:
            compute_c2("A", 7.4)  # type: ignore[arg-type]

        assert exc_info.value.code == MachinErrorCode.DOMAIN_ERROR


class TestThreeLogBound:
    """Tests for three_log_lower_bound."""

    def test_plug_in(self) -> None:
        """Verify Ω = 100 with log B clamped to 10 gives -7909500."""
        with precision():
            bound = three_log_lower_bound(ThreeLogInputs(4, 5, 5, 1))

        assert float(bound) == pytest.approx(-7_909_500)

    def test_linear_in_omega(self) -> None:
        """Verify doubling a1 doubles the magnitude."""
        with precision():
            base = three_log_lower_bound(ThreeLogInputs(4, 5, 5, 1))
            doubled = three_log_lower_bound(ThreeLogInputs(8, 5, 5, 1))

        assert float(doubled) == pytest.approx(2 * float(base))

    def test_large_b_prime(self) -> None:
        """Verify log B = 0.882 + log b' once it exceeds 10."""
        with precision():
            inputs = ThreeLogInputs(4, 5, 5, mpmath.exp(20))
            assert float(inputs.log_b) == pytest.approx(20.882)
            assert float(three_log_lower_bound(inputs)) == pytest.approx(
                -790.95 * 100 * 20.882**2
            )

    def test_b_prime(self) -> None:
        """Verify b' = (b1'/a2 + b2'/a1)·(b3''/a2 + b2''/a3)."""
        with precision():
            value = three_log_b_prime(8, 4, 6, 10, 4, 5, 6)

        assert float(value) == pytest.approx((8 / 5 + 4 / 4) * (10 / 5 + 6 / 6))

    @pytest.mark.parametrize(
        ("a1", "a2", "a3"),
        [(3, 10, 10), (4, 4, 4)],
    )
    def test_domain(self, a1: int, a2: int, a3: int) -> None:
        """Verify a_i < 4 or Ω < 100 raises DOMAIN_ERROR."""
        with pytest.raises(BoundsError) as exc_info:
            ThreeLogInputs(a1, a2, a3, 1)

        assert exc_info.value.code == MachinErrorCode.DOMAIN_ERROR


class TestTwoLogBound:
    """Tests for TwoLogInputs and two_log_lower_bound."""

    def test_sigma(self) -> None:
        """Verify σ = (1 + 2μ - μ²)/2 = 0.9278 at μ = 0.62."""
        with precision():
            inputs = TwoLogInputs(rho=7.4, mu=0.62, h=10, a1p=10, a2p=10, bp=20)
            assert float(inputs.sigma) == pytest.approx(0.9278)
            assert float(inputs.lam) == pytest.approx(0.9278 * math.log(7.4))

    def test_large_h_limits(self) -> None:
        """Verify ω → 4 and θ → 1 as h grows."""
        with precision():
            inputs = TwoLogInputs(rho=7.4, mu=0.62, h=1e12, a1p=10, a2p=10, bp=20)
            assert float(inputs.omega) == pytest.approx(4, abs=1e-9)
            assert float(inputs.theta) == pytest.approx(1, abs=1e-9)

    def test_monotone_in_area(self) -> None:
        """Verify a larger a'₁ gives a more negative bound."""
        with precision():
            narrow = TwoLogInputs(rho=7.4, mu=0.62, h=10, a1p=10, a2p=10, bp=20)
            wide = TwoLogInputs(rho=7.4, mu=0.62, h=10, a1p=20, a2p=10, bp=20)
            assert two_log_lower_bound(wide) < two_log_lower_bound(narrow) < 0

    def test_from_linear_form(self) -> None:
        """Verify the smallest admissible h is chosen and b' is at least 20."""
        with precision():
            inputs = TwoLogInputs.from_linear_form(1, 1, 10, 10, rho=7.4, mu=0.62)
            assert inputs.bp == 20
            assert inputs.h == inputs.h_floor
            assert implied_c1(inputs) > 0

    @pytest.mark.parametrize(
        "overrides",
        [{"rho": 1}, {"mu": 0.2}, {"mu": 1.1}, {"bp": 19}, {"h": 1}, {"a1p": 0.1}],
    )
    def test_domain(self, overrides: dict[str, float]) -> None:
        """Verify out-of-range inputs raise DOMAIN_ERROR."""
        kwargs: dict[str, float] = {
            "rho": 7.4,
            "mu": 0.62,
            "h": 10,
            "a1p": 10,
            "a2p": 10,
            "bp": 20,
        }
        kwargs.update(overrides)
        with pytest.raises(BoundsError) as exc_info, precision():
            TwoLogInputs(**kwargs)

        assert exc_info.value.code == MachinErrorCode.DOMAIN_ERROR


class TestOneLogBound:
    """Tests for one_log_lower_bound."""

    def test_plug_in(self) -> None:
        """Verify H = 17 and the bound is -2.7704·a·289 for α = (2+i)/(2-i)."""
        with precision():
            inputs = OneLogInputs(b1=1, b2=1, degree=1, height=height_of_quotient(2))
            assert inputs.big_h == 17
            assert float(inputs.a) == pytest.approx(9.05 * math.pi + math.log(5))
            ratio = one_log_lower_bound(inputs) / inputs.a

        assert float(ratio) == pytest.approx(-2.7704 * 289)

    def test_large_coefficients(self) -> None:
        """Verify H grows with log b' once it passes 17."""
        with precision():
            inputs = OneLogInputs(b1=10**12, b2=10**12, degree=1, height=1)
            assert inputs.big_h > 17
            assert float(inputs.big_h) == pytest.approx(
                float(mpmath.log(inputs.bp)) + 2.97
            )

    def test_domain(self) -> None:
        """Verify non-positive coefficients raise DOMAIN_ERROR."""
        with pytest.raises(BoundsError) as exc_info:
            OneLogInputs(b1=0, b2=1, degree=1, height=1)

        assert exc_info.value.code == MachinErrorCode.DOMAIN_ERROR


class TestTauFor:
    """Tests for tau_for."""

    def test_case_a_value(self) -> None:
        """Verify τ(32163, 2) = 2.351."""
        with precision():
            assert float(tau_for(32163, 2)) == pytest.approx(2.351, abs=1e-3)

    def test_floor_table_value(self) -> None:
        """Verify τ(57814.865, 7/3) = 3.04278."""
        with precision():
            tau = tau_for(mpmath.mpf("57814.865"), mpmath.mpf(7) / 3)

        assert float(tau) == pytest.approx(3.04278, abs=1e-4)

    def test_defining_property(self) -> None:
        """Verify X/log^ψ X = Y at X = τ·Y·log^ψ Y, with τ shrinking as Y grows."""
        with precision():
            y, psi = mpmath.mpf(32163), mpmath.mpf(2)
            tau = tau_for(y, psi)
            x = tau * y * mpmath.log(y) ** psi
            assert float(x / mpmath.log(x) ** psi) == pytest.approx(float(y), rel=1e-9)
            assert tau_for(4 * y, psi) < tau

    def test_below_branch(self) -> None:
        """Verify Y0 <= e^ψ raises BRANCH_ERROR."""
        with pytest.raises(BoundsError) as exc_info, precision():
            tau_for(2, 2)

        assert exc_info.value.code == MachinErrorCode.BRANCH_ERROR
