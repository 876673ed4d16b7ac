"""Closed-form constants and lower bounds for linear forms in logarithms.

Every function evaluates with mpmath at the working precision of the caller
(see `precision`), which defaults to 40 significant digits.

Functions:
    - g1, g2, f1, f2, f3, f4: correction factors of the exponent bound
    - compute_c2: the C2 constant for cases B and C
    - three_log_lower_bound: bound for three logarithms (case A)
    - two_log_lower_bound: bound for two logarithms with its constants c, c'
    - one_log_lower_bound: bound for one logarithm and iπ/2
    - tau_for: τ with X < τ·Y·log^ψ Y whenever X/log^ψ X < Y and Y >= Y0
    - implied_c1: C1 backed out of a two-logarithm bound
"""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Literal

import mpmath
from mpmath import mpf

from machinkit.errors import BoundsError, MachinErrorCode

DEFAULT_DPS = 40

# Published constants, kept as text so mpf() rounds them at the working precision
ALPHA_FACTOR = "5.296"
HALF_ALPHA_FACTOR = "2.648"
C2_FACTOR = "2.805"
ONE_LOG_FACTOR = "9.05"

Real = mpf | float | int


@contextmanager
def precision(dps: int = DEFAULT_DPS) -> Iterator[None]:
    """Run the enclosed evaluations with at least `dps` significant digits."""
    with mpmath.workdps(max(dps, 30)):
        yield


def _log(value: Real, name: str = "argument") -> mpf:
    value = mpf(value)
    if value <= 1:
        raise BoundsError(
            code=MachinErrorCode.DOMAIN_ERROR,
            message=f"{name} must exceed 1, got {mpmath.nstr(value, 10)}",
        )
    return mpmath.log(value)


# =============================================================================
# Correction factors
# =============================================================================


def g1(x: Real) -> mpf:
    return 1 + mpf(ALPHA_FACTOR) * mpmath.pi / _log(x)


def g2(x: Real) -> mpf:
    """√(1 + 2.648π/log x); evaluated at m1 by every caller."""
    return mpmath.sqrt(1 + mpf(HALF_ALPHA_FACTOR) * mpmath.pi / _log(x))


def f1(m1: Real, m2: Real) -> mpf:
    c = mpf(ALPHA_FACTOR) * mpmath.pi
    return (1 + c / _log(m1, "m1")) * (1 + c / _log(m2, "m2"))


def f2(m1: Real, m2: Real, rho: Real) -> mpf:
    rho = _positive(rho, "rho")
    k = mpf(ALPHA_FACTOR)
    return (1 + k * mpmath.pi / ((rho + k) * _log(m1, "m1"))) * (
        1 + 1 / (mpmath.pi * rho / 2 + _log(m2, "m2"))
    )


def f3(m1: Real, m2: Real) -> mpf:
    c = mpf(HALF_ALPHA_FACTOR) * mpmath.pi
    return 1 + c / _log(m1, "m1") + c / _log(m2, "m2")


def f4(m1: Real, m2: Real, rho: Real) -> mpf:
    rho = _positive(rho, "rho")
    k = mpf(ALPHA_FACTOR)
    c = k * rho * mpmath.pi / (rho + k)
    return (1 + c / _log(m1, "m1")) * (1 + c / _log(m2, "m2"))


def compute_c2(case: Literal["B", "C"], rho: Real) -> mpf:
    """Return C2 for case B or C.

    Raises:
        BoundsError: DOMAIN_ERROR if rho <= 0 or the case is unknown.
    """
    rho = _positive(rho, "rho")
    shift = 20 / (20 - mpmath.log(2))
    root = mpmath.cbrt(mpf("18.883") / 9)
    base = mpf(C2_FACTOR) * mpmath.pi * root * (rho + mpf(ALPHA_FACTOR))
    if case == "B":
        return base * shift
    if case == "C":
        return base**2 * shift
    raise BoundsError(
        code=MachinErrorCode.DOMAIN_ERROR,
        message=f"C2 is defined for cases B and C, got {case!r}",
    )


def _positive(value: Real, name: str) -> mpf:
    value = mpf(value)
    if value <= 0:
        raise BoundsError(
            code=MachinErrorCode.DOMAIN_ERROR,
            message=f"{name} must be positive, got {mpmath.nstr(value, 10)}",
        )
    return value


# =============================================================================
# Three logarithms
# =============================================================================


@dataclass(frozen=True)
class ThreeLogInputs:
    """Inputs of the three-logarithm bound.

    Attributes:
        a1, a2, a3: Height parameters, each >= 4 with product Ω >= 100.
        b_prime: The combined coefficient size b'.
    """

    a1: Real
    a2: Real
    a3: Real
    b_prime: Real

    def __post_init__(self) -> None:
        if min(self.a1, self.a2, self.a3) < 4:
            raise BoundsError(
                code=MachinErrorCode.DOMAIN_ERROR,
                message="a1, a2 and a3 must each be at least 4",
            )
        if self.omega < 100:
            raise BoundsError(
                code=MachinErrorCode.DOMAIN_ERROR,
                message=f"Omega = a1*a2*a3 must be at least 100, got {self.omega}",
            )
        if self.b_prime <= 0:
            raise BoundsError(
                code=MachinErrorCode.DOMAIN_ERROR,
                message="b' must be positive",
            )

    @property
    def omega(self) -> mpf:
        return mpf(self.a1) * self.a2 * self.a3

    @property
    def log_b(self) -> mpf:
        return max(mpf("0.882") + mpmath.log(self.b_prime), mpf(10))


def three_log_b_prime(
    b1p: Real, b2p: Real, b2pp: Real, b3pp: Real, a1: Real, a2: Real, a3: Real
) -> mpf:
    """Return b' = (b1'/a2 + b2'/a1)·(b3''/a2 + b2''/a3)."""
    return (mpf(b1p) / a2 + mpf(b2p) / a1) * (mpf(b3pp) / a2 + mpf(b2pp) / a3)


def three_log_lower_bound(inputs: ThreeLogInputs) -> mpf:
    """Return -790.95·Ω·log²B."""
    return -mpf("790.95") * inputs.omega * inputs.log_b**2


# =============================================================================
# Two logarithms
# =============================================================================


@dataclass(frozen=True)
class TwoLogInputs:
    """Inputs of the two-logarithm bound.

    Attributes:
        rho: ρ > 1.
        mu: μ in [1/3, 1].
        h: h >= log b' + log λ + 1.81.
        a1p, a2p: a'₁ and a'₂ with a'₁·a'₂ >= λ².
        bp: b' >= 20.
    """

    rho: Real
    mu: Real
    h: Real
    a1p: Real
    a2p: Real
    bp: Real

    def __post_init__(self) -> None:
        if self.rho <= 1:
            raise BoundsError(
                code=MachinErrorCode.DOMAIN_ERROR, message="rho must exceed 1"
            )
        if not mpf(1) / 3 <= self.mu <= 1:
            raise BoundsError(
                code=MachinErrorCode.DOMAIN_ERROR, message="mu must lie in [1/3, 1]"
            )
        if self.bp < 20:
            raise BoundsError(
                code=MachinErrorCode.DOMAIN_ERROR, message="b' must be at least 20"
            )
        if mpf(self.a1p) * self.a2p < self.lam**2:
            raise BoundsError(
                code=MachinErrorCode.DOMAIN_ERROR,
                message="a1' * a2' must be at least lambda^2",
            )
        if self.h < self.h_floor:
            raise BoundsError(
                code=MachinErrorCode.DOMAIN_ERROR,
                message=f"h must be at least log b' + log lambda + 1.81 = "
                f"{mpmath.nstr(self.h_floor, 10)}",
            )

    @classmethod
    def from_linear_form(
        cls, b1: Real, b2: Real, a1p: Real, a2p: Real, rho: Real, mu: Real
    ) -> TwoLogInputs:
        """Build inputs for b1·log α1 + b2·log α2 with the smallest admissible h."""
        bp = max(mpf(20), mpf(b1) / a2p + mpf(b2) / a1p)
        sigma = (1 + 2 * mpf(mu) - mpf(mu) ** 2) / 2
        lam = sigma * mpmath.log(rho)
        h = mpmath.log(bp) + mpmath.log(lam) + mpf("1.81")
        return cls(rho=rho, mu=mu, h=h, a1p=a1p, a2p=a2p, bp=bp)

    @property
    def sigma(self) -> mpf:
        mu = mpf(self.mu)
        return (1 + 2 * mu - mu**2) / 2

    @property
    def lam(self) -> mpf:
        return self.sigma * mpmath.log(self.rho)

    @property
    def h_floor(self) -> mpf:
        return mpmath.log(self.bp) + mpmath.log(self.lam) + mpf("1.81")

    @property
    def big_h(self) -> mpf:
        return mpf(self.h) / self.lam + 1 / self.sigma

    @property
    def omega(self) -> mpf:
        return 2 * (1 + mpmath.sqrt(1 + 1 / (4 * self.big_h**2)))

    @property
    def theta(self) -> mpf:
        return 1 / (2 * self.big_h) + mpmath.sqrt(1 + 1 / (4 * self.big_h**2))

    @property
    def c(self) -> mpf:
        lam, omega, big_h = self.lam, self.omega, self.big_h
        a1p, a2p = mpf(self.a1p), mpf(self.a2p)
        inner = (
            omega**2 / 36
            + 2 * lam * omega ** mpf(1.25) * self.theta ** mpf(0.25)
            / (3 * mpmath.sqrt(a1p * a2p * big_h))
            + lam * omega / (3 * big_h) * (1 / a1p + 1 / a2p)
        )
        return self.mu / (lam**3 * self.sigma) * (omega / 6 + mpmath.sqrt(inner)) ** 2

    @property
    def c_prime(self) -> mpf:
        """√(c·σ·ω·θ / (λ³·μ)), reading the unnamed C as c."""
        return mpmath.sqrt(
            self.c * self.sigma * self.omega * self.theta / (self.lam**3 * self.mu)
        )


def two_log_lower_bound(inputs: TwoLogInputs) -> mpf:
    """Evaluate the full right-hand side of the two-logarithm bound."""
    shifted = inputs.h + inputs.lam / inputs.sigma
    area = mpf(inputs.a1p) * inputs.a2p
    return (
        -inputs.c * shifted**2 * area
        - mpmath.sqrt(inputs.omega * inputs.theta) * shifted
        - mpmath.log(inputs.c_prime * shifted**2 * area)
    )


def implied_c1(inputs: TwoLogInputs) -> mpf:
    """Return C1 with -C1·a'₁·a'₂·log²b' equal to the two-logarithm bound."""
    area = mpf(inputs.a1p) * inputs.a2p
    return -two_log_lower_bound(inputs) / (area * mpmath.log(inputs.bp) ** 2)


# =============================================================================
# One logarithm
# =============================================================================


@dataclass(frozen=True)
class OneLogInputs:
    """Inputs of the bound for b2·log α - b1·πi/2.

    Attributes:
        b1, b2: Positive integer coefficients.
        degree: D = [Q(α):Q]/2.
        height: Absolute logarithmic height of α.
    """

    b1: int
    b2: int
    degree: Real
    height: Real

    def __post_init__(self) -> None:
        if self.b1 <= 0 or self.b2 <= 0:
            raise BoundsError(
                code=MachinErrorCode.DOMAIN_ERROR,
                message="b1 and b2 must be positive",
            )
        if self.degree <= 0 or self.height < 0:
            raise BoundsError(
                code=MachinErrorCode.DOMAIN_ERROR,
                message="degree must be positive and height nonnegative",
            )

    @property
    def a(self) -> mpf:
        return mpf(ONE_LOG_FACTOR) * mpmath.pi + 2 * mpf(self.degree) * self.height

    @property
    def bp(self) -> mpf:
        a0 = mpf(ONE_LOG_FACTOR) * mpmath.pi
        return mpf(self.b1) / self.a + mpf(self.b2) / a0

    @property
    def big_h(self) -> mpf:
        d = mpf(self.degree)
        return max(mpf(17), d, d * (mpmath.log(self.bp) + mpf("2.96")) + mpf("0.01"))


def one_log_lower_bound(inputs: OneLogInputs) -> mpf:
    """Return -2.7704·a·H²."""
    return -mpf("2.7704") * inputs.a * inputs.big_h**2


# =============================================================================
# τ
# =============================================================================


def _phi(x: mpf, psi: mpf) -> mpf:
    return x / mpmath.log(x) ** psi


def _solve_branch(y: mpf, psi: mpf, max_iterations: int = 400) -> mpf:
    lo = mpmath.exp(psi)
    if y <= _phi(lo, psi):
        raise BoundsError(
            code=MachinErrorCode.BRANCH_ERROR,
            message=f"Y = {mpmath.nstr(y, 12)} lies below the minimum of X/log^psi X",
        )
    hi = max(2 * lo, y * mpmath.log(y) ** psi)
    for _ in range(max_iterations):
        if _phi(hi, psi) >= y:
            break
        hi *= 2
    else:
        raise BoundsError(
            code=MachinErrorCode.NO_CONVERGENCE,
            message="could not bracket X/log^psi X = Y",
        )
    for _ in range(max_iterations):
        mid = (lo + hi) / 2
        if _phi(mid, psi) < y:
            lo = mid
        else:
            hi = mid
        if hi - lo <= mpf("1e-12") * hi:
            return hi
    raise BoundsError(
        code=MachinErrorCode.NO_CONVERGENCE,
        message="bisection for X/log^psi X = Y did not converge",
    )


def _tau_at(y: mpf, psi: mpf) -> mpf:
    return _solve_branch(y, psi) / (y * mpmath.log(y) ** psi)


def tau_for(y0: Real, psi: Real, samples: int = 10) -> mpf:
    """Return τ = X*/(Y0·log^ψ Y0) where X*/log^ψ X* = Y0 on the increasing branch.

    τ(Y) is also evaluated at Y0·2^k for k = 1..samples and must not exceed
    τ(Y0), so the returned value serves every Y >= Y0.

    Raises:
        BoundsError: BRANCH_ERROR if Y0 <= e^ψ or no solution exists on the
            increasing branch, or if τ(Y) increases past Y0; NO_CONVERGENCE if
            the bisection fails.
    """
    y0, psi = mpf(y0), mpf(psi)
    if y0 <= mpmath.exp(psi):
        raise BoundsError(
            code=MachinErrorCode.BRANCH_ERROR,
            message=f"Y0 must exceed e^psi = {mpmath.nstr(mpmath.exp(psi), 8)}",
        )
    tau = _tau_at(y0, psi)
    for k in range(1, samples + 1):
        if _tau_at(y0 * 2**k, psi) > tau * (1 + mpf("1e-9")):
            raise BoundsError(
                code=MachinErrorCode.BRANCH_ERROR,
                message=f"tau(Y) increases beyond Y0 = {mpmath.nstr(y0, 12)}",
            )
    return tau
