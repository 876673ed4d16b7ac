"""Exact Gaussian-integer arithmetic.

This module provides the arithmetic every other machinkit module builds on:
norms, conjugates, associates, exact division, gcd, splitting of sums of two
squares, and algebraic heights of unit-modulus quotients.

Classes:
    - GInt: Immutable Gaussian integer with arbitrary-precision parts
    - GRational: Reduced quotient of two Gaussian integers

Functions:
    - norm: re² + im²
    - conj: complex conjugate
    - primary_associate: associate with argument in (-π/4, π/4)
    - exact_divide: exact quotient or None
    - ggcd: Gaussian gcd (normalized to the first quadrant)
    - sqrt_minus_one_mod: smaller square root of -1 modulo a prime
    - split_prime: canonical η with η·η̄ = p for a prime p ≡ 1 (mod 4)
    - split_sum_two_squares: η with η·η̄ = m for m with prime factors ≡ 1 (mod 4)
    - height_of_quotient: h((x+i)/(x-i)) as the linear-form bounds use it
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass

from sympy import factorint, isprime
from sympy.ntheory import sqrt_mod

from machinkit.errors import GaussianError, MachinErrorCode


@dataclass(frozen=True, slots=True)
class GInt:
    """An exact Gaussian integer re + im·i.

    Attributes:
        re: Real part.
        im: Imaginary part.
    """

    re: int
    im: int = 0

    def __add__(self, other: GInt | int) -> GInt:
        other = _coerce(other)
        return GInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: GInt | int) -> GInt:
        other = _coerce(other)
        return GInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: GInt | int) -> GInt:
        return _coerce(other) - self

    def __neg__(self) -> GInt:
        return GInt(-self.re, -self.im)

    def __mul__(self, other: GInt | int) -> GInt:
        other = _coerce(other)
        return GInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __pow__(self, exp: int) -> GInt:
        if exp < 0:
            raise ValueError("negative powers of a Gaussian integer are not integral")
        result = ONE
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"

    def conj(self) -> GInt:
        """Return the complex conjugate."""
        return GInt(self.re, -self.im)

    def norm(self) -> int:
        """Return re² + im²."""
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        """Return True for ±1 and ±i."""
        return self.norm() == 1


ZERO = GInt(0, 0)
ONE = GInt(1, 0)
I = GInt(0, 1)
UNITS: tuple[GInt, ...] = (ONE, I, GInt(-1, 0), GInt(0, -1))


def _coerce(value: GInt | int) -> GInt:
    if isinstance(value, GInt):
        return value
    return GInt(value, 0)


def norm(z: GInt) -> int:
    """Return the norm re² + im² of z."""
    return z.norm()


def conj(z: GInt) -> GInt:
    """Return the complex conjugate of z."""
    return z.conj()


def primary_associate(z: GInt) -> GInt:
    """Return the associate u·z with re > 0 and -re < im < re.

    Args:
        z: A nonzero Gaussian integer with |re| != |im|.

    Returns:
        The unique associate whose argument lies strictly between -π/4 and π/4.

    Raises:
        GaussianError: ON_DIAGONAL if |re| == |im| (this includes z = 0).
    """
    if abs(z.re) == abs(z.im):
        raise GaussianError(
            code=MachinErrorCode.ON_DIAGONAL,
            message=f"{z} lies on a diagonal; no associate has |arg| < pi/4",
        )
    for unit in UNITS:
        candidate = unit * z
        if candidate.re > 0 and -candidate.re < candidate.im < candidate.re:
            return candidate
    raise AssertionError("unreachable: one associate is always primary")


def exact_divide(a: GInt, b: GInt) -> GInt | None:
    """Return q with a = q·b, or None when b does not divide a.

    Raises:
        GaussianError: DIVISION_BY_ZERO if b is zero.
    """
    n = b.norm()
    if n == 0:
        raise GaussianError(
            code=MachinErrorCode.DIVISION_BY_ZERO,
            message="division by the zero Gaussian integer",
        )
    t = a * b.conj()
    if t.re % n or t.im % n:
        return None
    return GInt(t.re // n, t.im // n)


def _nearest_quotient(a: GInt, b: GInt) -> GInt:
    n = b.norm()
    t = a * b.conj()
    return GInt((2 * t.re + n) // (2 * n), (2 * t.im + n) // (2 * n))


def normalize(z: GInt) -> GInt:
    """Return the associate of z with re > 0 and im >= 0 (zero maps to zero)."""
    if not z:
        return z
    for unit in UNITS:
        candidate = unit * z
        if candidate.re > 0 and candidate.im >= 0:
            return candidate
    raise AssertionError("unreachable: one associate lies in the first quadrant")


def ggcd(a: GInt, b: GInt) -> GInt:
    """Return the Gaussian gcd of a and b, normalized to the first quadrant."""
    while b:
        a, b = b, a - _nearest_quotient(a, b) * b
    return normalize(a)


def sqrt_minus_one_mod(p: int) -> int:
    """Return the smaller square root of -1 modulo the prime p ≡ 1 (mod 4)."""
    roots = sqrt_mod(p - 1, p, all_roots=True)
    if not roots:
        raise GaussianError(
            code=MachinErrorCode.NOT_SPLITTABLE,
            message=f"-1 is not a quadratic residue modulo {p}",
        )
    return min(roots)


def split_prime(p: int) -> GInt:
    """Return the canonical η = a + bi with a > b > 0 and a² + b² = p.

    Args:
        p: A prime congruent to 1 modulo 4.

    Raises:
        GaussianError: NOT_SPLITTABLE if p is not such a prime.
    """
    if p % 4 != 1 or not isprime(p):
        raise GaussianError(
            code=MachinErrorCode.NOT_SPLITTABLE,
            message=f"{p} is not a prime congruent to 1 mod 4",
        )
    g = ggcd(GInt(p, 0), GInt(sqrt_minus_one_mod(p), 1))
    for candidate in (g, g.conj(), I * g, I * g.conj()):
        for unit in UNITS:
            z = unit * candidate
            if z.re > z.im > 0:
                return z
    raise AssertionError(f"unreachable: no canonical split found for {p}")


def split_sum_two_squares(m: int | Mapping[int, int]) -> GInt:
    """Return the primary η with η·η̄ = m.

    For a prime m the result is the canonical split with re > im > 0. For
    composite m it is the primary associate of the product of the canonical
    splits of the prime factors.

    Args:
        m: An odd integer > 1, or its prime factorization as {prime: exponent}.

    Raises:
        GaussianError: NOT_SPLITTABLE if m is even, < 2, or has a prime factor
            congruent to 3 mod 4.
    """
    if isinstance(m, Mapping):
        factors = dict(m)
        for p in factors:
            if not isprime(p):
                raise GaussianError(
                    code=MachinErrorCode.NOT_SPLITTABLE,
                    message=f"factorization contains the non-prime {p}",
                )
        value = math.prod(p**e for p, e in factors.items())
    else:
        value = m
        factors = factorint(m) if m > 1 else {}

    if value < 2 or value % 2 == 0:
        raise GaussianError(
            code=MachinErrorCode.NOT_SPLITTABLE,
            message=f"{value} is not an odd integer greater than 1",
        )
    bad = sorted(p for p in factors if p % 4 == 3)
    if bad:
        raise GaussianError(
            code=MachinErrorCode.NOT_SPLITTABLE,
            message=f"{value} has prime factor(s) {bad} congruent to 3 mod 4",
        )

    eta = ONE
    for p in sorted(factors):
        eta = eta * split_prime(p) ** factors[p]
    return primary_associate(eta)


def height_of_quotient(x: int) -> float:
    """Return ½·log(x² + 1), the height of (x+i)/(x-i) in the bounds.

    This is the exact absolute logarithmic height for even x. For odd x the
    exact height is ½·log((x²+1)/2); see GRational.height.
    """
    if x <= 1:
        raise GaussianError(
            code=MachinErrorCode.DOMAIN_ERROR,
            message=f"height_of_quotient requires x > 1, got {x}",
        )
    return 0.5 * math.log(x * x + 1)


@dataclass(frozen=True, slots=True)
class GRational:
    """A quotient num/den of Gaussian integers in reduced form.

    The gcd of num and den is a unit and den is normalized to the first
    quadrant, so equal values compare equal.

    Attributes:
        num: Numerator.
        den: Denominator (nonzero).
    """

    num: GInt
    den: GInt

    @classmethod
    def of(cls, num: GInt | int, den: GInt | int = 1) -> GRational:
        """Build a reduced quotient.

        Raises:
            GaussianError: DIVISION_BY_ZERO if den is zero.
        """
        num, den = _coerce(num), _coerce(den)
        if not den:
            raise GaussianError(
                code=MachinErrorCode.DIVISION_BY_ZERO,
                message="Gaussian rational with zero denominator",
            )
        if not num:
            return cls(ZERO, ONE)
        g = ggcd(num, den)
        num = exact_divide(num, g)
        den = exact_divide(den, g)
        assert num is not None and den is not None
        for unit in UNITS:
            d = unit * den
            if d.re > 0 and d.im >= 0:
                return cls(unit * num, d)
        raise AssertionError("unreachable: denominator has a first-quadrant associate")

    @classmethod
    def quotient(cls, x: int) -> GRational:
        """Return (x+i)/(x-i)."""
        return cls.of(GInt(x, 1), GInt(x, -1))

    @classmethod
    def unit_ratio(cls, eta: GInt) -> GRational:
        """Return η/η̄."""
        return cls.of(eta, eta.conj())

    def __mul__(self, other: GRational) -> GRational:
        return GRational.of(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: GRational) -> GRational:
        return GRational.of(self.num * other.den, self.den * other.num)

    def __pow__(self, exp: int) -> GRational:
        if exp >= 0:
            return GRational.of(self.num**exp, self.den**exp)
        return GRational.of(self.den ** (-exp), self.num ** (-exp))

    def conj(self) -> GRational:
        return GRational.of(self.num.conj(), self.den.conj())

    def is_unit_modulus(self) -> bool:
        """Return True when |num/den| = 1."""
        return self.num.norm() == self.den.norm()

    def is_root_of_unity(self) -> bool:
        return self.den.is_unit() and self.num.is_unit()

    def is_positive_real(self) -> bool:
        """Return True when the value is a positive real number."""
        t = self.num * self.den.conj()
        return t.im == 0 and t.re > 0

    def height(self) -> float:
        """Return the absolute logarithmic height of a unit-modulus quotient.

        For reduced num/den with |num| = |den| the minimal polynomial is
        N(den)·t² - 2·Re(num·conj(den))·t + N(den), primitive, with both roots
        on the unit circle, so h = ½·log N(den).

        Raises:
            GaussianError: DOMAIN_ERROR if the quotient is not of modulus one.
        """
        if not self.is_unit_modulus():
            raise GaussianError(
                code=MachinErrorCode.DOMAIN_ERROR,
                message="height() is implemented for unit-modulus quotients only",
            )
        return 0.5 * math.log(self.den.norm())
