"""High-precision evaluation of arctan(1/x) and π from verified relations.

Values are fixed-point decimals: an integer mantissa scaled by 10^-scale with
a guaranteed error bound in units of the last place.

Classes:
    - FixedDecimal: Fixed-point decimal with an error bound

Functions:
    - arctan_recip: arctan(1/x) to a given number of decimals
    - pi_from_relation: π from a verified Machin-type relation
    - numeric_check: Floating confirmation of a relation
    - agreeing_digits: Number of decimals two values are known to share
    - format_blocks: Render digits in blocks of ten, five blocks per line
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import structlog

from machinkit.errors import MachinErrorCode, PrecisionError
from machinkit.relations import ArctanRelation, verify

logger = structlog.get_logger()

DEFAULT_GUARD_DIGITS = 10
DEFAULT_BINARY_SPLIT_THRESHOLD = 200


@dataclass(frozen=True)
class FixedDecimal:
    """mantissa·10^-scale, within error_ulps·10^-scale of the true value.

    Attributes:
        mantissa: Scaled integer value.
        scale: Number of decimals after the point.
        error_ulps: Bound on |stored - true| in units of 10^-scale.
    """

    mantissa: int
    scale: int
    error_ulps: int = 0

    def __add__(self, other: FixedDecimal) -> FixedDecimal:
        self._check_scale(other)
        return FixedDecimal(
            self.mantissa + other.mantissa,
            self.scale,
            self.error_ulps + other.error_ulps,
        )

    def __sub__(self, other: FixedDecimal) -> FixedDecimal:
        self._check_scale(other)
        return FixedDecimal(
            self.mantissa - other.mantissa,
            self.scale,
            self.error_ulps + other.error_ulps,
        )

    def scaled(self, k: int) -> FixedDecimal:
        """Multiply by the integer k."""
        return FixedDecimal(self.mantissa * k, self.scale, self.error_ulps * abs(k))

    def divided(self, k: int) -> FixedDecimal:
        """Divide by the nonzero integer k, rounding to nearest."""
        if k < 0:
            return FixedDecimal(-self.mantissa, self.scale, self.error_ulps).divided(-k)
        return FixedDecimal(
            _round_div(self.mantissa, k),
            self.scale,
            -(-self.error_ulps // k) + 1,
        )

    def rounded(self, scale: int) -> FixedDecimal:
        """Round to fewer decimals; the error bound is carried over."""
        drop = self.scale - scale
        if drop < 0:
            raise ValueError(f"cannot round scale {self.scale} up to {scale}")
        if drop == 0:
            return self
        unit = 10**drop
        return FixedDecimal(
            _round_div(self.mantissa, unit),
            scale,
            1 + -(-self.error_ulps // unit),
        )

    def digits(self) -> str:
        """Return the decimal expansion as text, e.g. '3.14159'."""
        sign = "-" if self.mantissa < 0 else ""
        text = str(abs(self.mantissa)).rjust(self.scale + 1, "0")
        if self.scale == 0:
            return sign + text
        return f"{sign}{text[: -self.scale]}.{text[-self.scale :]}"

    def __str__(self) -> str:
        return self.digits()

    def _check_scale(self, other: FixedDecimal) -> None:
        if self.scale != other.scale:
            raise ValueError(f"scale mismatch: {self.scale} vs {other.scale}")


def _round_div(n: int, d: int) -> int:
    return (2 * n + d) // (2 * d)


# =============================================================================
# arctan(1/x)
# =============================================================================


def _split(a: int, b: int, x2: int, x: int) -> tuple[int, int, int, int]:
    # (P, Q, B, T) over terms [a, b) of Σ (-1)^k / ((2k+1)·x^(2k+1))
    if b - a == 1:
        if a == 0:
            return 1, x, 1, 1
        return -1, x2, 2 * a + 1, -1
    mid = (a + b) // 2
    p1, q1, b1, t1 = _split(a, mid, x2, x)
    p2, q2, b2, t2 = _split(mid, b, x2, x)
    return p1 * p2, q1 * q2, b1 * b2, b2 * q2 * t1 + b1 * p1 * t2


def _term_count(x: int, digits: int) -> int:
    return math.ceil((digits + 1) * math.log(10) / (2 * math.log(x))) + 1


def _arctan_binary_split(x: int, digits: int) -> FixedDecimal:
    n = _term_count(x, digits)
    _, q, b, t = _split(0, n, x * x, x)
    return FixedDecimal(_round_div(t * 10**digits, b * q), digits, 1)


def _arctan_series(x: int, digits: int) -> FixedDecimal:
    n = _term_count(x, digits)
    guard = DEFAULT_GUARD_DIGITS + len(str(n))
    x2 = x * x
    power = 10 ** (digits + guard) // x
    total = 0
    for k in range(n):
        term = power // (2 * k + 1)
        total += -term if k % 2 else term
        power //= x2
    return FixedDecimal(_round_div(total, 10**guard), digits, 2)


def arctan_recip(
    x: int,
    digits: int,
    binary_split_threshold: int = DEFAULT_BINARY_SPLIT_THRESHOLD,
) -> FixedDecimal:
    """Return arctan(1/x) to `digits` decimals.

    The series is truncated once the alternating remainder drops below half an
    ulp. Above binary_split_threshold digits the partial sum is formed exactly
    by binary splitting and rounded once.

    Raises:
        PrecisionError: PRECONDITION if x < 2 or digits < 1.
    """
    if x < 2 or digits < 1:
        raise PrecisionError(
            code=MachinErrorCode.PRECONDITION,
            message=f"arctan_recip needs x >= 2 and digits >= 1, got ({x}, {digits})",
        )
    if digits > binary_split_threshold:
        return _arctan_binary_split(x, digits)
    return _arctan_series(x, digits)


# =============================================================================
# π and numeric checks
# =============================================================================


def _weighted_sum(
    rel: ArctanRelation, scale: int, binary_split_threshold: int
) -> FixedDecimal:
    total = FixedDecimal(0, scale, 0)
    for x, y in rel.terms:
        total = total + arctan_recip(x, scale, binary_split_threshold).scaled(y)
    return total


def pi_from_relation(
    rel: ArctanRelation,
    digits: int,
    guard_digits: int = DEFAULT_GUARD_DIGITS,
    binary_split_threshold: int = DEFAULT_BINARY_SPLIT_THRESHOLD,
) -> FixedDecimal:
    """Return π = (4/r)·Σ yᵢ·arctan(1/xᵢ) to `digits` decimals.

    Raises:
        PrecisionError: RELATION_NOT_VERIFIED if r = 0 or the relation does
            not verify exactly.
    """
    if rel.r == 0:
        raise PrecisionError(
            code=MachinErrorCode.RELATION_NOT_VERIFIED,
            message="a relation with r = 0 does not determine pi",
        )
    outcome = verify(rel)
    if not outcome.verified:
        raise PrecisionError(
            code=MachinErrorCode.RELATION_NOT_VERIFIED,
            message=f"relation does not verify: {outcome.reason}",
        )
    weight = 4 * sum(abs(y) for y in rel.ys)
    scale = digits + guard_digits + len(str(weight))
    value = _weighted_sum(rel, scale, binary_split_threshold).scaled(4).divided(rel.r)
    result = value.rounded(digits)
    logger.debug(
        "pi_evaluated",
        relation=str(rel),
        digits=digits,
        error_ulps=result.error_ulps,
    )
    return result


def numeric_check(
    rel: ArctanRelation,
    digits: int,
    reference: ArctanRelation | None = None,
    fallback: ArctanRelation | None = None,
) -> bool:
    """Return True iff |Σ yᵢ·arctan(1/xᵢ) - r·π/4| < 10^(5-digits).

    π comes from `reference` (Machin's formula by default), or from
    `fallback` (Gauss's formula by default) when rel is the reference itself.

    Raises:
        PrecisionError: PRECONDITION if digits < 20.
    """
    from machinkit.corpus import GAUSS, MACHIN

    if digits < 20:
        raise PrecisionError(
            code=MachinErrorCode.PRECONDITION,
            message=f"numeric_check needs at least 20 digits, got {digits}",
        )
    reference = reference or MACHIN
    if rel.canonical() == reference.canonical():
        reference = fallback or GAUSS

    weight = sum(abs(y) for y in rel.ys) + abs(rel.r)
    guard = DEFAULT_GUARD_DIGITS + len(str(weight))
    scale = digits + guard
    lhs = _weighted_sum(rel, scale, DEFAULT_BINARY_SPLIT_THRESHOLD)
    pi = pi_from_relation(reference, scale)
    rhs = pi.scaled(rel.r).divided(4)
    return abs((lhs - rhs).mantissa) < 10 ** (guard + 5)


def agreeing_digits(a: FixedDecimal, b: FixedDecimal) -> int:
    """Return the largest k <= scale with |a - b| < 10^-k."""
    scale = min(a.scale, b.scale)
    diff = abs(a.rounded(scale).mantissa - b.rounded(scale).mantissa)
    if diff == 0:
        return scale
    return scale - len(str(diff))


def format_blocks(value: FixedDecimal) -> str:
    """Render digits in blocks of 10, 5 blocks per line, then the error bound."""
    text = value.digits()
    whole, _, fraction = text.partition(".")
    blocks = [fraction[i : i + 10] for i in range(0, len(fraction), 10)]
    lines = [f"{whole}."]
    for i in range(0, len(blocks), 5):
        lines.append(" ".join(blocks[i : i + 5]))
    lines.append(f"error <= {value.error_ulps} * 10^-{value.scale}")
    return "\n".join(lines) + "\n"
