"""Machin-type arctangent relations.

This module represents relations Σ yᵢ·arctan(1/xᵢ) = r·π/4 exactly and provides
their verification over the Gaussian integers, the reduction of a single x over
a basis of moduli, the sign congruence of Størmer's criterion, synthesis of a
three-term relation from three exponent signatures, and Størmer's r = 0
identity generator.

Classes:
    - ArctanRelation: A formal sum of arctangent terms with its multiple of π/4
    - Verification: Outcome of verify()
    - ModulusExponent: One (modulus, exponent, sign) entry of a signature
    - ExponentSignature: x² + 1 = 2^v·Π mⱼ^eⱼ with Gaussian signs
    - DerivationStatus: Result kinds of derive_coefficients()
    - Derivation: Outcome of derive_coefficients()

Relation text format (one relation per line, single spaces):
    4*atan(1/5) - 1*atan(1/239) = 1*pi/4
Lines starting with '#' are comments.
"""

from __future__ import annotations

import itertools
import math
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import mpmath
import structlog
from sympy import divisors

from machinkit.errors import (
    GaussianError,
    MachinErrorCode,
    RelationError,
    RelationParseError,
)
from machinkit.gaussian import GInt, exact_divide, split_sum_two_squares

logger = structlog.get_logger()

_ONE_MINUS_I = GInt(1, -1)
_ONE_PLUS_I = GInt(1, 1)


# =============================================================================
# Relations
# =============================================================================


@dataclass(frozen=True)
class ArctanRelation:
    """A formal relation Σ yᵢ·arctan(1/xᵢ) = r·π/4.

    Attributes:
        terms: Pairs (x, y) with x > 1 distinct and y nonzero.
        r: The multiple of π/4 on the right-hand side (0 for identities).
    """

    terms: tuple[tuple[int, int], ...]
    r: int

    def __post_init__(self) -> None:
        if not self.terms:
            raise RelationError(
                code=MachinErrorCode.OUT_OF_RANGE,
                message="a relation needs at least one term",
            )
        seen: set[int] = set()
        for x, y in self.terms:
            if x <= 1:
                raise RelationError(
                    code=MachinErrorCode.OUT_OF_RANGE,
                    message=f"arctangent argument 1/{x} requires x > 1",
                )
            if y == 0:
                raise RelationError(
                    code=MachinErrorCode.OUT_OF_RANGE,
                    message=f"zero coefficient for atan(1/{x})",
                )
            if x in seen:
                raise RelationError(
                    code=MachinErrorCode.OUT_OF_RANGE,
                    message=f"duplicate arctangent argument 1/{x}",
                )
            seen.add(x)

    @classmethod
    def of(cls, terms: Iterable[tuple[int, int]], r: int) -> ArctanRelation:
        return cls(tuple((int(x), int(y)) for x, y in terms), int(r))

    @property
    def xs(self) -> tuple[int, ...]:
        return tuple(x for x, _ in self.terms)

    @property
    def ys(self) -> tuple[int, ...]:
        return tuple(y for _, y in self.terms)

    def is_machin_type(self) -> bool:
        """Return True when r is nonzero."""
        return self.r != 0

    def canonical(self) -> ArctanRelation:
        """Return the relation sorted by x with a positive first coefficient."""
        terms = sorted(self.terms)
        r = self.r
        if terms[0][1] < 0:
            terms = [(x, -y) for x, y in terms]
            r = -r
        return ArctanRelation(tuple(terms), r)

    def with_r(self, r: int) -> ArctanRelation:
        return ArctanRelation(self.terms, r)

    def gaussian_product(self) -> GInt:
        """Return A = Π (xⱼ+i)^max(yⱼ,0) · (xⱼ-i)^max(-yⱼ,0)."""
        product = GInt(1, 0)
        for x, y in self.terms:
            factor = GInt(x, 1) if y > 0 else GInt(x, -1)
            product = product * factor ** abs(y)
        return product

    def numeric_sum(self, dps: int = 30) -> mpmath.mpf:
        """Return Σ yᵢ·arctan(1/xᵢ) evaluated with mpmath."""
        scale = max(len(str(abs(y))) for y in self.ys)
        with mpmath.workdps(dps + scale):
            return mpmath.fsum(y * mpmath.acot(x) for x, y in self.terms)

    def __str__(self) -> str:
        return format_relation(self)


@dataclass(frozen=True)
class Verification:
    """Outcome of verify().

    Attributes:
        verified: Whether the relation holds exactly.
        r: The certified multiple of π/4 when verified.
        reason: Short explanation when not verified.
    """

    verified: bool
    r: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.verified


def _rotated(a: GInt, r: int) -> GInt:
    # A·(1-i)^r; for negative r use (1+i)^|r|, which differs by a positive factor
    if r >= 0:
        return a * _ONE_MINUS_I**r
    return a * _ONE_PLUS_I ** (-r)


def _is_positive_real(z: GInt) -> bool:
    return z.im == 0 and z.re > 0


def _winding_estimate(rel: ArctanRelation) -> mpmath.mpf:
    with mpmath.workdps(40):
        return 4 * rel.numeric_sum() / mpmath.pi


def verify(rel: ArctanRelation, infer: bool = False) -> Verification:
    """Verify a relation exactly.

    The Gaussian product A has argument Σ yᵢ·arctan(1/xᵢ) modulo 2π, so the
    relation holds modulo 2π iff A·(1-i)^r is a positive real. The winding
    number is pinned by a 40-digit evaluation of the sum, which must lie
    within 1/2 of r.

    Args:
        rel: The relation to check.
        infer: When True, ignore rel.r and return the r certified for this
            left-hand side.

    Returns:
        Verification with verified=True and the certified r, or verified=False
        with a reason.
    """
    estimate = _winding_estimate(rel)
    a = rel.gaussian_product()

    if infer:
        r = int(mpmath.nint(estimate))
        if _is_positive_real(_rotated(a, r)):
            return Verification(True, r)
        return Verification(False, None, "left-hand side is not a multiple of pi/4")

    if not _is_positive_real(_rotated(a, rel.r)):
        return Verification(False, None, "A*(1-i)^r is not a positive real")
    if abs(estimate - rel.r) >= mpmath.mpf(1) / 2:
        return Verification(
            False, None, f"winding mismatch: sum is {mpmath.nstr(estimate, 8)}*pi/4"
        )
    return Verification(True, rel.r)


# =============================================================================
# Exponent signatures
# =============================================================================


@dataclass(frozen=True)
class ModulusExponent:
    """One entry of an exponent signature.

    Attributes:
        modulus: Odd modulus m > 1 with m = η·η̄.
        exponent: Power of m dividing x² + 1.
        sign: +1 if η^e | x+i, -1 if η̄^e | x+i, 0 if neither (composite m only).
            Always +1 when the exponent is zero.
    """

    modulus: int
    exponent: int
    sign: int


@dataclass(frozen=True)
class ExponentSignature:
    """The factorization x² + 1 = 2^v·Π mⱼ^eⱼ with Gaussian signs.

    Attributes:
        x: The integer whose square plus one is factored.
        v: Power of two, always 0 or 1.
        exps: One ModulusExponent per basis modulus, in basis order.
    """

    x: int
    v: int
    exps: tuple[ModulusExponent, ...]

    @property
    def basis(self) -> tuple[int, ...]:
        return tuple(e.modulus for e in self.exps)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e.exponent for e in self.exps)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(e.sign for e in self.exps)

    def value(self) -> int:
        """Return 2^v·Π mⱼ^eⱼ."""
        return 2**self.v * math.prod(e.modulus**e.exponent for e in self.exps)


@lru_cache(maxsize=256)
def basis_splits(basis: tuple[int, ...]) -> tuple[GInt, ...]:
    """Validate a basis and return the primary η for each modulus.

    Raises:
        RelationError: BAD_BASIS if a modulus is even, < 3, has a prime factor
            ≡ 3 (mod 4), or two moduli share a factor.
    """
    for m in basis:
        if m < 3 or m % 2 == 0:
            raise RelationError(
                code=MachinErrorCode.BAD_BASIS,
                message=f"basis modulus {m} must be odd and greater than 1",
            )
    for m, n in itertools.combinations(basis, 2):
        if math.gcd(m, n) != 1:
            raise RelationError(
                code=MachinErrorCode.BAD_BASIS,
                message=f"basis moduli {m} and {n} are not coprime",
            )
    splits = []
    for m in basis:
        try:
            splits.append(split_sum_two_squares(m))
        except GaussianError as e:
            raise RelationError(
                code=MachinErrorCode.BAD_BASIS,
                message=f"basis modulus {m} is not a norm: {e.message}",
                cause=e,
            ) from e
    return tuple(splits)


def reduce(x: int, basis: Sequence[int]) -> ExponentSignature | None:
    """Reduce x over a basis of moduli.

    Args:
        x: Integer > 0.
        basis: Pairwise coprime odd moduli, each a norm of a Gaussian integer.

    Returns:
        The signature of x, or None when x² + 1 has a cofactor outside
        {2} ∪ basis.

    Raises:
        RelationError: BAD_BASIS for an invalid basis.
    """
    basis = tuple(basis)
    basis_splits(basis)
    return signature_of(x, basis)


@lru_cache(maxsize=1024)
def _split(m: int) -> GInt:
    return split_sum_two_squares(m)


def signature_of(x: int, basis: Sequence[int]) -> ExponentSignature | None:
    """Factor x² + 1 over {2} ∪ basis without validating the basis.

    Moduli that never divide x² + 1 (for instance 3) are accepted and always
    get exponent zero. A modulus dividing x² + 1 has only prime factors
    ≡ 1 (mod 4), so its split always exists.
    """
    n = x * x + 1
    v = 0
    if n % 2 == 0:
        n //= 2
        v = 1
    exponents = []
    for m in basis:
        e = 0
        while m > 1 and n % m == 0:
            n //= m
            e += 1
        exponents.append(e)
    if n != 1:
        return None

    z = GInt(x, 1)
    entries = []
    for m, e in zip(basis, exponents, strict=True):
        sign = 1
        if e:
            eta = _split(m)
            if exact_divide(z, eta**e) is not None:
                sign = 1
            elif exact_divide(z, eta.conj() ** e) is not None:
                sign = -1
            else:
                sign = 0
        entries.append(ModulusExponent(m, e, sign))
    return ExponentSignature(x, v, tuple(entries))


def sign_condition(xa: int, xb: int, m: int) -> bool:
    """Return True iff xa ≡ ±xb (mod m).

    Raises:
        RelationError: NOT_APPLICABLE unless m divides both xa²+1 and xb²+1.
    """
    if (xa * xa + 1) % m or (xb * xb + 1) % m:
        raise RelationError(
            code=MachinErrorCode.NOT_APPLICABLE,
            message=f"{m} does not divide both {xa}^2+1 and {xb}^2+1",
        )
    return (xa - xb) % m == 0 or (xa + xb) % m == 0


# =============================================================================
# Three-term synthesis
# =============================================================================


class DerivationStatus(str, Enum):
    """Result kinds of derive_coefficients()."""

    VERIFIED = "verified"
    ZERO_R = "zero_r"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Derivation:
    """Outcome of derive_coefficients().

    Attributes:
        status: What kind of result was obtained.
        relation: The canonical relation (VERIFIED and ZERO_R only).
        reason: Human-readable explanation.
        used_recorded_signs: Whether the recorded η/η̄ signs gave the result.
    """

    status: DerivationStatus
    relation: ArctanRelation | None = None
    reason: str = ""
    used_recorded_signs: bool = field(default=True, compare=False)


DEGENERATE_SET = frozenset({2, 3, 7})


def _cross(a: Sequence[int], b: Sequence[int]) -> tuple[int, int, int]:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _primitive_relation(
    xs: Sequence[int], ys: Sequence[int]
) -> ArctanRelation | None:
    g = math.gcd(*ys)
    for d in sorted(divisors(g), reverse=True):
        candidate = ArctanRelation.of(
            ((x, y // d) for x, y in zip(xs, ys, strict=True) if y), 0
        )
        outcome = verify(candidate, infer=True)
        if outcome.verified:
            return candidate.with_r(outcome.r).canonical()
    return None


def derive_coefficients(
    sig1: ExponentSignature,
    sig2: ExponentSignature,
    sig3: ExponentSignature,
) -> Derivation:
    """Synthesize the three-term relation carried by three signatures.

    With aᵢ = ±kᵢ and bᵢ = ±lᵢ (signs from the recorded η/η̄ divisibility),
    2·arctan(1/xᵢ) ≡ aᵢθ₁ + bᵢθ₂ (mod π/2) where θⱼ = arg(ηⱼ/η̄ⱼ), so the
    cross product y = a × b annihilates θ₁ and θ₂. The result is reduced to the
    primitive multiple that still has an integral r, which is then certified by
    verify().

    Raises:
        RelationError: PRECONDITION if the signatures do not share one
            two-modulus basis or repeat an x; INCONSISTENT if no sign
            resolution verifies.
    """
    sigs = (sig1, sig2, sig3)
    basis = sig1.basis
    if len(basis) != 2 or any(s.basis != basis for s in sigs):
        raise RelationError(
            code=MachinErrorCode.PRECONDITION,
            message="signatures must share one two-modulus basis",
        )
    xs = tuple(s.x for s in sigs)
    if len(set(xs)) != 3 or min(xs) <= 1:
        raise RelationError(
            code=MachinErrorCode.PRECONDITION,
            message=f"need three distinct x > 1, got {xs}",
        )

    if set(xs) == DEGENERATE_SET:
        return Derivation(DerivationStatus.DEGENERATE, reason="{2, 3, 7}")
    for position in (0, 1):
        zeros = sum(1 for s in sigs if s.exponents[position] == 0)
        if zeros >= 2:
            return Derivation(
                DerivationStatus.DEGENERATE,
                reason=f"two signatures have zero exponent of {basis[position]}",
            )

    a = [(s.signs[0] or 1) * s.exponents[0] for s in sigs]
    b = [(s.signs[1] or 1) * s.exponents[1] for s in sigs]
    if _cross(a, b) == (0, 0, 0):
        return Derivation(
            DerivationStatus.DEGENERATE, reason="exponent vectors are proportional"
        )

    tried: set[tuple[int, int, int]] = set()
    for pattern_index, flips in enumerate(itertools.product((1, -1), repeat=6)):
        flipped_a = [f * ai for f, ai in zip(flips[:3], a, strict=True)]
        flipped_b = [f * bi for f, bi in zip(flips[3:], b, strict=True)]
        ys = _cross(flipped_a, flipped_b)
        negated = (-ys[0], -ys[1], -ys[2])
        if ys == (0, 0, 0) or ys in tried or negated in tried:
            continue
        tried.add(ys)
        relation = _primitive_relation(xs, ys)
        if relation is None:
            continue
        recorded = pattern_index == 0
        if relation.r == 0:
            return Derivation(
                DerivationStatus.ZERO_R,
                relation,
                reason="only relation has r = 0",
                used_recorded_signs=recorded,
            )
        logger.debug("relation_derived", relation=str(relation), recorded=recorded)
        return Derivation(
            DerivationStatus.VERIFIED, relation, used_recorded_signs=recorded
        )

    raise RelationError(
        code=MachinErrorCode.INCONSISTENT,
        message=f"no sign resolution verifies for x = {xs}",
    )


def stormer_identity(a: int, x: int, y: int, z: int) -> ArctanRelation:
    """Build Størmer's identity from x² + 1 = a·y.

    atan(1/(az-x)) - atan(1/(az+a-x)) - atan(1/(az(z+1)-(2z+1)x+y)) = 0

    Raises:
        RelationError: PRECONDITION if x² + 1 != a·y; OUT_OF_RANGE if a
            generated argument is <= 1 or two of them coincide.
    """
    if x * x + 1 != a * y:
        raise RelationError(
            code=MachinErrorCode.PRECONDITION,
            message=f"{x}^2+1 != {a}*{y}",
        )
    args = (
        a * z - x,
        a * z + a - x,
        a * z * (z + 1) - (2 * z + 1) * x + y,
    )
    if min(args) <= 1:
        raise RelationError(
            code=MachinErrorCode.OUT_OF_RANGE,
            message=f"generated arguments {args} must all exceed 1",
        )
    if len(set(args)) != 3:
        raise RelationError(
            code=MachinErrorCode.OUT_OF_RANGE,
            message=f"generated arguments {args} coincide",
        )
    return ArctanRelation(((args[0], 1), (args[1], -1), (args[2], -1)), 0)


# =============================================================================
# Text format
# =============================================================================

_INT = r"(?:0|[1-9][0-9]*)"
_FIRST_TERM = re.compile(rf"^(-?{_INT})\*atan\(1/({_INT})\)")
_NEXT_TERM = re.compile(rf" ([+-]) ({_INT})\*atan\(1/({_INT})\)")
_RHS = re.compile(rf" = (-?{_INT})\*pi/4$")


def format_relation(rel: ArctanRelation) -> str:
    """Render a relation in the one-line text format."""
    (x0, y0), *rest = rel.terms
    parts = [f"{y0}*atan(1/{x0})"]
    for x, y in rest:
        parts.append(f"{'-' if y < 0 else '+'} {abs(y)}*atan(1/{x})")
    return f"{' '.join(parts)} = {rel.r}*pi/4"


def parse_relation(text: str, line_number: int | None = None) -> ArctanRelation:
    """Parse one relation line.

    Raises:
        RelationParseError: If the text does not follow the grammar or
            describes an ill-formed relation.
    """
    first = _FIRST_TERM.match(text)
    if first is None:
        raise RelationParseError(f"expected '<y>*atan(1/<x>)' in {text!r}", line_number)
    terms = [(int(first.group(2)), int(first.group(1)))]
    pos = first.end()
    while (match := _NEXT_TERM.match(text, pos)) is not None:
        y = int(match.group(2))
        terms.append((int(match.group(3)), -y if match.group(1) == "-" else y))
        pos = match.end()
    rhs = _RHS.fullmatch(text, pos)
    if rhs is None:
        raise RelationParseError(f"expected ' = <r>*pi/4' in {text!r}", line_number)
    try:
        return ArctanRelation.of(terms, int(rhs.group(1)))
    except RelationError as e:
        raise RelationParseError(e.message, line_number) from e


def parse_relations(text: str) -> list[tuple[int, ArctanRelation]]:
    """Parse a multi-line corpus, skipping comments and blank lines.

    Returns:
        (line_number, relation) pairs in file order.
    """
    relations = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        relations.append((number, parse_relation(line, number)))
    return relations
