"""Solvers for x² + 1 = 2^v·m1^k·m2^l and three-term formula discovery.

Classes:
    - ParityTag: zero / odd / even-nonzero
    - SolutionRecord: One solution with its signature and parity class
    - ParityCensus: Solutions counted per parity class
    - RejectionReason: Why a candidate triple produced no formula
    - Rejection: One rejected triple
    - SearchReport: Result of find_three_term()

Functions:
    - enumerate_solutions: All x <= x_max with x² + 1 smooth over (2, m1, m2)
    - parity_census: Count solutions per parity class
    - pure_power_scan: Solutions of x² + 1 = 2^e·yⁿ with n >= 3
    - find_three_term: Synthesize three-term Machin-type formulae over (m1, m2)
    - enumerate_general: x² + 1 smooth over 2 and a list of primes
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Literal

import structlog
from sympy import isprime, primefactors

from machinkit.errors import MachinErrorCode, RelationError, SolverError
from machinkit.gaussian import sqrt_minus_one_mod
from machinkit.relations import (
    ArctanRelation,
    DerivationStatus,
    ExponentSignature,
    derive_coefficients,
    format_relation,
    sign_condition,
    signature_of,
)

logger = structlog.get_logger()

SearchMethod = Literal["trial", "sieve"]


# =============================================================================
# Records
# =============================================================================


class ParityTag(str, Enum):
    """Parity of one exponent, with zero and nonzero-even distinguished."""

    ZERO = "zero"
    ODD = "odd"
    EVEN = "even-nonzero"

    @classmethod
    def of(cls, e: int) -> ParityTag:
        if e == 0:
            return cls.ZERO
        return cls.ODD if e % 2 else cls.EVEN


@dataclass(frozen=True)
class SolutionRecord:
    """A solution x of x² + 1 = 2^v·m1^k·m2^l.

    Attributes:
        x: The solution.
        sig: Its exponent signature.
        parity_class: ParityTag of each of (v, k, l).
    """

    x: int
    sig: ExponentSignature
    parity_class: tuple[ParityTag, ...] = field(init=False)

    def __post_init__(self) -> None:
        tags = (ParityTag.of(self.sig.v),) + tuple(
            ParityTag.of(e) for e in self.sig.exponents
        )
        object.__setattr__(self, "parity_class", tags)

    @property
    def parity_label(self) -> str:
        return ",".join(tag.value for tag in self.parity_class)

    def tsv_row(self) -> str:
        exps = "\t".join(str(e) for e in self.sig.exponents)
        return f"{self.x}\t{self.sig.v}\t{exps}\t{self.parity_label}"


@dataclass(frozen=True)
class ParityCensus:
    """Solutions counted per parity class.

    Attributes:
        counts: Number of solutions per parity class.
        violation: True if a class holds two or more solutions or a class
            with every exponent zero or even is populated.
    """

    counts: dict[tuple[ParityTag, ...], int]
    violation: bool

    @property
    def total(self) -> int:
        return sum(self.counts.values())


class RejectionReason(str, Enum):
    ZERO_R = "ZeroR"
    DEGENERATE = "Degenerate"
    SIGN_CONDITION_FAILED = "SignConditionFailed"
    INCONSISTENT = "Inconsistent"


@dataclass(frozen=True)
class Rejection:
    """A candidate triple that produced no Machin-type formula.

    Attributes:
        xs: The triple, ascending.
        reason: Why it was rejected.
        detail: Human-readable detail.
        relation: The r = 0 identity for ZeroR rejections.
    """

    xs: tuple[int, int, int]
    reason: RejectionReason
    detail: str = ""
    relation: ArctanRelation | None = None


@dataclass
class SearchReport:
    """Result of find_three_term().

    Attributes:
        basis: The moduli (m1, m2).
        x_max: Upper end of the scanned range.
        solutions: Solutions, ascending by x.
        relations: Verified formulae with r != 0, canonical and deduplicated.
        rejected: Triples that yielded no formula.
        sign_reading_disagreements: Triples where requiring the sign
            congruence for every pair and for some pair give different answers.
    """

    basis: tuple[int, int]
    x_max: int
    solutions: list[SolutionRecord] = field(default_factory=list)
    relations: list[ArctanRelation] = field(default_factory=list)
    rejected: list[Rejection] = field(default_factory=list)
    sign_reading_disagreements: list[tuple[int, int, int]] = field(
        default_factory=list
    )

    def relations_text(self) -> str:
        return "".join(f"{format_relation(rel)}\n" for rel in self.relations)

    def to_text(self) -> str:
        """Render the line-oriented report."""
        m1, m2 = self.basis
        lines = [
            f"basis {m1} {m2}",
            f"x_max {self.x_max}",
            f"solutions {len(self.solutions)}",
        ]
        for record in self.solutions:
            v, (k, l) = record.sig.v, record.sig.exponents
            lines.append(f"  x={record.x} v={v} k={k} l={l} [{record.parity_label}]")
        lines.append(f"relations {len(self.relations)}")
        lines.extend(f"  {format_relation(rel)}" for rel in self.relations)
        lines.append(f"rejected {len(self.rejected)}")
        for rejection in self.rejected:
            xs = ",".join(str(x) for x in rejection.xs)
            detail = f" ({rejection.detail})" if rejection.detail else ""
            lines.append(f"  {xs} {rejection.reason.value}{detail}")
        if self.sign_reading_disagreements:
            count = len(self.sign_reading_disagreements)
            lines.append(f"sign-reading disagreements {count}")
            for xs in self.sign_reading_disagreements:
                lines.append("  " + ",".join(str(x) for x in xs))
        return "\n".join(lines) + "\n"


def solutions_tsv(solutions: Sequence[SolutionRecord]) -> str:
    """Render solutions as TSV with columns x, v, k, l, parity_class."""
    lines = ["x\tv\tk\tl\tparity_class"]
    lines.extend(record.tsv_row() for record in solutions)
    return "\n".join(lines) + "\n"


# =============================================================================
# Enumeration
# =============================================================================


def _check_moduli(m1: int, m2: int) -> None:
    if not (1 < m1 < m2) or m1 % 2 == 0 or m2 % 2 == 0:
        raise SolverError(
            code=MachinErrorCode.PRECONDITION,
            message=f"need odd moduli 1 < m1 < m2, got ({m1}, {m2})",
        )


Found = list[tuple[int, ExponentSignature]]


def _trial_block(basis: tuple[int, ...], lo: int, hi: int) -> Found:
    found = []
    for x in range(lo, hi):
        sig = signature_of(x, basis)
        if sig is not None:
            found.append((x, sig))
    return found


def _sieve_block(basis: tuple[int, ...], lo: int, hi: int) -> Found:
    rest = [x * x + 1 for x in range(lo, hi)]
    for i in range((lo + 1) % 2, hi - lo, 2):
        rest[i] //= 2
    primes = sorted({p for m in basis for p in primefactors(m) if p % 4 == 1})
    for p in primes:
        s = sqrt_minus_one_mod(p)
        for root in {s, p - s}:
            start = (root - lo) % p
            for i in range(start, hi - lo, p):
                while rest[i] % p == 0:
                    rest[i] //= p
    found = []
    for i, value in enumerate(rest):
        if value == 1:
            sig = signature_of(lo + i, basis)
            if sig is not None:
                found.append((lo + i, sig))
    return found


def _scan(
    basis: tuple[int, ...],
    x_max: int,
    method: SearchMethod,
    workers: int,
    block_size: int,
) -> Found:
    scan_block = _sieve_block if method == "sieve" else _trial_block
    blocks = [
        (lo, min(lo + block_size, x_max + 1)) for lo in range(1, x_max + 1, block_size)
    ]
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    scan_block,
                    itertools.repeat(basis),
                    (lo for lo, _ in blocks),
                    (hi for _, hi in blocks),
                )
            )
    else:
        parts = [scan_block(basis, lo, hi) for lo, hi in blocks]
    return sorted(itertools.chain.from_iterable(parts), key=lambda item: item[0])


def enumerate_solutions(
    m1: int,
    m2: int,
    x_max: int,
    method: SearchMethod = "trial",
    workers: int = 1,
    block_size: int = 100_000,
) -> list[SolutionRecord]:
    """Return every x in [1, x_max] with x² + 1 = 2^v·m1^k·m2^l.

    Args:
        m1: Smaller odd modulus.
        m2: Larger odd modulus.
        x_max: Upper end of the range (inclusive).
        method: "trial" divides each x² + 1; "sieve" divides out the prime
            factors of the moduli blockwise and confirms by trial division.
        workers: Process count for block-parallel scanning.
        block_size: Size of each scanned block.

    Raises:
        SolverError: PRECONDITION for invalid moduli.
    """
    _check_moduli(m1, m2)
    if x_max < 1:
        return []
    found = _scan((m1, m2), x_max, method, workers, block_size)
    records = [SolutionRecord(x, sig) for x, sig in found]
    logger.info(
        "solutions_enumerated",
        basis=(m1, m2),
        x_max=x_max,
        method=method,
        count=len(records),
    )
    return records


def enumerate_general(
    primes: Sequence[int], x_max: int
) -> list[tuple[int, tuple[int, ...]]]:
    """Return every x <= x_max with x² + 1 = 2^v·Π pᵢ^eᵢ.

    Returns:
        (x, (v, e1, ..., en)) pairs ascending by x.

    Raises:
        SolverError: PRECONDITION if primes repeat or are not primes ≡ 1 (mod 4).
    """
    primes = tuple(primes)
    if len(set(primes)) != len(primes):
        raise SolverError(
            code=MachinErrorCode.PRECONDITION,
            message=f"primes must be distinct, got {primes}",
        )
    for p in primes:
        if p % 4 != 1 or not isprime(p):
            raise SolverError(
                code=MachinErrorCode.PRECONDITION,
                message=f"{p} is not a prime congruent to 1 mod 4",
            )
    results = []
    for x in range(1, x_max + 1):
        sig = signature_of(x, primes)
        if sig is not None:
            results.append((x, (sig.v, *sig.exponents)))
    return results


# =============================================================================
# Census and pure powers
# =============================================================================


def parity_census(solutions: Sequence[SolutionRecord]) -> ParityCensus:
    """Count solutions per parity class and flag Størmer-count violations."""
    counts = Counter(record.parity_class for record in solutions)
    all_even = any(
        all(tag is not ParityTag.ODD for tag in parity) for parity in counts
    )
    violation = all_even or any(n >= 2 for n in counts.values())
    if violation:
        logger.warning("parity_census_violation", classes=len(counts))
    return ParityCensus(dict(counts), violation)


def pure_power_scan(x_max: int, n_max: int) -> list[tuple[int, int, int, int]]:
    """Return all (x, e, y, n) with x <= x_max, 3 <= n <= n_max, y > 1 and
    x² + 1 = 2^e·yⁿ, e in {0, 1}.

    Raises:
        SolverError: PRECONDITION if n_max < 3.
    """
    if n_max < 3:
        raise SolverError(
            code=MachinErrorCode.PRECONDITION,
            message=f"n_max must be at least 3, got {n_max}",
        )
    limit = x_max * x_max + 1
    found = []
    for e in (0, 1):
        for n in range(3, n_max + 1):
            y = 2
            while (value := 2**e * y**n) <= limit:
                x = math.isqrt(value - 1)
                if x * x == value - 1 and 1 <= x <= x_max:
                    found.append((x, e, y, n))
                y += 1
    return sorted(found)


# =============================================================================
# Three-term search
# =============================================================================


def _sign_readings(sigs: Sequence[ExponentSignature]) -> tuple[bool, bool]:
    """Return (every sharing pair passes, some sharing pair passes per modulus)."""
    every, some = True, True
    for position, m in enumerate(sigs[0].basis):
        sharing = [s.x for s in sigs if s.exponents[position] > 0]
        if len(sharing) < 2:
            continue
        pairs = itertools.combinations(sharing, 2)
        passes = [sign_condition(a, b, m) for a, b in pairs]
        every = every and all(passes)
        some = some and any(passes)
    return every, some


def find_three_term(
    m1: int,
    m2: int,
    x_max: int,
    method: SearchMethod = "trial",
    workers: int = 1,
    block_size: int = 100_000,
) -> SearchReport:
    """Discover three-term Machin-type formulae over the basis (m1, m2).

    Every 3-subset of solutions with x > 1 passing the pairwise sign
    congruence is handed to derive_coefficients.

    Raises:
        SolverError: PRECONDITION for invalid moduli.
    """
    solutions = enumerate_solutions(m1, m2, x_max, method, workers, block_size)
    report = SearchReport((m1, m2), x_max, solutions)
    candidates = [record.sig for record in solutions if record.x > 1]
    seen: set[ArctanRelation] = set()

    for triple in itertools.combinations(candidates, 3):
        xs = (triple[0].x, triple[1].x, triple[2].x)
        every, some = _sign_readings(triple)
        if every != some:
            report.sign_reading_disagreements.append(xs)
        if not every:
            report.rejected.append(
                Rejection(xs, RejectionReason.SIGN_CONDITION_FAILED)
            )
            continue
        try:
            derivation = derive_coefficients(*triple)
        except RelationError as e:
            report.rejected.append(
                Rejection(xs, RejectionReason.INCONSISTENT, e.message)
            )
            continue

        if derivation.status is DerivationStatus.DEGENERATE:
            report.rejected.append(
                Rejection(xs, RejectionReason.DEGENERATE, derivation.reason)
            )
        elif derivation.status is DerivationStatus.ZERO_R:
            report.rejected.append(
                Rejection(xs, RejectionReason.ZERO_R, relation=derivation.relation)
            )
        elif derivation.relation not in seen:
            seen.add(derivation.relation)
            report.relations.append(derivation.relation)

    report.relations.sort(key=lambda rel: (rel.xs, rel.ys))
    logger.info(
        "three_term_search_finished",
        basis=(m1, m2),
        x_max=x_max,
        relations=len(report.relations),
        rejected=len(report.rejected),
    )
    return report
