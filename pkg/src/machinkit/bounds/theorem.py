"""Case I and Case II pipelines bounding every three-term Machin-type solution.

Both pipelines feed the exponent bound back into itself. Values of m2 are
carried as log m2 because Case II reaches m2 of size exp(10^9).

Classes:
    - TheoremState: Caps produced by one pipeline run

Functions:
    - stormer_m2_cap: (4(2 + 10^-8)·KL/π)²
    - case2_r_bound: 3·KL/√m1
    - case2_h1: H1 of the one-logarithm bound in Case II
    - closed_form_log_m2_cap: 498756·log m1·(log log m1)²
    - closed_form_holds: log m2 below that cap
    - theorem_case1: Fixed point of m2 < 6.485·(KL)²
    - theorem_case2: m1 cap from 2KL/√(m1 - 1) < π(1 - 10^-8)/4
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import mpmath
import structlog
from mpmath import mpf

from machinkit.bounds.exponent import ExponentBound, ExponentSymbol, maximum_over_rows
from machinkit.bounds.functions import DEFAULT_DPS, ONE_LOG_FACTOR, Real, precision
from machinkit.bounds.tables import (
    BoundMode,
    BoundTableRow,
    C1Policy,
    case_a_rows,
    load_rows,
)
from machinkit.errors import BoundsError, MachinErrorCode

logger = structlog.get_logger()

DEFAULT_TOLERANCE = mpf("1e-6")
DEFAULT_MAX_ITERATIONS = 500
STORMER_SLACK = "1e-8"
H1_LOG_FACTOR = "1.2845"
H1_THRESHOLD = mpf("1e7")
CLOSED_FORM_FACTOR = 498756
# log m2 beyond this means the iteration ran away
RUNAWAY_LOG = mpf("1e15")


@dataclass(frozen=True)
class TheoremState:
    """Caps produced by one pipeline run.

    Attributes:
        case: "I" or "II".
        log_m1: Cap on log m1.
        log_m2: Cap on log m2 (self-consistent value of the iteration).
        k_bound: Cap on K = max kᵢ.
        l_bound: Cap on L = max lᵢ.
        kl: Cap on K·L.
        y_bound: |yᵢ| <= 2KL.
        x_log_bound: log xᵢ <= kᵢ·log m1 + lᵢ·log m2 below this value.
        r_bound: |r| < 3KL/√m1 (Case II only).
        h1: H1 of the one-logarithm bound (Case II only).
        log_m2_closed_form: 498756·log m1·(log log m1)² (Case II only).
        iterations: Iterations of the fixed point.
        row: Table row attaining the bound at the final state.
    """

    case: str
    log_m1: mpf
    log_m2: mpf
    k_bound: mpf
    l_bound: mpf
    kl: mpf
    y_bound: mpf
    x_log_bound: mpf
    iterations: int
    row: BoundTableRow
    r_bound: mpf | None = None
    h1: mpf | None = None
    log_m2_closed_form: mpf | None = None

    @property
    def m1(self) -> mpf:
        return mpmath.exp(self.log_m1)

    @property
    def m2(self) -> mpf:
        return mpmath.exp(self.log_m2)

    def to_text(self) -> str:
        """Render the state as aligned `name value` lines."""

        def fmt(value: mpf) -> str:
            return mpmath.nstr(value, 8)

        lines = [
            f"case            {self.case}",
            f"row             {self.row.label}",
            f"iterations      {self.iterations}",
            f"m1 <            {fmt(self.m1)}",
            f"log m2 <        {fmt(self.log_m2)}",
        ]
        if self.log_m2 < 1000:
            lines.append(f"m2 <            {fmt(self.m2)}")
        if self.log_m2_closed_form is not None:
            lines.append(f"log m2 (closed) {fmt(self.log_m2_closed_form)}")
        lines += [
            f"K <=            {fmt(self.k_bound)}",
            f"L <=            {fmt(self.l_bound)}",
            f"KL <            {fmt(self.kl)}",
            f"|y| <=          {fmt(self.y_bound)}",
            f"log x <         {fmt(self.x_log_bound)}",
        ]
        if self.r_bound is not None:
            lines.append(f"|r| <           {fmt(self.r_bound)}")
        if self.h1 is not None:
            lines.append(f"H1 <=           {fmt(self.h1)}")
        return "\n".join(lines) + "\n"


# =============================================================================
# Closed-form steps
# =============================================================================


def stormer_m2_cap(kl: Real) -> mpf:
    """Return (4(2 + 10^-8)·KL/π)², below 6.485·(KL)²."""
    return (4 * (2 + mpf(STORMER_SLACK)) * mpf(kl) / mpmath.pi) ** 2


def case2_r_bound(m1: Real, kl: Real) -> mpf:
    return 3 * mpf(kl) / mpmath.sqrt(m1)


def case2_h1(m1: Real, kl: Real) -> mpf:
    """Return H1 = max(17, 2.97 + log(3KL/√m1 + 4KL/(9.05π))).

    For KL >= 10^7 this is below 1.2845·log KL.
    """
    kl = mpf(kl)
    inner = case2_r_bound(m1, kl) + 4 * kl / (mpf(ONE_LOG_FACTOR) * mpmath.pi)
    return max(mpf(17), mpf("2.97") + mpmath.log(inner))


def case2_h1_cap(kl: Real) -> mpf | None:
    """Return 1.2845·log KL, the cap on H1 valid once KL >= 10^7."""
    kl = mpf(kl)
    if kl < H1_THRESHOLD:
        return None
    return mpf(H1_LOG_FACTOR) * mpmath.log(kl)


def closed_form_log_m2_cap(m1: Real) -> mpf:
    log_m1 = mpmath.log(m1)
    return CLOSED_FORM_FACTOR * log_m1 * mpmath.log(log_m1) ** 2


def closed_form_holds(m1: Real, log_m2: Real) -> bool:
    """Return True iff log m2 < 498756·log m1·(log log m1)²."""
    return mpf(log_m2) < closed_form_log_m2_cap(m1)


# =============================================================================
# Pipelines
# =============================================================================


def _state(
    case: str,
    log_m1: mpf,
    log_m2: mpf,
    bound: ExponentBound,
    iterations: int,
    **extra: mpf | None,
) -> TheoremState:
    kl = bound.kl_cap
    return TheoremState(
        case=case,
        log_m1=log_m1,
        log_m2=log_m2,
        k_bound=bound.value / log_m1,
        l_bound=bound.value / log_m2,
        kl=kl,
        y_bound=2 * kl,
        x_log_bound=bound.value,
        iterations=iterations,
        row=bound.row,
        **extra,
    )


def _fixed_point(
    step: Callable[[mpf], mpf],
    start: mpf,
    tolerance: mpf,
    max_iterations: int,
    what: str,
) -> tuple[mpf, int]:
    current = start
    for iteration in range(1, max_iterations + 1):
        following = step(current)
        if following > RUNAWAY_LOG:
            raise BoundsError(
                code=MachinErrorCode.NO_CONVERGENCE,
                message=f"{what}: log m2 diverges past {mpmath.nstr(RUNAWAY_LOG, 3)}",
            )
        if abs(following - current) <= tolerance * abs(following):
            return following, iteration
        current = following
    raise BoundsError(
        code=MachinErrorCode.NO_CONVERGENCE,
        message=f"{what}: no fixed point within {max_iterations} iterations",
    )


def theorem_case1(
    rows: list[BoundTableRow] | None = None,
    mode: BoundMode = "as-published",
    c1_policy: C1Policy = "implied",
    c1_value: Real | None = None,
    exponent: ExponentSymbol = "psi",
    tolerance: Real = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    dps: int = DEFAULT_DPS,
) -> TheoremState:
    """Iterate log m2 <- log((4(2 + 10^-8)·KL/π)²) from log m2 = 30.

    KL is capped by 4τ·C²·log m1·log m2·log^(2ψ) Y at m1 = m2, the worst
    case for m1 < m2. Rows default to the case A rows.

    Raises:
        BoundsError: NO_CONVERGENCE if the iteration does not settle;
            NOT_APPLICABLE for the μ exponent, since case A rows carry no μ.
    """
    rows = rows if rows is not None else case_a_rows()

    with precision(dps):

        def bound_at(log_m: mpf) -> ExponentBound:
            m = mpmath.exp(log_m)
            return maximum_over_rows(m, m, rows, mode, c1_policy, c1_value, exponent)

        def step(log_m: mpf) -> mpf:
            return max(mpf(30), mpmath.log(stormer_m2_cap(bound_at(log_m).kl_cap)))

        log_m2, iterations = _fixed_point(
            step, mpf(30), mpf(tolerance), max_iterations, "case I"
        )
        state = _state("I", log_m2, log_m2, bound_at(log_m2), iterations)

    logger.info(
        "theorem_case1_solved",
        m2=mpmath.nstr(state.m2, 6),
        iterations=iterations,
        row=state.row.label,
    )
    return state


def _case2_log_m2(
    log_m1: mpf,
    rows: list[BoundTableRow],
    settings: tuple[BoundMode, C1Policy, Real | None, ExponentSymbol],
    tolerance: mpf,
    max_iterations: int,
) -> tuple[mpf, ExponentBound, int]:
    m1 = mpmath.exp(log_m1)
    a = mpf(ONE_LOG_FACTOR) * mpmath.pi + log_m1

    def bound_at(log_m2: mpf) -> ExponentBound:
        return maximum_over_rows(m1, mpmath.exp(log_m2), rows, *settings)

    def step(log_m2: mpf) -> mpf:
        kl = bound_at(log_m2).kl_cap
        h1 = case2_h1(m1, kl)
        following = 2 * (mpmath.log(mpf("4.01") * kl) + mpf("2.7704") * a * h1**2)
        return max(following, log_m1, mpf(30))

    start = max(mpf(30), log_m1)
    log_m2, iterations = _fixed_point(step, start, tolerance, max_iterations, "case II")
    return log_m2, bound_at(log_m2), iterations


def _contradicts(log_m1: mpf, kl: mpf) -> bool:
    # 2KL/√(m1 - 1) < π(1 - 10^-8)/4, compared in logs
    lhs = mpmath.log(2 * kl) - mpmath.log(mpmath.expm1(log_m1)) / 2
    return lhs < mpmath.log(mpmath.pi * (1 - mpf(STORMER_SLACK)) / 4)


def theorem_case2(
    rows: list[BoundTableRow] | None = None,
    mode: BoundMode = "as-published",
    c1_policy: C1Policy = "implied",
    c1_value: Real | None = None,
    exponent: ExponentSymbol = "psi",
    tolerance: Real = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    dps: int = DEFAULT_DPS,
) -> TheoremState:
    """Find the least m1 beyond which Case II is contradictory.

    For each m1 the cap on log m2 is the fixed point of
    log m2 <- 2(log(4.01·KL) + 2.7704·a·H1²) with a = 9.05π + log m1. The m1
    cap is then located by bisection on log m1 as the least m1 with
    2KL/√(m1 - 1) < π(1 - 10^-8)/4. Rows default to every bundled row.

    Raises:
        BoundsError: NO_CONVERGENCE if an inner iteration or the bisection
            does not settle.
    """
    rows = rows if rows is not None else load_rows()
    settings = (mode, c1_policy, c1_value, exponent)
    tolerance = mpf(tolerance)

    with precision(dps):

        def evaluate_at(log_m1: mpf) -> tuple[bool, mpf, ExponentBound, int]:
            log_m2, bound, iterations = _case2_log_m2(
                log_m1, rows, settings, tolerance, max_iterations
            )
            return _contradicts(log_m1, bound.kl_cap), log_m2, bound, iterations

        lo, hi = mpmath.log(5), mpf(1000)
        if evaluate_at(lo)[0]:
            hi = lo
        else:
            for _ in range(max_iterations):
                if evaluate_at(hi)[0]:
                    break
                lo, hi = hi, 2 * hi
            else:
                raise BoundsError(
                    code=MachinErrorCode.NO_CONVERGENCE,
                    message="case II: no m1 yields the contradiction",
                )
            for _ in range(max_iterations):
                if hi - lo <= tolerance * hi:
                    break
                mid = (lo + hi) / 2
                if evaluate_at(mid)[0]:
                    hi = mid
                else:
                    lo = mid
            else:
                raise BoundsError(
                    code=MachinErrorCode.NO_CONVERGENCE,
                    message="case II: bisection on log m1 did not converge",
                )

        _, log_m2, bound, iterations = evaluate_at(hi)
        m1 = mpmath.exp(hi)
        kl = bound.kl_cap
        state = _state(
            "II",
            hi,
            log_m2,
            bound,
            iterations,
            r_bound=case2_r_bound(m1, kl),
            h1=case2_h1(m1, kl),
            log_m2_closed_form=closed_form_log_m2_cap(m1),
        )

    logger.info(
        "theorem_case2_solved",
        m1=mpmath.nstr(state.m1, 6),
        log_m2=mpmath.nstr(state.log_m2, 6),
        row=state.row.label,
    )
    return state
