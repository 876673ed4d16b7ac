"""Error types and error codes.

This module defines the error hierarchy shared by every machinkit module,
providing specific error codes for the different failure scenarios.

Classes:
    - MachinErrorCode: Enum of error codes for categorizing failures
    - MachinError: Base exception for all machinkit errors
    - GaussianError: Failures in Gaussian-integer arithmetic
    - RelationError: Failures while reducing or synthesizing relations
    - RelationParseError: Malformed relation text
    - SolverError: Precondition failures in the diophantine solvers
    - BoundsError: Domain and convergence failures in the bounds engine
    - PrecisionError: Failures in high-precision evaluation
"""

from enum import Enum


class MachinErrorCode(str, Enum):
    """Error codes for machinkit operations.

    Used to categorize errors for logging, CLI exit codes, and tests.
    """

    # Gaussian arithmetic
    NOT_SPLITTABLE = "NOT_SPLITTABLE"
    ON_DIAGONAL = "ON_DIAGONAL"
    DIVISION_BY_ZERO = "DIVISION_BY_ZERO"

    # Relations
    BAD_BASIS = "BAD_BASIS"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    INCONSISTENT = "INCONSISTENT"
    OUT_OF_RANGE = "OUT_OF_RANGE"
    PARSE_ERROR = "PARSE_ERROR"

    # Solvers
    PRECONDITION = "PRECONDITION"

    # Bounds engine
    DOMAIN_ERROR = "DOMAIN_ERROR"
    NO_CONVERGENCE = "NO_CONVERGENCE"
    BRANCH_ERROR = "BRANCH_ERROR"
    OUT_OF_STATED_DOMAIN = "OUT_OF_STATED_DOMAIN"

    # Precision evaluation
    RELATION_NOT_VERIFIED = "RELATION_NOT_VERIFIED"

    # Settings
    CONFIG_INVALID = "CONFIG_INVALID"


class MachinError(Exception):
    """Base exception for machinkit errors.

    Attributes:
        code: The error code categorizing this error.
        message: Human-readable error message.
        cause: The underlying exception that caused this error (if any).

    Example:
        raise GaussianError(
            code=MachinErrorCode.NOT_SPLITTABLE,
            message="7 has a prime factor congruent to 3 mod 4",
        )
    """

    def __init__(
        self,
        code: MachinErrorCode,
        message: str,
        cause: Exception | None = None,
    ) -> None:
        """Initialize the error.

        Args:
            code: The error code for this error.
            message: Human-readable error message.
            cause: The underlying exception (optional).
        """
        self.code = code
        self.message = message
        self.cause = cause
        super().__init__(f"[{code.value}] {message}")


class GaussianError(MachinError):
    """Raised by Gaussian-integer arithmetic."""


class RelationError(MachinError):
    """Raised while reducing, verifying or synthesizing arctangent relations."""


class RelationParseError(RelationError):
    """Raised when relation text does not follow the grammar.

    Attributes:
        line_number: 1-based line of the offending text, if known.
    """

    def __init__(self, message: str, line_number: int | None = None) -> None:
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(MachinErrorCode.PARSE_ERROR, message)


class SolverError(MachinError):
    """Raised on precondition violations in the diophantine solvers."""


class BoundsError(MachinError):
    """Raised by the bounds engine."""


class PrecisionError(MachinError):
    """Raised by high-precision evaluation."""
