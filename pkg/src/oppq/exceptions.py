"""Exceptions for oppq."""

from __future__ import annotations

from typing import ClassVar, Self

from pydantic import ValidationError

__all__ = [
    "ConfigurationError",
    "EmptyWindowError",
    "ExtentError",
    "FamilyMismatchError",
    "InvalidPrecisionError",
    "LengthError",
    "NonConvergenceError",
    "NonFactorizableError",
    "NotConvergedError",
    "NotQESTypeError",
    "OPPQError",
    "PositivityBreakError",
    "SeedFailureError",
    "SingularHankelError",
    "ZeroLeadingCoefficientError",
]


class OPPQError(Exception):
    """Base class for oppq errors.

    Attributes
    ----------
    exit_code
        Exit status the command-line interface uses for this error.
    stage
        Name of the timed pipeline stage that raised the error, if known.
    """

    exit_code: ClassVar[int] = 2

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.stage: str | None = None

    def __str__(self) -> str:
        message = super().__str__()
        if self.stage:
            return f"{message} (during {self.stage})"
        return message


class ConfigurationError(OPPQError):
    """The run configuration is invalid.

    Parameters
    ----------
    message
        Summary of the problem.
    fields
        Names of the offending fields, if known.
    """

    @classmethod
    def from_exception(cls, exc: ValidationError) -> Self:
        """Create an exception from a Pydantic validation failure.

        Parameters
        ----------
        exc
            Pydantic exception.

        Returns
        -------
        ConfigurationError
            Constructed exception naming every invalid field.
        """
        fields = []
        details = []
        for error in exc.errors():
            name = ".".join(str(p) for p in error["loc"])
            fields.append(name)
            details.append(f"{name}: {error['msg']}")
        return cls("Invalid configuration: " + "; ".join(details), fields)

    def __init__(self, message: str, fields: list[str] | None = None) -> None:
        super().__init__(message)
        self.fields = fields or []


class InvalidPrecisionError(OPPQError):
    """Requested working precision is below the supported minimum."""

    def __init__(self, digits: int, minimum: int) -> None:
        self.digits = digits
        super().__init__(
            f"Precision of {digits} digits is below the minimum of {minimum}"
        )


class NonConvergenceError(OPPQError):
    """Root refinement failed to shrink a bracket below tolerance."""

    exit_code = 3

    def __init__(self, lo: str, hi: str, iterations: int) -> None:
        self.lo = lo
        self.hi = hi
        super().__init__(
            f"Root refinement in [{lo}, {hi}] did not converge after"
            f" {iterations} iterations; raise the precision"
        )


class SeedFailureError(OPPQError):
    """Quadrature for a seed moment did not reach working precision."""

    exit_code = 3

    def __init__(self, rho: int, error: str) -> None:
        self.rho = rho
        super().__init__(
            f"Quadrature for seed moment m({rho}) did not converge"
            f" (estimated error {error})"
        )


class LengthError(OPPQError):
    """A moment table is too short for the requested operation."""

    def __init__(self, needed: int, available: int) -> None:
        self.needed = needed
        self.available = available
        super().__init__(
            f"Need {needed} moments but only {available} are available"
        )


class PositivityBreakError(OPPQError):
    """The monic recurrence lost positivity.

    Either the moments do not come from a positive weight or the working
    precision is exhausted at this polynomial order.

    Parameters
    ----------
    order
        Polynomial order at which positivity failed.
    reason
        Short description of the failure.
    """

    exit_code = 3

    def __init__(self, order: int, reason: str) -> None:
        self.order = order
        super().__init__(f"Positivity lost at order {order}: {reason}")


class SingularHankelError(OPPQError):
    """A Hankel determinant needed as a divisor vanished."""

    exit_code = 3

    def __init__(self, order: int) -> None:
        self.order = order
        super().__init__(f"Hankel determinant of order {order} is zero")


class FamilyMismatchError(OPPQError):
    """A representation was requested for the wrong potential family."""

    def __init__(self, representation: str, family: str) -> None:
        self.representation = representation
        self.family = family
        super().__init__(
            f"Representation {representation} is not defined for the"
            f" {family} family"
        )


class ZeroLeadingCoefficientError(OPPQError):
    """A recursion's leading coefficient vanished at an unexpected row."""

    exit_code = 3

    def __init__(self, row: int, representation: str) -> None:
        self.row = row
        super().__init__(
            f"Leading coefficient of the {representation} recursion vanishes"
            f" at row {row}, which the potential parameters do not predict"
        )


class ExtentError(OPPQError):
    """A projection order lies outside the basis or transfer extent."""

    def __init__(self, order: int, limit: int) -> None:
        self.order = order
        self.limit = limit
        super().__init__(f"Order {order} exceeds available extent {limit}")


class EmptyWindowError(OPPQError):
    """No roots were found in the energy window."""

    exit_code = 3

    def __init__(self, lo: str, hi: str) -> None:
        super().__init__(f"No roots found in energy window [{lo}, {hi}]")


class NonFactorizableError(OPPQError):
    """The OPPQ determinant is not divisible by the QES polynomial."""

    exit_code = 3

    def __init__(self, remainder: str, tolerance: str) -> None:
        super().__init__(
            f"Division remainder {remainder} exceeds tolerance {tolerance}"
        )


class NotQESTypeError(OPPQError):
    """An operation requiring a QES potential was given a non-QES one."""

    exit_code = 4

    def __init__(self, description: str) -> None:
        msg = f"Potential is not quasi-exactly solvable: {description}"
        super().__init__(msg)


class NotConvergedError(OPPQError):
    """The spectral oracle did not converge to the requested tolerance."""

    exit_code = 3

    def __init__(
        self, level: int, difference: float, tolerance: float
    ) -> None:
        self.level = level
        super().__init__(
            f"Oracle level {level} changed by {difference:.3e} between"
            f" refinements, above tolerance {tolerance:.1e}"
        )
