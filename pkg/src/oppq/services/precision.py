"""Working-precision sessions for high-precision arithmetic."""

from __future__ import annotations

import re
from typing import Any, TypeAlias

import mpmath

from ..config import config
from ..constants import MIN_DIGITS
from ..exceptions import InvalidPrecisionError

HPReal: TypeAlias = Any
"""A real scalar belonging to a `Precision` session (an mpmath ``mpf``)."""

_SCALAR_REGEX = re.compile(
    r"^[+-]?(?:sqrt\(.+\)|[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?"
    r"(?:/[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)?)$"
)
"""Accepted text forms of an exact scalar parameter."""

__all__ = [
    "HPReal",
    "Precision",
    "is_scalar_text",
    "set_precision",
]


def is_scalar_text(text: str) -> bool:
    """Check whether a string is an accepted scalar expression.

    Accepted forms are decimals (``-13``, ``0.75``, ``1e-3``), rationals
    (``3/4``) and square roots of accepted forms (``sqrt(8)``), each with an
    optional sign.
    """
    text = text.replace(" ", "")
    if not _SCALAR_REGEX.match(text):
        return False
    body = text.lstrip("+-")
    if body.startswith("sqrt("):
        return body.endswith(")") and is_scalar_text(body[5:-1])
    return True


class Precision:
    """A computation session at fixed working precision.

    Every session owns its own mpmath context, so sessions at different
    precisions can coexist and nothing depends on the global ``mpmath.mp``
    state. Arithmetic runs at ``digits + guard_digits`` decimal digits while
    tolerances derive from ``digits`` alone.

    Parameters
    ----------
    digits
        Requested precision in decimal digits.
    guard_digits
        Extra digits carried internally.

    Attributes
    ----------
    digits
        Requested precision in decimal digits.
    guard_digits
        Extra digits carried internally.
    ctx
        The mpmath context all scalars of this session belong to.

    Raises
    ------
    InvalidPrecisionError
        Raised if ``digits`` is below the supported minimum.
    """

    def __init__(self, digits: int, guard_digits: int) -> None:
        if digits < MIN_DIGITS:
            raise InvalidPrecisionError(digits, MIN_DIGITS)
        self.digits = digits
        self.guard_digits = guard_digits
        self.ctx = mpmath.MPContext()
        self.ctx.dps = digits + guard_digits

    def __repr__(self) -> str:
        return f"Precision(digits={self.digits}, guard={self.guard_digits})"

    @property
    def dps(self) -> int:
        """Internal working precision in decimal digits."""
        return self.ctx.dps

    @property
    def root_tolerance(self) -> HPReal:
        """Residual and root accuracy bound, 10^(−digits/2)."""
        return self.ctx.power(10, -self.ctx.mpf(self.digits) / 2)

    @property
    def merge_tolerance(self) -> HPReal:
        """Distance below which roots are considered identical."""
        return self.ctx.power(10, -self.ctx.mpf(self.digits) / 4)

    @property
    def epsilon(self) -> HPReal:
        """Relative step at which iterative refinement stops."""
        return self.ctx.power(10, -(self.digits + self.guard_digits // 2))

    def mpf(self, value: Any) -> HPReal:
        """Convert a value to a scalar of this session."""
        return self.ctx.mpf(value)

    def parse(self, value: Any) -> HPReal:
        """Parse an exact scalar parameter.

        Parameters
        ----------
        value
            Number, session scalar, or text accepted by `is_scalar_text`.
            Text is parsed exactly at working precision, so ``"sqrt(8)"``
            and ``"3/4"`` carry no binary rounding.

        Returns
        -------
        HPReal
            Parsed value.

        Raises
        ------
        ValueError
            Raised if the text is not an accepted scalar expression.
        """
        if isinstance(value, float):
            return self.ctx.mpf(repr(value))
        if not isinstance(value, str):
            return self.ctx.mpf(value)
        text = value.replace(" ", "")
        if not is_scalar_text(text):
            raise ValueError(f"Cannot parse scalar {value!r}")
        sign = -1 if text.startswith("-") else 1
        body = text.lstrip("+-")
        if body.startswith("sqrt("):
            return sign * self.ctx.sqrt(self.parse(body[5:-1]))
        if "/" in body:
            numerator, denominator = body.split("/")
            return sign * self.ctx.mpf(numerator) / self.ctx.mpf(denominator)
        return sign * self.ctx.mpf(body)

    def nearest_integer(self, value: HPReal) -> int | None:
        """Return the integer ``value`` equals to tolerance, if any."""
        candidate = int(self.ctx.nint(value))
        scale = max(1, abs(candidate))
        if abs(value - candidate) <= self.root_tolerance * scale:
            return candidate
        return None

    def is_negligible(self, value: HPReal, scale: HPReal) -> bool:
        """Whether ``value`` is zero to tolerance relative to ``scale``."""
        return abs(value) <= self.root_tolerance * max(abs(scale), 1)

    def format(self, value: HPReal, digits: int | None = None) -> str:
        """Format a scalar with ``digits`` significant digits.

        Defaults to the full requested precision, which is how energies are
        stored in JSON output.
        """
        return self.ctx.nstr(value, digits or self.digits, strip_zeros=False)


def set_precision(
    digits: int | None = None, guard_digits: int | None = None
) -> Precision:
    """Open a computation session.

    Parameters
    ----------
    digits
        Working precision in decimal digits, defaulting to the configured
        ``OPPQ_DIGITS``.
    guard_digits
        Extra internal digits, defaulting to the configured value.

    Returns
    -------
    Precision
        New session handle.

    Raises
    ------
    InvalidPrecisionError
        Raised if ``digits`` is below 30.
    """
    if digits is None:
        digits = config.digits
    if guard_digits is None:
        guard_digits = config.guard_digits
    return Precision(digits, guard_digits)
