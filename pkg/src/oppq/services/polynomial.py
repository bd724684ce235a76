"""Dense polynomials with high-precision coefficients."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from enum import Enum
from typing import Any

from .precision import HPReal, Precision

__all__ = [
    "EnergyPolynomial",
    "PolyOp",
    "evaluate_determinant",
    "poly_arith",
    "polynomial_determinant",
]


class PolyOp(Enum):
    """Arithmetic operations understood by `poly_arith`."""

    add = "add"
    sub = "sub"
    mul = "mul"
    scale = "scale"


class EnergyPolynomial:
    """Immutable dense univariate polynomial.

    Used for everything polynomial in the energy (transfer entries,
    Bender–Dunne polynomials, determinants) and, by the orthogonal
    polynomial code, for polynomials in the configuration variable.

    Parameters
    ----------
    coefficients
        Coefficients in ascending powers. Exact trailing zeros are trimmed.
    precision
        Session the coefficients belong to.
    """

    __slots__ = ("_coefficients", "_precision")

    def __init__(
        self, coefficients: Iterable[Any], precision: Precision
    ) -> None:
        ctx = precision.ctx
        values = [ctx.mpf(c) for c in coefficients]
        while values and values[-1] == 0:
            values.pop()
        self._coefficients: tuple[HPReal, ...] = tuple(values)
        self._precision = precision

    @classmethod
    def zero(cls, precision: Precision) -> EnergyPolynomial:
        """Create the zero polynomial."""
        return cls((), precision)

    @classmethod
    def constant(cls, value: Any, precision: Precision) -> EnergyPolynomial:
        """Create a constant polynomial."""
        return cls((value,), precision)

    @classmethod
    def linear(
        cls, intercept: Any, slope: Any, precision: Precision
    ) -> EnergyPolynomial:
        """Create ``intercept + slope·E``."""
        return cls((intercept, slope), precision)

    @classmethod
    def from_roots(
        cls, roots: Iterable[Any], precision: Precision
    ) -> EnergyPolynomial:
        """Create the monic polynomial with the given roots."""
        result = cls.constant(1, precision)
        for root in roots:
            result = result * cls.linear(-precision.mpf(root), 1, precision)
        return result

    @property
    def coefficients(self) -> tuple[HPReal, ...]:
        """Coefficients in ascending powers; empty for the zero polynomial."""
        return self._coefficients

    @property
    def precision(self) -> Precision:
        """Session the coefficients belong to."""
        return self._precision

    @property
    def degree(self) -> int:
        """Degree, taken as 0 for the zero polynomial."""
        return max(len(self._coefficients) - 1, 0)

    @property
    def is_zero(self) -> bool:
        """Whether this is the zero polynomial."""
        return not self._coefficients

    @property
    def leading(self) -> HPReal:
        """Leading coefficient (zero for the zero polynomial)."""
        if not self._coefficients:
            return self._precision.mpf(0)
        return self._coefficients[-1]

    def __repr__(self) -> str:
        terms = ", ".join(
            self._precision.format(c, 10) for c in self._coefficients
        )
        return f"EnergyPolynomial([{terms}])"

    def __call__(self, x: Any) -> HPReal:
        ctx = self._precision.ctx
        result = ctx.mpf(0)
        for coefficient in reversed(self._coefficients):
            result = result * x + coefficient
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EnergyPolynomial):
            return NotImplemented
        return self._coefficients == other._coefficients

    def __hash__(self) -> int:
        return hash(self._coefficients)

    def __neg__(self) -> EnergyPolynomial:
        return EnergyPolynomial(
            (-c for c in self._coefficients), self._precision
        )

    def __add__(self, other: EnergyPolynomial | Any) -> EnergyPolynomial:
        if not isinstance(other, EnergyPolynomial):
            other = EnergyPolynomial.constant(other, self._precision)
        a, b = self._coefficients, other._coefficients
        if len(a) < len(b):
            a, b = b, a
        result = list(a)
        for i, c in enumerate(b):
            result[i] += c
        return EnergyPolynomial(result, self._precision)

    __radd__ = __add__

    def __sub__(self, other: EnergyPolynomial | Any) -> EnergyPolynomial:
        if not isinstance(other, EnergyPolynomial):
            other = EnergyPolynomial.constant(other, self._precision)
        return self + (-other)

    def __rsub__(self, other: Any) -> EnergyPolynomial:
        return (-self) + other

    def __mul__(self, other: EnergyPolynomial | Any) -> EnergyPolynomial:
        if not isinstance(other, EnergyPolynomial):
            return self.scale(other)
        a, b = self._coefficients, other._coefficients
        if not a or not b:
            return EnergyPolynomial.zero(self._precision)
        ctx = self._precision.ctx
        result = [ctx.mpf(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                result[i + j] += x * y
        return EnergyPolynomial(result, self._precision)

    __rmul__ = __mul__

    def scale(self, factor: Any) -> EnergyPolynomial:
        """Multiply every coefficient by a scalar."""
        factor = self._precision.mpf(factor)
        return EnergyPolynomial(
            (c * factor for c in self._coefficients), self._precision
        )

    def norm(self) -> HPReal:
        """Largest coefficient magnitude."""
        if not self._coefficients:
            return self._precision.mpf(0)
        return max(abs(c) for c in self._coefficients)

    def normalized(self) -> EnergyPolynomial:
        """Scale so the largest coefficient magnitude is one."""
        norm = self.norm()
        if norm == 0:
            return self
        return self.scale(1 / norm)

    def monic(self) -> EnergyPolynomial:
        """Scale so the leading coefficient is one."""
        return self.scale(1 / self.leading)

    def derivative(self) -> EnergyPolynomial:
        """Return the first derivative."""
        return EnergyPolynomial(
            (i * c for i, c in enumerate(self._coefficients) if i > 0),
            self._precision,
        )

    def trimmed(self, tolerance: Any) -> EnergyPolynomial:
        """Drop leading coefficients that are negligible relative to the norm.

        Cancellation in determinant assembly can leave the top coefficients
        at rounding-noise level instead of exact zero.
        """
        threshold = self.norm() * tolerance
        values = list(self._coefficients)
        while values and abs(values[-1]) <= threshold:
            values.pop()
        return EnergyPolynomial(values, self._precision)

    def divmod(
        self, divisor: EnergyPolynomial
    ) -> tuple[EnergyPolynomial, EnergyPolynomial]:
        """Polynomial long division.

        Returns
        -------
        tuple of EnergyPolynomial
            Quotient and remainder, with ``deg remainder < deg divisor``.

        Raises
        ------
        ZeroDivisionError
            Raised if the divisor is the zero polynomial.
        """
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self._precision.ctx
        remainder = list(self._coefficients)
        d = divisor.coefficients
        shift_count = len(remainder) - len(d) + 1
        if shift_count <= 0:
            return EnergyPolynomial.zero(self._precision), self
        quotient = [ctx.mpf(0)] * shift_count
        for shift in reversed(range(shift_count)):
            factor = remainder[shift + len(d) - 1] / d[-1]
            quotient[shift] = factor
            for i, c in enumerate(d):
                remainder[shift + i] -= factor * c
        remainder = remainder[: len(d) - 1]
        return (
            EnergyPolynomial(quotient, self._precision),
            EnergyPolynomial(remainder, self._precision),
        )


def poly_arith(
    a: EnergyPolynomial, b: EnergyPolynomial | Any, op: PolyOp
) -> EnergyPolynomial:
    """Apply an arithmetic operation to two polynomials.

    Parameters
    ----------
    a
        Left operand.
    b
        Right operand, a scalar for `PolyOp.scale`.
    op
        Operation to apply.

    Returns
    -------
    EnergyPolynomial
        Result at the working precision of ``a``.
    """
    match op:
        case PolyOp.add:
            return a + b
        case PolyOp.sub:
            return a - b
        case PolyOp.mul:
            return a * b
        case PolyOp.scale:
            return a.scale(b)


def polynomial_determinant(
    matrix: Sequence[Sequence[EnergyPolynomial]],
) -> EnergyPolynomial:
    """Determinant of a small square matrix of polynomials.

    Laplace expansion along rows with memoized minors indexed by the bitmask
    of columns they use, so an n×n matrix costs n·2ⁿ polynomial products.
    Exact polynomial arithmetic keeps every E-dependence, which pivoting
    elimination would have to divide through.

    Parameters
    ----------
    matrix
        Square matrix, at least 1×1.

    Returns
    -------
    EnergyPolynomial
        The determinant.
    """
    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        raise ValueError("Determinant needs a non-empty square matrix")
    precision = matrix[0][0].precision
    minors: dict[int, EnergyPolynomial] = {
        0: EnergyPolynomial.constant(1, precision)
    }
    for mask in range(1, 1 << size):
        row = size - mask.bit_count()
        total = EnergyPolynomial.zero(precision)
        position = 0
        for column in range(size):
            if not mask & (1 << column):
                continue
            entry = matrix[row][column]
            minor = minors[mask & ~(1 << column)]
            if not entry.is_zero and not minor.is_zero:
                term = entry * minor
                total = total - term if position % 2 else total + term
            position += 1
        minors[mask] = total
    return minors[(1 << size) - 1]


def evaluate_determinant(
    matrix: Sequence[Sequence[EnergyPolynomial]], energy: Any
) -> HPReal:
    """Evaluate a polynomial matrix at one energy and take its determinant.

    The pointwise counterpart of `polynomial_determinant`, used to cross-check
    the explicit assembly.
    """
    precision = matrix[0][0].precision
    ctx = precision.ctx
    values = ctx.matrix([[entry(energy) for entry in row] for row in matrix])
    return ctx.det(values)
