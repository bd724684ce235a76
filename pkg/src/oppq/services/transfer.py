"""Transfer polynomials expressing every moment through the missing ones."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from ..exceptions import LengthError, ZeroLeadingCoefficientError
from .orthopoly import OrthoBasis
from .polynomial import EnergyPolynomial
from .precision import HPReal
from .recursion import MomentRecursion

__all__ = [
    "TransferSystem",
    "build_transfer",
    "propagate_moments",
    "qes_moment_closure",
]


@dataclass(frozen=True)
class TransferSystem:
    """Moments as linear combinations of the missing moments.

    y(ρ) = Σ_ℓ M_E(ρ, ℓ)·y(ℓ), where ℓ runs over ``columns`` and each
    M_E(ρ, ℓ) is a polynomial in the energy.

    Attributes
    ----------
    recursion
        Moment equation the system was generated from.
    columns
        Indices of the missing moments.
    entries
        ``entries[ρ][c]`` is M_E(ρ, columns[c]).
    kink
        Row at which a segmented recursion restarts, if any.
    """

    recursion: MomentRecursion
    columns: tuple[int, ...]
    entries: tuple[tuple[EnergyPolynomial, ...], ...]
    kink: int | None = None

    @property
    def rows(self) -> int:
        """Number of moments covered."""
        return len(self.entries)

    def entry(self, rho: int, ell: int) -> EnergyPolynomial:
        """Return M_E(ρ, ℓ) for a missing-moment index ℓ."""
        try:
            column = self.columns.index(ell)
        except ValueError:
            raise ValueError(f"{ell} is not a missing-moment index") from None
        return self.entries[rho][column]

    def row(self, rho: int) -> tuple[EnergyPolynomial, ...]:
        """Return M_E(ρ, ℓ) for every column ℓ."""
        return self.entries[rho]

    def evaluate(self, energy: Any, missing: Sequence[Any]) -> list[HPReal]:
        """Moments at a fixed energy for given missing-moment values.

        Parameters
        ----------
        energy
            Energy at which to evaluate the transfer polynomials.
        missing
            Values of the missing moments, in column order.
        """
        if len(missing) != len(self.columns):
            raise ValueError(
                f"Expected {len(self.columns)} missing moments,"
                f" got {len(missing)}"
            )
        ctx = self.recursion.precision.ctx
        energy = self.recursion.precision.parse(energy)
        return [
            ctx.fsum(p(energy) * v for p, v in zip(row, missing, strict=True))
            for row in self.entries
        ]


def build_transfer(rec: MomentRecursion, rows: int) -> TransferSystem:
    """Generate the transfer polynomials of a moment recursion.

    Missing-moment rows are initialized to unit vectors. Rows below the
    first column of a recursion with a vanishing prefix are zero. Every
    other row is the recursion's right-hand side divided by its leading
    coefficient, which does not depend on the energy.

    Parameters
    ----------
    rec
        Moment recursion, possibly segmented.
    rows
        Number of moments to cover.

    Returns
    -------
    TransferSystem
        Transfer polynomials for ρ < rows.

    Raises
    ------
    LengthError
        Raised if ``rows`` is smaller than the missing-moment order plus 2.
    ZeroLeadingCoefficientError
        Raised if the leading coefficient vanishes at a row that is not a
        missing moment.
    """
    minimum = rec.effective_order + 2
    if rows < minimum:
        raise LengthError(minimum, rows)
    precision = rec.precision
    columns = rec.columns
    width = len(columns)
    zero = EnergyPolynomial.zero(precision)
    one = EnergyPolynomial.constant(1, precision)

    entries: list[tuple[EnergyPolynomial, ...]] = []
    for t in range(rows):
        if t in columns:
            entries.append(
                tuple(one if ell == t else zero for ell in columns)
            )
            continue
        if rec.zero_prefix and t < columns[0]:
            entries.append((zero,) * width)
            continue
        lead = rec.leading(t)
        if lead == 0:
            raise ZeroLeadingCoefficientError(t, rec.representation.value)
        accumulated = [zero] * width
        for k, coefficient in rec.terms(t):
            if k < 0 or coefficient.is_zero:
                continue
            for c in range(width):
                accumulated[c] = accumulated[c] + coefficient * entries[k][c]
        inverse = 1 / lead
        entries.append(tuple(p.scale(inverse) for p in accumulated))

    return TransferSystem(
        recursion=rec, columns=columns, entries=tuple(entries), kink=rec.kink
    )


def propagate_moments(
    rec: MomentRecursion, energy: Any, missing: Sequence[Any], count: int
) -> list[HPReal]:
    """Run the moment recursion forward with scalar values.

    This does not build any transfer polynomials and serves as an
    independent check of `build_transfer`.
    """
    precision = rec.precision
    ctx = precision.ctx
    energy = precision.parse(energy)
    seeds = dict(zip(rec.columns, missing, strict=True))
    values: list[HPReal] = []
    for t in range(count):
        if t in seeds:
            values.append(precision.mpf(seeds[t]))
        elif rec.zero_prefix and t < rec.columns[0]:
            values.append(ctx.mpf(0))
        else:
            lead = rec.leading(t)
            if lead == 0:
                raise ZeroLeadingCoefficientError(t, rec.representation.value)
            total = ctx.fsum(
                coefficient(energy) * values[k]
                for k, coefficient in rec.terms(t)
                if k >= 0
            )
            values.append(total / lead)
    return values


def qes_moment_closure(
    basis: OrthoBasis, low: Sequence[Any]
) -> list[HPReal]:
    """Extend the moments of a QES state with the vanishing projections.

    A QES state has Ω_j = Σ_i Ξ_i^{(j)} ν(i) = 0 for every j above the
    highest given moment, so ν(j) = −Σ_{i<j} Ξ_i^{(j)} ν(i)/Ξ_j^{(j)}.

    Parameters
    ----------
    basis
        Orthogonal basis of the reference weight.
    low
        Known moments ν(0), …, ν(n*).

    Returns
    -------
    list of HPReal
        Moments ν(0), …, ν(J) with J the basis degree.
    """
    precision = basis.moments.precision
    ctx = precision.ctx
    values = [precision.mpf(v) for v in low]
    coefficients = basis.xi if basis.is_normalized else basis.monic
    for j in range(len(values), basis.degree + 1):
        row = coefficients[j]
        total = ctx.fsum(row[i] * values[i] for i in range(j))
        values.append(-total / row[j])
    return values
