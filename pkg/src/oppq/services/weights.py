"""Positive reference weights and their power-moment tables."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any

from ..constants import QUADRATURE_TAIL_DIGITS
from ..exceptions import LengthError, SeedFailureError
from .precision import HPReal, Precision

__all__ = [
    "MomentTable",
    "Support",
    "WeightFamily",
    "WeightSpec",
    "bd_weight_moments",
    "full_line_moments",
    "hankel_hadamard",
    "hankel_hadamard_profile",
    "parity_weight_moments",
    "sextic_m0_closed_form",
    "sextic_m1_closed_form",
    "sextic_weight_moments",
]


class WeightFamily(Enum):
    """Families of reference weights."""

    sextic_exp = "SexticExp"
    bd_exp = "BDExp"


class Support(Enum):
    """Integration domain of a moment table."""

    whole_line = "whole_line"
    """Moments in x over the whole real line, odd moments included."""

    half_line = "half_line"
    """Moments in ξ = x², one parity sector at a time."""


@dataclass(frozen=True)
class WeightSpec:
    """A positive reference weight.

    The sextic weight is exp(−√g(x⁴ + (b/g)x²)/s); its moments in ξ = x²
    are m(ρ) = ∫ x^{2ρ} weight dx over the whole line. The Bender–Dunne
    weight is x^{2γ} exp(−x⁴/s) on the half line with moments
    m(ρ) = ∫₀^∞ x^{2ρ} x^{2γ} exp(−x⁴/s) dx.

    Attributes
    ----------
    family
        Weight family.
    g
        Sextic coupling (1 for BD).
    b
        Quartic coefficient of the sextic weight (0 for BD).
    s_scale
        The scale s, 4 for the asymptotic factor 𝒜 and 2 for 𝒜².
    gamma
        Power of x² multiplying the BD weight (0 for sextic).
    sigma
        Parity shift applied to the moment index.
    precision
        Working precision.
    """

    family: WeightFamily
    g: HPReal
    b: HPReal
    s_scale: HPReal
    gamma: HPReal
    sigma: int
    precision: Precision

    @classmethod
    def sextic(
        cls, g: HPReal, b: HPReal, s_scale: int, precision: Precision
    ) -> WeightSpec:
        """Create the sextic asymptotic weight exp(−√g(x⁴ + (b/g)x²)/s)."""
        return cls(
            family=WeightFamily.sextic_exp,
            g=precision.mpf(g),
            b=precision.mpf(b),
            s_scale=precision.mpf(s_scale),
            gamma=precision.mpf(0),
            sigma=0,
            precision=precision,
        )

    @classmethod
    def bender_dunne(
        cls, gamma: HPReal, s_scale: int, precision: Precision
    ) -> WeightSpec:
        """Create the half-line weight x^{2γ} exp(−x⁴/s)."""
        gamma = precision.mpf(gamma)
        if gamma <= -precision.mpf(1) / 2:
            raise ValueError("Weight exponent gamma must exceed -1/2")
        return cls(
            family=WeightFamily.bd_exp,
            g=precision.mpf(1),
            b=precision.mpf(0),
            s_scale=precision.mpf(s_scale),
            gamma=gamma,
            sigma=0,
            precision=precision,
        )

    def matches(self, other: WeightSpec) -> bool:
        """Whether two specs describe the same weight up to parity shift."""
        return (
            self.family == other.family
            and self.g == other.g
            and self.b == other.b
            and self.s_scale == other.s_scale
            and self.gamma == other.gamma
        )

    def describe(self) -> str:
        """Short human-readable description."""
        fmt = self.precision.format
        if self.family == WeightFamily.bd_exp:
            return (
                f"x^(2*{fmt(self.gamma, 8)}) exp(-x^4/{fmt(self.s_scale, 3)})"
            )
        return (
            f"exp(-sqrt({fmt(self.g, 8)})(x^4 + {fmt(self.b / self.g, 8)}"
            f" x^2)/{fmt(self.s_scale, 3)})"
        )


@dataclass(frozen=True)
class MomentTable:
    """Finite prefix of the power moments of a positive weight.

    Attributes
    ----------
    values
        Moments m(0), m(1), …
    weight
        The weight the moments belong to, including any parity shift.
    support
        Whether indices count powers of ξ in one parity sector or powers of
        x over the whole line.
    """

    values: tuple[HPReal, ...]
    weight: WeightSpec
    support: Support = Support.half_line

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> HPReal:
        return self.values[index]

    @property
    def precision(self) -> Precision:
        """Working precision of the moments."""
        return self.weight.precision

    def require(self, count: int) -> None:
        """Raise `LengthError` unless at least ``count`` moments exist."""
        if len(self.values) < count:
            raise LengthError(count, len(self.values))

    def with_values(self, values: Sequence[HPReal]) -> MomentTable:
        """Return a copy with replaced values, keeping the weight."""
        return replace(self, values=tuple(values))


def _sextic_coefficients(w: WeightSpec) -> tuple[HPReal, HPReal]:
    """Return (a, c) with weight exp(−a x⁴ − c x²)."""
    ctx = w.precision.ctx
    sqrt_g = ctx.sqrt(w.g)
    return sqrt_g / w.s_scale, w.b / (w.s_scale * sqrt_g)


def _seed_moments(w: WeightSpec) -> tuple[HPReal, HPReal]:
    """Compute m(0) and m(1) of the sextic weight by tanh-sinh quadrature.

    The integrand is even, so the half line is integrated and doubled. The
    cutoff R satisfies aR⁴ + cR² = T with the tail bound T chosen so the
    neglected tail is below the working precision by a safety margin.
    """
    precision = w.precision
    ctx = precision.ctx
    a, c = _sextic_coefficients(w)
    tail = (precision.dps + QUADRATURE_TAIL_DIGITS) * ctx.ln(10)
    cutoff = ctx.sqrt((-c + ctx.sqrt(c**2 + 4 * a * tail)) / (2 * a))
    cutoff = cutoff * ctx.mpf("1.1") + 1
    points = [ctx.mpf(0), cutoff / 4, cutoff / 2, cutoff]
    if c < 0:
        points.append(ctx.sqrt(-c / (2 * a)))
        points.sort()
    tolerance = ctx.power(10, -precision.digits)
    seeds = []
    for rho in (0, 1):

        def integrand(x: HPReal, rho: int = rho) -> HPReal:
            return x ** (2 * rho) * ctx.exp(-(a * x**4 + c * x**2))

        value, error = ctx.quad(integrand, points, error=True)
        if not error <= tolerance * abs(value):
            raise SeedFailureError(rho, precision.format(error, 5))
        seeds.append(2 * value)
    return seeds[0], seeds[1]


def sextic_m0_closed_form(w: WeightSpec) -> HPReal | None:
    """Evaluate m(0) of the sextic weight with the Bessel closed form.

    For b > 0, ∫ exp(−ax⁴ − cx²) dx = √(c/(4a)) e^z K_{1/4}(z) with
    z = c²/(8a); for b = 0 it reduces to Γ(1/4)/(2a^{1/4}). There is no
    single closed form used here for b < 0.

    Returns
    -------
    HPReal or None
        The moment, or `None` if ``b < 0``.
    """
    ctx = w.precision.ctx
    a, c = _sextic_coefficients(w)
    return _m0_closed_form(ctx, a, c)


def _m0_closed_form(ctx: Any, a: HPReal, c: HPReal) -> HPReal | None:
    quarter = ctx.mpf(1) / 4
    if c == 0:
        return ctx.gamma(quarter) / (2 * ctx.root(a, 4))
    if c < 0:
        return None
    z = c**2 / (8 * a)
    return ctx.sqrt(c / (4 * a)) * ctx.exp(z) * ctx.besselk(quarter, z)


def sextic_m1_closed_form(w: WeightSpec) -> HPReal | None:
    """Evaluate m(1) of the sextic weight from the Bessel closed form.

    Uses m(1) = −∂m(0)/∂c, differentiating the closed form numerically at
    working precision. Defined for b > 0 only.
    """
    ctx = w.precision.ctx
    a, c = _sextic_coefficients(w)
    if c <= 0:
        return None
    return -ctx.diff(lambda cc: _m0_closed_form(ctx, a, cc), c)


def sextic_weight_moments(w: WeightSpec, count: int) -> MomentTable:
    """Generate the even power moments of the sextic weight.

    m(0) and m(1) come from quadrature, and the rest from the recursion
    m(ρ+2) = s(2ρ+1)/(4√g)·m(ρ) − b/(2g)·m(ρ+1), obtained by integrating
    d/dx[x^{2ρ+1}·weight] over the line.

    Parameters
    ----------
    w
        Sextic weight.
    count
        Number of moments, at least 2.

    Returns
    -------
    MomentTable
        Moments m(ρ) = ∫ x^{2ρ} weight dx, ρ < count.

    Raises
    ------
    SeedFailureError
        Raised if quadrature for the seeds does not converge.
    """
    if w.family != WeightFamily.sextic_exp:
        raise ValueError("sextic_weight_moments needs a SexticExp weight")
    if count < 2:
        raise ValueError("At least two moments are needed")
    ctx = w.precision.ctx
    m0, m1 = _seed_moments(w)
    values = [m0, m1]
    sqrt_g = ctx.sqrt(w.g)
    for rho in range(count - 2):
        values.append(
            w.s_scale * (2 * rho + 1) / (4 * sqrt_g) * values[rho]
            - w.b / (2 * w.g) * values[rho + 1]
        )
    return MomentTable(tuple(values), replace(w, sigma=0))


def bd_weight_moments(w: WeightSpec, count: int) -> MomentTable:
    """Generate the moments of a Bender–Dunne half-line weight.

    m(ρ) = ¼·s^{(2ρ+2γ+1)/4}·Γ((2ρ+2γ+1)/4). For the Bessis weight
    (s = 2, γ = 2s_BD − 1/2) this is ¼·2^{ρ/2+s_BD}·Γ(ρ/2+s_BD).
    """
    if w.family != WeightFamily.bd_exp:
        raise ValueError("bd_weight_moments needs a BDExp weight")
    ctx = w.precision.ctx
    values = []
    for rho in range(count):
        exponent = (2 * rho + 2 * w.gamma + 1) / 4
        values.append(ctx.power(w.s_scale, exponent) * ctx.gamma(exponent) / 4)
    return MomentTable(tuple(values), replace(w, sigma=0))


def parity_weight_moments(
    w: WeightSpec | MomentTable, sigma: int, count: int
) -> MomentTable:
    """Moments of the parity sub-weight, m_σ(ρ) = m(ρ + σ).

    Parameters
    ----------
    w
        Weight to generate a base table for, or an existing base table.
    sigma
        Parity shift, 0 or 1.
    count
        Number of shifted moments.

    Raises
    ------
    LengthError
        Raised if a supplied base table has fewer than ``count + sigma``
        entries.
    """
    if sigma not in (0, 1):
        raise ValueError(f"Parity shift must be 0 or 1, not {sigma}")
    if isinstance(w, MomentTable):
        base = w
        base.require(count + sigma)
    elif w.family == WeightFamily.sextic_exp:
        base = sextic_weight_moments(w, count + sigma)
    else:
        base = bd_weight_moments(w, count + sigma)
    values = base.values[sigma : sigma + count]
    return MomentTable(values, replace(base.weight, sigma=sigma))


def full_line_moments(table: MomentTable) -> MomentTable:
    """Expand ξ-moments of a symmetric weight into x-moments.

    The x-moment of order 2ρ is m(ρ) and every odd x-moment vanishes.
    """
    if table.weight.sigma != 0 or table.support != Support.half_line:
        raise ValueError("Expected an unshifted ξ-moment table")
    zero = table.precision.mpf(0)
    values: list[HPReal] = []
    for value in table.values:
        values.extend((value, zero))
    return MomentTable(tuple(values[:-1]), table.weight, Support.whole_line)


def hankel_hadamard(table: MomentTable, order: int, shift: int = 0) -> HPReal:
    """Hankel–Hadamard determinant Δ_{shift,order}.

    The determinant of the (order+1)×(order+1) matrix with entries
    m(i + k + shift).
    """
    table.require(2 * order + shift + 1)
    ctx = table.precision.ctx
    matrix = ctx.matrix(
        [
            [table[i + k + shift] for k in range(order + 1)]
            for i in range(order + 1)
        ]
    )
    return ctx.det(matrix)


def hankel_hadamard_profile(
    table: MomentTable,
) -> list[tuple[int, HPReal, HPReal | None]]:
    """Compute Δ_{0,j} and Δ_{1,j} for every order the table supports.

    Δ_{1,j} is only meaningful for half-line tables (weights supported on
    ξ ≥ 0) and is reported as `None` for whole-line tables.
    """
    result = []
    order = 0
    while 2 * order + 1 <= len(table):
        delta0 = hankel_hadamard(table, order)
        delta1 = None
        if (
            table.support == Support.half_line
            and 2 * order + 2 <= len(table)
        ):
            delta1 = hankel_hadamard(table, order, 1)
        result.append((order, delta0, delta1))
        order += 1
    return result
