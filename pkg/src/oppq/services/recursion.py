"""Moment equations of the sextic and Bender–Dunne potentials.

Every representation is a linear recursion that determines moment t from
lower moments with energy-dependent coefficients of degree at most one:

    lead(t)·y(t) = Σ_k coef_k(E)·y(k),   k < t.

Rows that the recursion cannot determine are the missing moments. The
three-term representations (PhiNu and BD_Bessis) additionally expose their
coefficient closures C₁, C₀, C₋₁, indexed by the moment they multiply:

    C₁(k+1)·y(k+1) = C₀(k)·y(k) + C₋₁(k−1)·y(k−1).
"""

from __future__ import annotations

from abc import ABCMeta, abstractmethod
from typing import ClassVar

from ..exceptions import FamilyMismatchError, NotQESTypeError
from ..models.potential import Family, Representation
from .polynomial import EnergyPolynomial
from .potential import PotentialSpec, QESType, is_qes_potential
from .precision import HPReal

__all__ = [
    "BDARecursion",
    "BDBessisRecursion",
    "BDTildeRecursion",
    "MomentRecursion",
    "PhiNuRecursion",
    "PsiMuRecursion",
    "PsiURecursion",
    "ThreeTermRecursion",
    "build_recursion",
]


class MomentRecursion(metaclass=ABCMeta):
    """Base class for moment equations.

    Parameters
    ----------
    spec
        Potential whose discrete states the moments describe.

    Attributes
    ----------
    spec
        Potential whose discrete states the moments describe.
    columns
        Indices of the missing moments.
    kink
        Row at which a QES-type three-term recursion restarts, if any.
    zero_prefix
        Whether every moment below the first column vanishes.
    """

    representation: ClassVar[Representation]
    missing_order: ClassVar[int]
    """Missing-moment order m_s of the unsegmented recursion."""

    def __init__(self, spec: PotentialSpec) -> None:
        if spec.family != self.representation.family:
            raise FamilyMismatchError(
                self.representation.value, spec.family.value
            )
        self.spec = spec
        self.precision = spec.precision
        self.columns: tuple[int, ...] = tuple(range(self.missing_order + 1))
        self.kink: int | None = None
        self.zero_prefix = False

    @property
    def effective_order(self) -> int:
        """Missing-moment order of this (possibly segmented) recursion."""
        return len(self.columns) - 1

    @abstractmethod
    def leading(self, t: int) -> HPReal:
        """Coefficient multiplying the moment determined by row ``t``."""

    @abstractmethod
    def terms(self, t: int) -> list[tuple[int, EnergyPolynomial]]:
        """Right-hand side of row ``t`` as (moment index, coefficient)."""

    def _poly(self, intercept: HPReal, slope: HPReal = 0) -> EnergyPolynomial:
        return EnergyPolynomial.linear(intercept, slope, self.precision)

    def _snap(self, value: HPReal, scale: HPReal) -> HPReal:
        """Round a leading coefficient to exact zero if it vanishes."""
        if self.precision.is_negligible(value, scale):
            return self.precision.mpf(0)
        return value


class PsiMuRecursion(MomentRecursion):
    """Unified x-moments of Ψ, both parities together (m_s = 5).

    g μ(p+6) = −b μ(p+4) − m μ(p+2) + E μ(p) + p(p−1) μ(p−2).
    """

    representation = Representation.psi_mu
    missing_order = 5

    def leading(self, t: int) -> HPReal:
        return self.spec.g

    def terms(self, t: int) -> list[tuple[int, EnergyPolynomial]]:
        spec = self.spec
        p = t - 6
        return [
            (t - 2, self._poly(-spec.b)),
            (t - 4, self._poly(-spec.m)),
            (t - 6, self._poly(0, 1)),
            (t - 8, self._poly(p * (p - 1))),
        ]


class PsiURecursion(MomentRecursion):
    """Parity-resolved ξ-moments u_σ(ρ) = μ(2ρ + σ) of Ψ (m_s = 2).

    g u(ρ+3) = −b u(ρ+2) − m u(ρ+1) + E u(ρ) + 2ρ(2ρ+2σ−1) u(ρ−1).
    """

    representation = Representation.psi_u
    missing_order = 2

    def leading(self, t: int) -> HPReal:
        return self.spec.g

    def terms(self, t: int) -> list[tuple[int, EnergyPolynomial]]:
        spec = self.spec
        rho = t - 3
        return [
            (t - 1, self._poly(-spec.b)),
            (t - 2, self._poly(-spec.m)),
            (t - 3, self._poly(0, 1)),
            (t - 4, self._poly(2 * rho * (2 * rho + 2 * spec.sigma - 1))),
        ]


class BDARecursion(MomentRecursion):
    """Bender–Dunne moments of Ψ relative to x^γ (m_s = 3).

    u(ρ+4) = −m u(ρ+2) + E u(ρ+1) + 2(ρ+1−γ)(2ρ+1) u(ρ), with
    u(ρ) = ∫₀^∞ x^{2ρ−γ} Ψ dx.
    """

    representation = Representation.bd_a
    missing_order = 3

    def leading(self, t: int) -> HPReal:
        return self.precision.mpf(1)

    def terms(self, t: int) -> list[tuple[int, EnergyPolynomial]]:
        spec = self.spec
        rho = t - 4
        return [
            (t - 2, self._poly(-spec.m)),
            (t - 3, self._poly(0, 1)),
            (t - 4, self._poly(2 * (rho + 1 - spec.gamma) * (2 * rho + 1))),
        ]


class BDTildeRecursion(MomentRecursion):
    """Bender–Dunne moments of Ψ·exp(−x⁴/4) relative to x^γ (m_s = 1).

    (4ρ − 2γ + m + 7) u(ρ+2) = E u(ρ+1) + 2(2ρ+1)(ρ+1−γ) u(ρ).
    """

    representation = Representation.bd_tilde
    missing_order = 1

    def leading(self, t: int) -> HPReal:
        spec = self.spec
        rho = t - 2
        value = 4 * rho - 2 * spec.gamma + spec.m + 7
        return self._snap(value, abs(spec.m) + 4 * abs(rho) + 7)

    def terms(self, t: int) -> list[tuple[int, EnergyPolynomial]]:
        spec = self.spec
        rho = t - 2
        return [
            (t - 1, self._poly(0, 1)),
            (t - 2, self._poly(2 * (2 * rho + 1) * (rho + 1 - spec.gamma))),
        ]


class ThreeTermRecursion(MomentRecursion):
    """Three-term recursion with m_s = 0 unless segmented by a QES kink.

    For QES-type parameters C₁ vanishes at exactly one index n* + 1, where
    the recursion restarts with ν(n* + 1) as a second missing moment.
    """

    missing_order = 0

    def __init__(self, spec: PotentialSpec) -> None:
        super().__init__(spec)
        self.qes = self._qes_type()
        if self.qes is not None:
            self.kink = self.qes.n_star + 1
            self.columns = (0, self.kink)

    def _qes_type(self) -> QESType | None:
        return is_qes_potential(self.spec)

    @abstractmethod
    def c1(self, k: int) -> HPReal:
        """Coefficient C₁(k) of ν(k) on the left-hand side."""

    @abstractmethod
    def c0(self, k: int) -> EnergyPolynomial:
        """Coefficient C₀(k) of ν(k) on the right-hand side."""

    @abstractmethod
    def cm1(self, k: int) -> HPReal:
        """Coefficient C₋₁(k) of ν(k) two rows below the row it feeds."""

    def leading(self, t: int) -> HPReal:
        return self.c1(t)

    def terms(self, t: int) -> list[tuple[int, EnergyPolynomial]]:
        result = [(t - 1, self.c0(t - 1))]
        if t >= 2:
            result.append((t - 2, self._poly(self.cm1(t - 2))))
        return result

    def with_vanishing_prefix(self) -> ThreeTermRecursion:
        """Return the recursion for non-QES states of the QES sector.

        Those states have ν(ρ) = 0 for ρ ≤ n*, leaving ν(n* + 1) as the only
        missing moment.

        Raises
        ------
        NotQESTypeError
            Raised if there is no kink.
        """
        if self.kink is None:
            raise NotQESTypeError("no kink in the three-term recursion")
        clone = type(self)(self.spec)
        clone.columns = (self.kink,)
        clone.zero_prefix = True
        return clone


class PhiNuRecursion(ThreeTermRecursion):
    """Parity-resolved ξ-moments of Φ = 𝒜Ψ for the sextic potential.

    C₁(k) = m − b²/(4g) + √g(4k − 1 + 2σ), C₀(k) = E − (b/√g)(2k + ½ + σ),
    C₋₁(k) = 2(k+1)(2k + 1 + 2σ).
    """

    representation = Representation.phi_nu

    def _qes_type(self) -> QESType | None:
        qes = is_qes_potential(self.spec)
        if qes is None or qes.sigma_star != self.spec.sigma:
            return None
        return qes

    def c1(self, k: int) -> HPReal:
        spec = self.spec
        shift = spec.m - spec.b**2 / (4 * spec.g)
        value = shift + spec.sqrt_g * (4 * k - 1 + 2 * spec.sigma)
        return self._snap(value, abs(shift) + spec.sqrt_g * (4 * k + 3))

    def c0(self, k: int) -> EnergyPolynomial:
        spec = self.spec
        half = self.precision.mpf(1) / 2
        offset = spec.b / spec.sqrt_g * (2 * k + half + spec.sigma)
        return self._poly(-offset, 1)

    def cm1(self, k: int) -> HPReal:
        sigma = self.spec.sigma
        return self.precision.mpf(2 * (k + 1) * (2 * k + 1 + 2 * sigma))


class BDBessisRecursion(ThreeTermRecursion):
    """Bender–Dunne moments of the Bessis function x^γ 𝒜 Ψ.

    (4ρ + 2γ + m + 3) ν(ρ+1) = E ν(ρ) + ρ(4ρ − 2 + 4γ) ν(ρ−1), so
    C₁(k) = 4k + 2γ + m − 1, C₀(k) = E, C₋₁(k) = (k+1)(4k + 2 + 4γ).
    """

    representation = Representation.bd_bessis

    def c1(self, k: int) -> HPReal:
        spec = self.spec
        value = 4 * k + 2 * spec.gamma + spec.m - 1
        return self._snap(value, abs(spec.m) + 4 * abs(k) + 1)

    def c0(self, k: int) -> EnergyPolynomial:
        return self._poly(0, 1)

    def cm1(self, k: int) -> HPReal:
        return (k + 1) * (4 * k + 2 + 4 * self.spec.gamma)


_RECURSIONS: dict[Representation, type[MomentRecursion]] = {
    Representation.psi_mu: PsiMuRecursion,
    Representation.psi_u: PsiURecursion,
    Representation.phi_nu: PhiNuRecursion,
    Representation.bd_a: BDARecursion,
    Representation.bd_tilde: BDTildeRecursion,
    Representation.bd_bessis: BDBessisRecursion,
}


def build_recursion(
    spec: PotentialSpec, representation: Representation
) -> MomentRecursion:
    """Create the moment equation of a potential in a representation.

    Raises
    ------
    FamilyMismatchError
        Raised if the representation does not belong to the family.
    """
    if representation.family != spec.family:
        raise FamilyMismatchError(representation.value, spec.family.value)
    if spec.family == Family.bender_dunne and spec.gamma is None:
        raise ValueError("Bender–Dunne potential without gamma")
    return _RECURSIONS[representation](spec)
