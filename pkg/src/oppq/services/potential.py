"""Sextic and Bender–Dunne potentials and their QES classification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..models.potential import Family
from .precision import HPReal, Precision

__all__ = [
    "PotentialSpec",
    "QESType",
    "is_qes_potential",
    "jwkb_degree",
]


@dataclass(frozen=True)
class QESType:
    """Quasi-exact solvability data of a potential.

    Attributes
    ----------
    n_star
        Degree in ξ = x² of the polynomial factor of the QES states; the
        quantizing polynomial has degree ``n_star + 1``.
    sigma_star
        Parity sector holding the QES states (always 0 for Bender–Dunne).
    """

    n_star: int
    sigma_star: int


@dataclass(frozen=True)
class PotentialSpec:
    """Parameters of a sextic-family potential.

    The sextic family is V = g x⁶ + b x⁴ + m x². The Bender–Dunne family is
    V = x⁶ + m x² + b/x² on the half line, with indicial exponent γ solving
    γ² − γ − b = 0.

    Use the `sextic` and `bender_dunne` constructors rather than building
    instances directly.

    Attributes
    ----------
    family
        Potential family.
    g
        Sextic coupling (1 for Bender–Dunne).
    b
        Quartic coefficient (sextic) or centrifugal coefficient (BD).
    m
        Quadratic coefficient.
    sigma
        Parity sector for the sextic family, 0 for BD.
    precision
        Session the parameters belong to.
    gamma
        Indicial exponent (BD only).
    s
        Bender–Dunne parameter with γ = 2s − 1/2 (BD only).
    J
        Bender–Dunne parameter, the number of QES states (BD only, may be
        `None` when the given m is not of the QES form).
    """

    family: Family
    g: HPReal
    b: HPReal
    m: HPReal
    sigma: int
    precision: Precision
    gamma: HPReal | None = None
    s: HPReal | None = None
    J: int | None = None

    @classmethod
    def sextic(
        cls, g: Any, b: Any, m: Any, sigma: int, precision: Precision
    ) -> PotentialSpec:
        """Create a sextic anharmonic potential in one parity sector.

        Parameters
        ----------
        g
            Sextic coupling, positive.
        b
            Quartic coefficient.
        m
            Quadratic coefficient.
        sigma
            Parity sector, 0 (even) or 1 (odd).
        precision
            Working precision.
        """
        g = precision.parse(g)
        if g <= 0:
            raise ValueError("Sextic coupling g must be positive")
        if sigma not in (0, 1):
            raise ValueError(f"Parity sector must be 0 or 1, not {sigma}")
        return cls(
            family=Family.sextic,
            g=g,
            b=precision.parse(b),
            m=precision.parse(m),
            sigma=sigma,
            precision=precision,
        )

    @classmethod
    def bender_dunne(
        cls,
        precision: Precision,
        *,
        s: Any | None = None,
        J: int | None = None,
        gamma: Any | None = None,
        m: Any | None = None,
    ) -> PotentialSpec:
        """Create a Bender–Dunne potential.

        Either (s, J) or (gamma, m) must be given. When both pairs are given
        they must agree with γ = 2s − 1/2 and m = −(4s + 4J − 2).

        Raises
        ------
        ValueError
            Raised if the parameters are incomplete or inconsistent, or if
            γ ≤ −1/2.
        """
        ctx = precision.ctx
        s_value = precision.parse(s) if s is not None else None
        gamma_value = precision.parse(gamma) if gamma is not None else None
        m_value = precision.parse(m) if m is not None else None
        if s_value is not None:
            derived_gamma = 2 * s_value - ctx.mpf(1) / 2
            if gamma_value is not None and not precision.is_negligible(
                gamma_value - derived_gamma, derived_gamma
            ):
                raise ValueError("gamma is inconsistent with s")
            gamma_value = derived_gamma
        if gamma_value is None:
            raise ValueError("Bender–Dunne potential needs s or gamma")
        if s_value is None:
            s_value = (gamma_value + ctx.mpf(1) / 2) / 2
        if J is not None:
            derived_m = -(4 * s_value + 4 * J - 2)
            if m_value is not None and not precision.is_negligible(
                m_value - derived_m, derived_m
            ):
                raise ValueError("m is inconsistent with s and J")
            m_value = derived_m
        if m_value is None:
            raise ValueError("Bender–Dunne potential needs J or m")
        if gamma_value <= -ctx.mpf(1) / 2:
            raise ValueError("gamma must exceed -1/2 for normalizability")
        if J is None:
            count = -(m_value + 4 * s_value - 2) / 4
            candidate = precision.nearest_integer(count)
            if candidate is not None and candidate >= 1:
                J = candidate
        return cls(
            family=Family.bender_dunne,
            g=ctx.mpf(1),
            b=gamma_value * (gamma_value - 1),
            m=m_value,
            sigma=0,
            precision=precision,
            gamma=gamma_value,
            s=s_value,
            J=J,
        )

    @property
    def sqrt_g(self) -> HPReal:
        """Square root of the sextic coupling."""
        return self.precision.ctx.sqrt(self.g)

    def with_sigma(self, sigma: int) -> PotentialSpec:
        """Return the same sextic potential in another parity sector."""
        return PotentialSpec.sextic(
            self.g, self.b, self.m, sigma, self.precision
        )

    def describe(self) -> dict[str, str]:
        """Summarize the parameters as strings, for logging and caching."""
        fmt = self.precision.format
        result = {
            "family": self.family.value,
            "g": fmt(self.g, 20),
            "b": fmt(self.b, 20),
            "m": fmt(self.m, 20),
            "sigma": str(self.sigma),
        }
        if self.gamma is not None:
            result["gamma"] = fmt(self.gamma, 20)
        return result


def is_qes_potential(spec: PotentialSpec) -> QESType | None:
    """Classify a potential as quasi-exactly solvable or not.

    Sextic potentials are QES when m − b²/(4g) + √g(4n + 3 + 2σ) = 0 for a
    nonnegative integer n and σ ∈ {0, 1}. Bender–Dunne potentials are QES
    when 4n + 2γ + m + 3 = 0 for a nonnegative integer n.

    Parameters
    ----------
    spec
        Potential to classify.

    Returns
    -------
    QESType or None
        QES data, or `None` if the potential is not QES-type.
    """
    precision = spec.precision
    if spec.family == Family.bender_dunne:
        n_star = precision.nearest_integer(-(2 * spec.gamma + spec.m + 3) / 4)
        if n_star is None or n_star < 0:
            return None
        return QESType(n_star=n_star, sigma_star=0)
    k = (spec.b**2 / (4 * spec.g) - spec.m) / spec.sqrt_g - 3
    integer = precision.nearest_integer(k)
    if integer is None or integer < 0 or integer % 2:
        return None
    sigma_star = (integer // 2) % 2
    n_star = (integer - 2 * sigma_star) // 4
    return QESType(n_star=n_star, sigma_star=sigma_star)


def jwkb_degree(spec: PotentialSpec) -> HPReal:
    """Leading-order JWKB estimate of the polynomial degree of Ψ/𝒜.

    For the sextic family, d = (b²/(8g) − m/2)/√g − 3/2, which is the
    integer 2n* + σ* exactly when the potential is QES-type.
    """
    if spec.family != Family.sextic:
        raise ValueError("JWKB degree is defined for the sextic family")
    half = spec.precision.mpf(1) / 2
    return (spec.b**2 / (8 * spec.g) - spec.m * half) / spec.sqrt_g - 3 * half
