"""Bender–Dunne energy polynomials and the Hill power series.

For a QES-type potential the moments ν(ρ) of the Φ (sextic) or Bessis (BD)
configuration are polynomials Λ^{(ρ)}(E) of degree ρ up to ρ = n*, and the
quantizing polynomial of degree n* + 1 has the QES energies as its roots.
The Hill series is built on a separate code path from the configuration
space recursion, so the two can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..exceptions import NotQESTypeError
from ..models.potential import Family
from .polynomial import EnergyPolynomial
from .potential import PotentialSpec, QESType, is_qes_potential
from .precision import HPReal
from .recursion import BDBessisRecursion, PhiNuRecursion, ThreeTermRecursion

__all__ = [
    "BDPolySet",
    "build_lambda",
    "build_quantizer",
    "hill_series",
    "moment_quantizer",
    "monic_transform",
    "qes_recursion",
]


@dataclass(frozen=True)
class BDPolySet:
    """Bender–Dunne polynomials of a potential.

    Attributes
    ----------
    spec
        Potential in its QES parity sector.
    qes
        QES data, or `None` if the set was built with a row cap.
    lambda_
        Λ^{(ρ)}(E) with Λ^{(0)} = 1.
    quantizer
        Quantizing polynomial of degree n* + 1, `None` without QES data.
    monic
        Monic polynomials P̃^{(ρ)} = f_ρ Λ^{(ρ)}, empty until
        `monic_transform`. For QES potentials the list ends with the monic
        quantizer P̃^{(n*+1)}.
    alpha_t
        ``alpha_t[ρ]`` is α̃_{ρ+1}.
    gamma_t
        ``gamma_t[ρ]`` is γ̃_ρ, with ``gamma_t[0]`` zero.
    scale
        Scalings f_ρ = C₁(1)·…·C₁(ρ).
    """

    spec: PotentialSpec
    qes: QESType | None
    lambda_: tuple[EnergyPolynomial, ...]
    quantizer: EnergyPolynomial | None = None
    monic: tuple[EnergyPolynomial, ...] = ()
    alpha_t: tuple[HPReal, ...] = ()
    gamma_t: tuple[HPReal, ...] = ()
    scale: tuple[HPReal, ...] = ()


def qes_recursion(spec: PotentialSpec) -> ThreeTermRecursion:
    """Three-term configuration recursion in the QES parity sector.

    For sextic potentials the parity sector is switched to σ* when the
    potential is QES-type.
    """
    if spec.family == Family.bender_dunne:
        return BDBessisRecursion(spec)
    qes = is_qes_potential(spec)
    if qes is not None and qes.sigma_star != spec.sigma:
        spec = spec.with_sigma(qes.sigma_star)
    return PhiNuRecursion(spec)


def build_lambda(spec: PotentialSpec, rows: int | None = None) -> BDPolySet:
    """Generate the energy polynomials Λ^{(ρ)}(E).

    C₁(ρ+1)Λ^{(ρ+1)} = C₀(ρ)Λ^{(ρ)} + C₋₁(ρ−1)Λ^{(ρ−1)}, starting from
    Λ^{(0)} = 1.

    Parameters
    ----------
    spec
        Potential.
    rows
        Number of polynomials to generate. Required for non-QES potentials,
        for which the recursion never terminates. For QES potentials it
        defaults to n* + 1 and may not exceed it.

    Raises
    ------
    NotQESTypeError
        Raised if the potential is not QES-type and no row cap is given.
    """
    rec = qes_recursion(spec)
    qes = rec.qes
    if qes is None:
        if rows is None:
            raise NotQESTypeError(
                "the Λ recursion has no natural end; give a row cap"
            )
        limit = rows
    else:
        limit = qes.n_star + 1 if rows is None else min(rows, qes.n_star + 1)
    precision = rec.precision

    lambda_ = [EnergyPolynomial.constant(1, precision)]
    for rho in range(limit - 1):
        following = rec.c0(rho) * lambda_[rho]
        if rho >= 1:
            following = following + lambda_[rho - 1].scale(rec.cm1(rho - 1))
        lambda_.append(following.scale(1 / rec.c1(rho + 1)))

    quantizer = None
    if qes is not None and len(lambda_) == qes.n_star + 1:
        if spec.family == Family.bender_dunne:
            quantizer = hill_series(rec.spec, qes.n_star + 1)[-1]
        else:
            quantizer = moment_quantizer(rec, lambda_)
    return BDPolySet(
        spec=rec.spec, qes=qes, lambda_=tuple(lambda_), quantizer=quantizer
    )


def moment_quantizer(
    rec: ThreeTermRecursion, lambda_: list[EnergyPolynomial]
) -> EnergyPolynomial:
    """Quantizing polynomial from the configuration-space recursion.

    P^{(n*+1)}(E) = C₀(n*)Λ^{(n*)} + C₋₁(n*−1)Λ^{(n*−1)}, the right-hand
    side of the row whose leading coefficient vanishes.
    """
    n_star = len(lambda_) - 1
    result = rec.c0(n_star) * lambda_[n_star]
    if n_star >= 1:
        result = result + lambda_[n_star - 1].scale(rec.cm1(n_star - 1))
    return result


def build_quantizer(spec: PotentialSpec) -> EnergyPolynomial:
    """Quantizing polynomial whose roots are the QES energies.

    For the sextic family this is the moment-built P^{(n*+1)}(E). For the
    Bender–Dunne family it is the truncating Hill coefficient c_{n*+1}(E).

    Raises
    ------
    NotQESTypeError
        Raised if the potential is not QES-type.
    """
    polys = build_lambda(spec)
    if polys.quantizer is None:
        raise NotQESTypeError("no quantizing polynomial")
    return polys.quantizer


def monic_transform(polys: BDPolySet) -> BDPolySet:
    """Rescale the Λ polynomials to monic form.

    With f_ρ = C₁(1)·…·C₁(ρ), P̃^{(ρ)} = f_ρΛ^{(ρ)} satisfies
    P̃^{(ρ+1)} = (E − α̃_{ρ+1})P̃^{(ρ)} − γ̃_ρP̃^{(ρ−1)} with
    α̃_{ρ+1} = −C₀(ρ)(0) and γ̃_ρ = −C₋₁(ρ−1)C₁(ρ). For QES-type potentials
    the recurrence is continued one step past Λ^{(n*)}, where γ̃_{n*+1}
    vanishes exactly.
    """
    rec = qes_recursion(polys.spec)
    precision = rec.precision
    zero = precision.mpf(0)
    count = len(polys.lambda_)
    steps = count + 1 if polys.qes is not None else count

    monic = [EnergyPolynomial.constant(1, precision)]
    alpha_t: list[HPReal] = []
    gamma_t: list[HPReal] = [zero]
    scale: list[HPReal] = [precision.mpf(1)]
    energy = EnergyPolynomial.linear(0, 1, precision)
    for rho in range(steps - 1):
        alpha = -rec.c0(rho)(0)
        alpha_t.append(alpha)
        following = (energy - alpha) * monic[rho]
        if rho >= 1:
            gamma = -rec.cm1(rho - 1) * rec.c1(rho)
            gamma_t.append(gamma)
            following = following - monic[rho - 1].scale(gamma)
        monic.append(following)
        scale.append(scale[rho] * rec.c1(rho + 1))
    if polys.qes is not None:
        gamma_t.append(-rec.cm1(count - 1) * rec.c1(count))
    return BDPolySet(
        spec=polys.spec,
        qes=polys.qes,
        lambda_=polys.lambda_,
        quantizer=polys.quantizer,
        monic=tuple(monic),
        alpha_t=tuple(alpha_t),
        gamma_t=tuple(gamma_t),
        scale=tuple(scale[:count]),
    )


def hill_series(spec: PotentialSpec, i_max: int) -> list[EnergyPolynomial]:
    """Coefficients c_i(E) of the Hill power series, i = 0..i_max.

    The sextic series expands Ψ/(x^σ 𝒜) in powers of ξ = x², with

        2(i+1)(2i+1+2σ) c_{i+1} = ((b/√g)(2i+½+σ) − E) c_i
            + (m − b²/(4g) + √g(4i−1+2σ)) c_{i−1}.

    The Bender–Dunne series expands Ψ/(x^γ exp(−x⁴/4)) in powers of ξ, with

        (i+1)(4γ+4i+2) c_{i+1} = −E c_i + (2γ+m+4i−1) c_{i−1}.

    Both start from c₀ = 1 and c_{−1} = 0.
    """
    precision = spec.precision
    if spec.family == Family.sextic:
        qes = is_qes_potential(spec)
        if qes is not None:
            spec = spec.with_sigma(qes.sigma_star)
    energy = EnergyPolynomial.linear(0, 1, precision)
    half = precision.mpf(1) / 2
    series = [EnergyPolynomial.constant(1, precision)]
    previous = EnergyPolynomial.zero(precision)
    for i in range(i_max):
        if spec.family == Family.bender_dunne:
            denominator = (i + 1) * (4 * spec.gamma + 4 * i + 2)
            diagonal = -energy
            lower = 2 * spec.gamma + spec.m + 4 * i - 1
        else:
            sigma = spec.sigma
            denominator = 2 * (i + 1) * (2 * i + 1 + 2 * sigma)
            offset = spec.b / spec.sqrt_g * (2 * i + half + sigma)
            diagonal = offset - energy
            lower = (
                spec.m
                - spec.b**2 / (4 * spec.g)
                + spec.sqrt_g * (4 * i - 1 + 2 * sigma)
            )
        current = series[i]
        following = diagonal * current + previous.scale(lower)
        series.append(following.scale(1 / precision.mpf(denominator)))
        previous = current
    return series
