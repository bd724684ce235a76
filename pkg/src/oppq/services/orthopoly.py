"""Monic and orthonormal polynomials of a weight from its moments."""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..exceptions import PositivityBreakError, SingularHankelError
from .polynomial import EnergyPolynomial
from .precision import HPReal
from .weights import MomentTable

__all__ = [
    "OrthoBasis",
    "build_basis",
    "build_monic",
    "hankel_polys",
    "normalize",
    "orthonormality_residual",
]


@dataclass(frozen=True)
class OrthoBasis:
    """Monic and orthonormal polynomials of a weight up to degree J.

    Coefficient tuples are in ascending powers of the polynomial variable
    (ξ for half-line tables, x for whole-line tables).

    Attributes
    ----------
    moments
        Moment table the basis was built from.
    monic
        Coefficients of the monic polynomials P̃^{(j)}, j = 0..J.
    alpha_t
        ``alpha_t[j]`` is α̃_{j+1}, the shift used to build P̃^{(j+1)}.
    gamma_t
        ``gamma_t[j]`` is γ̃_j for j ≥ 1; ``gamma_t[0]`` is zero.
    inner
        ⟨P̃_j|P̃_j⟩ for j = 0..J.
    norms
        Normalizations n_j = ⟨P̃_j|P̃_j⟩^{−1/2}, empty until `normalize`.
    xi
        Orthonormal coefficients Ξ_i^{(j)}, empty until `normalize`.
    """

    moments: MomentTable
    monic: tuple[tuple[HPReal, ...], ...]
    alpha_t: tuple[HPReal, ...]
    gamma_t: tuple[HPReal, ...]
    inner: tuple[HPReal, ...]
    norms: tuple[HPReal, ...] = ()
    xi: tuple[tuple[HPReal, ...], ...] = ()

    @property
    def degree(self) -> int:
        """Highest polynomial degree J."""
        return len(self.monic) - 1

    @property
    def is_normalized(self) -> bool:
        """Whether the orthonormal coefficients are available."""
        return bool(self.xi)

    def alpha(self, j: int) -> HPReal:
        """Return α̃_j for j ≥ 1."""
        return self.alpha_t[j - 1]

    def gamma(self, j: int) -> HPReal:
        """Return γ̃_j for j ≥ 1."""
        return self.gamma_t[j]

    def monic_polynomial(self, j: int) -> EnergyPolynomial:
        """Return P̃^{(j)} as a polynomial object."""
        return EnergyPolynomial(self.monic[j], self.moments.precision)

    def orthonormal_polynomial(self, j: int) -> EnergyPolynomial:
        """Return 𝒫^{(j)} as a polynomial object."""
        return EnergyPolynomial(self.xi[j], self.moments.precision)


def build_monic(m: MomentTable, J: int) -> OrthoBasis:
    """Generate monic orthogonal polynomials by the three-term recurrence.

    P̃^{(j+1)} = (x − α̃_{j+1})P̃^{(j)} − γ̃_j P̃^{(j−1)}, with
    α̃_{j+1} = ⟨xP̃_j|P̃_j⟩/⟨x^j|P̃_j⟩ and
    γ̃_j = ⟨x^j|P̃_j⟩/⟨x^{j−1}|P̃_{j−1}⟩.
    Inner products are moment contractions, and ⟨xP̃_j|P̃_j⟩ is evaluated as
    ⟨x^{j+1}|P̃_j⟩ + c_{j−1}⟨x^j|P̃_j⟩ with c_{j−1} the subleading monic
    coefficient.

    Parameters
    ----------
    m
        Moments of a positive weight, at least 2J + 2 of them.
    J
        Highest degree to generate.

    Returns
    -------
    OrthoBasis
        Basis with the monic part filled in.

    Raises
    ------
    LengthError
        Raised if the table is too short.
    PositivityBreakError
        Raised if some ⟨P̃_j|P̃_j⟩ is not positive or has lost all
        significant digits to cancellation.
    """
    m.require(2 * J + 2)
    precision = m.precision
    ctx = precision.ctx
    zero = ctx.mpf(0)
    # Digits left after cancellation must cover the requested precision.
    floor = ctx.power(10, -(precision.dps - precision.digits // 2))

    monic: list[list[HPReal]] = [[ctx.mpf(1)]]
    alpha_t: list[HPReal] = []
    gamma_t: list[HPReal] = [zero]
    inner: list[HPReal] = []
    for j in range(J + 1):
        c = monic[j]
        terms = [c[i] * m[i + j] for i in range(j + 1)]
        h = ctx.fsum(terms)
        magnitude = ctx.fsum(abs(t) for t in terms)
        if h <= 0:
            raise PositivityBreakError(j, "moment contraction is not positive")
        if h <= floor * magnitude:
            raise PositivityBreakError(j, "working precision exhausted")
        inner.append(h)
        if j > 0:
            gamma_t.append(h / inner[j - 1])
        shifted = ctx.fsum(c[i] * m[i + j + 1] for i in range(j + 1))
        subleading = c[j - 1] if j > 0 else zero
        alpha_t.append(shifted / h + subleading)
        if j == J:
            break
        following = [zero, *c]
        for i in range(j + 1):
            following[i] -= alpha_t[j] * c[i]
        if j > 0:
            for i, value in enumerate(monic[j - 1]):
                following[i] -= gamma_t[j] * value
        monic.append(following)

    return OrthoBasis(
        moments=m,
        monic=tuple(tuple(p) for p in monic),
        alpha_t=tuple(alpha_t),
        gamma_t=tuple(gamma_t),
        inner=tuple(inner),
    )


def normalize(basis: OrthoBasis) -> OrthoBasis:
    """Fill in the orthonormal coefficients Ξ_i^{(j)} = n_j·c_i^{(j)}.

    The normalization n_j satisfies n_j²⟨P̃_j|P̃_j⟩ = 1.
    """
    ctx = basis.moments.precision.ctx
    norms = tuple(1 / ctx.sqrt(h) for h in basis.inner)
    xi = tuple(
        tuple(n * c for c in coefficients)
        for n, coefficients in zip(norms, basis.monic, strict=True)
    )
    return replace(basis, norms=norms, xi=xi)


def build_basis(m: MomentTable, J: int) -> OrthoBasis:
    """Build the monic recurrence and normalize it in one step."""
    return normalize(build_monic(m, J))


def orthonormality_residual(basis: OrthoBasis) -> HPReal:
    """Largest deviation of the moment-contracted Gram matrix from identity.

    Evaluates Σ_{i1,i2} Ξ_{i1}^{(j1)} Ξ_{i2}^{(j2)} m(i1+i2) for every pair
    of basis polynomials.
    """
    if not basis.is_normalized:
        raise ValueError("Basis has not been normalized")
    m = basis.moments
    ctx = m.precision.ctx
    worst = ctx.mpf(0)
    # Contract one side first: w[j][k] = Σ_i Ξ_i^{(j)} m(i + k).
    contracted = [
        [
            ctx.fsum(x * m[i + k] for i, x in enumerate(row))
            for k in range(basis.degree + 1)
        ]
        for row in basis.xi
    ]
    for j1, row in enumerate(contracted):
        for j2 in range(j1 + 1):
            value = ctx.fsum(x * row[k] for k, x in enumerate(basis.xi[j2]))
            target = 1 if j1 == j2 else 0
            worst = max(worst, abs(value - target))
    return worst


def hankel_polys(m: MomentTable, j: int) -> EnergyPolynomial:
    """Monic orthogonal polynomial of degree j from a bordered Hankel form.

    P̃^{(j)}(x) = det B(x)/Δ_{0,j−1}, where B stacks the rows
    (m(a), …, m(a+j)) for a < j over the row (1, x, …, x^j). Expanding along
    the last row gives each coefficient as a signed minor.

    Raises
    ------
    LengthError
        Raised if fewer than 2j moments are available.
    SingularHankelError
        Raised if Δ_{0,j−1} vanishes.
    """
    precision = m.precision
    if j == 0:
        return EnergyPolynomial.constant(1, precision)
    m.require(2 * j)
    ctx = precision.ctx
    hankel = ctx.matrix([[m[a + b] for b in range(j)] for a in range(j)])
    delta = ctx.det(hankel)
    if delta == 0:
        raise SingularHankelError(j - 1)
    coefficients = []
    for k in range(j + 1):
        minor = ctx.matrix(
            [[m[a + b] for b in range(j + 1) if b != k] for a in range(j)]
        )
        sign = -1 if (j + k) % 2 else 1
        coefficients.append(sign * ctx.det(minor) / delta)
    return EnergyPolynomial(coefficients, precision)
