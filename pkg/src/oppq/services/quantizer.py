"""Orthogonal polynomial projection quantization (OPPQ).

A discrete state is expanded as Ψ = Σ_j Ω_j 𝒫^{(j)} R, with 𝒫^{(j)} the
orthonormal polynomials of a positive reference weight R. Each projection
coefficient is linear in the missing moments,

    Ω_j = Σ_ℓ 𝓜_{j,ℓ}(E)·y(ℓ),   𝓜_{j,ℓ}(E) = Σ_{i≤j} Ξ_i^{(j)} M_E(i, ℓ),

and demanding that Ω_N, …, Ω_{N+m_s} vanish yields the determinant
condition D_N(E) = 0. Its roots converge to the physical energies as N
grows, while QES energies are roots at every order.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Any

from ..constants import MOMENT_MARGIN, QES_MIN_ORDERS
from ..exceptions import (
    EmptyWindowError,
    ExtentError,
    FamilyMismatchError,
    NonFactorizableError,
    NotQESTypeError,
)
from ..models.potential import Family, QuantizationMode, Representation
from ..models.report import RootClass, RootEntry, RootReport
from .orthopoly import OrthoBasis, build_basis
from .polynomial import EnergyPolynomial, polynomial_determinant
from .potential import PotentialSpec
from .precision import HPReal, Precision
from .recursion import MomentRecursion, ThreeTermRecursion, build_recursion
from .roots import real_roots
from .timings import Timings
from .transfer import TransferSystem, build_transfer
from .weights import (
    MomentTable,
    WeightSpec,
    full_line_moments,
    parity_weight_moments,
)

__all__ = [
    "QuantizationProblem",
    "build_determinant",
    "classify_roots",
    "default_mode",
    "determinant_matrix",
    "factor_out_qes",
    "make_problem",
    "missing_moments",
    "omega_row",
    "reconstruct_state",
    "reference_moments",
    "reference_weight",
    "scan_roots",
]

_WEIGHT_SCALES = {
    Representation.psi_mu: 4,
    Representation.psi_u: 4,
    Representation.phi_nu: 2,
    Representation.bd_a: 4,
    Representation.bd_tilde: 2,
    Representation.bd_bessis: 2,
}
"""Scale s of the reference weight, 4 for 𝒜 and 2 for 𝒜²."""


def reference_weight(
    spec: PotentialSpec, representation: Representation
) -> WeightSpec:
    """Positive reference weight paired with a representation.

    Ψ representations use the asymptotic factor 𝒜, the Φ representation
    uses 𝒜², and the Bessis representation uses x^{2γ}𝒜².
    """
    if representation.family != spec.family:
        raise FamilyMismatchError(representation.value, spec.family.value)
    scale = _WEIGHT_SCALES[representation]
    precision = spec.precision
    if spec.family == Family.sextic:
        return WeightSpec.sextic(spec.g, spec.b, scale, precision)
    gamma = spec.gamma if representation == Representation.bd_bessis else 0
    return WeightSpec.bender_dunne(gamma, scale, precision)


def reference_moments(
    spec: PotentialSpec, representation: Representation, count: int
) -> MomentTable:
    """Moment table of the reference weight of a representation.

    Parity-resolved sextic tables carry the shift σ of the state's parity
    sector. The unified representation uses whole-line x-moments.
    """
    weight = reference_weight(spec, representation)
    if representation == Representation.psi_mu:
        half = parity_weight_moments(weight, 0, count // 2 + 1)
        return full_line_moments(half)
    return parity_weight_moments(weight, spec.sigma, count)


def default_mode(rec: MomentRecursion) -> QuantizationMode:
    """Natural determinant assembly for a recursion."""
    if rec.spec.family == Family.bender_dunne:
        return QuantizationMode.bd_full
    if rec.representation == Representation.phi_nu and rec.kink is not None:
        return QuantizationMode.phi_segmented
    return QuantizationMode.full


class QuantizationProblem:
    """Everything needed to assemble OPPQ determinants.

    Use `make_problem` to create instances.

    Parameters
    ----------
    spec
        Potential being quantized.
    mode
        Determinant assembly.
    basis
        Orthonormal basis of the reference weight.
    transfer
        Transfer polynomials of the moment recursion.
    """

    def __init__(
        self,
        spec: PotentialSpec,
        mode: QuantizationMode,
        basis: OrthoBasis,
        transfer: TransferSystem,
    ) -> None:
        self.spec = spec
        self.mode = mode
        self.basis = basis
        self.transfer = transfer
        self._rows: dict[int, list[EnergyPolynomial]] = {}

    @property
    def precision(self) -> Precision:
        """Working precision of the problem."""
        return self.spec.precision

    @property
    def representation(self) -> Representation:
        """Moment representation."""
        return self.transfer.recursion.representation

    @property
    def size(self) -> int:
        """Dimension of the determinant, the number of missing moments."""
        return len(self.transfer.columns)

    @property
    def min_order(self) -> int:
        """Smallest truncation order with a non-degenerate determinant."""
        rec = self.transfer.recursion
        if rec.zero_prefix:
            return rec.columns[0] + 1
        if rec.kink is not None:
            return rec.kink
        return 0

    @property
    def max_order(self) -> int:
        """Largest truncation order the basis and transfer cover."""
        extent = min(self.basis.degree, self.transfer.rows - 1)
        return extent - self.size + 1

    def omega(self, j: int) -> list[EnergyPolynomial]:
        """Cached `omega_row` for this problem."""
        if j not in self._rows:
            self._rows[j] = omega_row(self.basis, self.transfer, j)
        return self._rows[j]


def make_problem(
    spec: PotentialSpec,
    representation: Representation,
    N_max: int,
    mode: QuantizationMode | None = None,
) -> QuantizationProblem:
    """Build the basis and transfer system for a range of orders.

    Parameters
    ----------
    spec
        Potential, in the parity sector of the states sought.
    representation
        Moment representation.
    N_max
        Largest truncation order that will be requested.
    mode
        Determinant assembly, defaulting to `default_mode`.

    Raises
    ------
    FamilyMismatchError
        Raised if the representation or mode does not fit the family.
    NotQESTypeError
        Raised if a segmented or same-parity mode is requested for a
        recursion without a kink.
    PositivityBreakError
        Raised if the working precision cannot support the basis degree.
    """
    rec = build_recursion(spec, representation)
    if mode is None:
        mode = default_mode(rec)
    match mode:
        case QuantizationMode.phi_segmented:
            if representation != Representation.phi_nu:
                raise FamilyMismatchError(representation.value, mode.value)
            if rec.kink is None:
                raise NotQESTypeError(f"no kink in sector σ={spec.sigma}")
        case QuantizationMode.non_qes_same_parity:
            if not isinstance(rec, ThreeTermRecursion):
                raise FamilyMismatchError(representation.value, mode.value)
            rec = rec.with_vanishing_prefix()
        case QuantizationMode.bd_full:
            if spec.family != Family.bender_dunne:
                raise FamilyMismatchError(mode.value, spec.family.value)
        case QuantizationMode.full:
            pass

    size = len(rec.columns)
    degree = N_max + size - 1
    moments = reference_moments(
        spec, representation, 2 * degree + 2 + MOMENT_MARGIN
    )
    basis = build_basis(moments, degree)
    transfer = build_transfer(rec, degree + 1)
    return QuantizationProblem(spec, mode, basis, transfer)


def omega_row(
    basis: OrthoBasis, transfer: TransferSystem, j: int
) -> list[EnergyPolynomial]:
    """Coefficients of Ω_j in the missing moments.

    Returns 𝓜_{j,ℓ}(E) = Σ_{i≤j} Ξ_i^{(j)} M_E(i, ℓ) for each column ℓ.

    Raises
    ------
    ExtentError
        Raised if j exceeds the basis degree or the transfer rows.
    """
    limit = min(basis.degree, transfer.rows - 1)
    if j < 0 or j > limit:
        raise ExtentError(j, limit)
    precision = basis.moments.precision
    xi = basis.xi[j]
    result = []
    for c in range(len(transfer.columns)):
        total = EnergyPolynomial.zero(precision)
        for i in range(j + 1):
            entry = transfer.entries[i][c]
            if not entry.is_zero:
                total = total + entry.scale(xi[i])
        result.append(total)
    return result


def determinant_matrix(
    problem: QuantizationProblem, N: int
) -> list[list[EnergyPolynomial]]:
    """Rows 𝓜_{j,ℓ} for j = N, …, N + m_s."""
    if N > problem.max_order:
        raise ExtentError(N, problem.max_order)
    return [problem.omega(j) for j in range(N, N + problem.size)]


def build_determinant(
    problem: QuantizationProblem, N: int
) -> EnergyPolynomial:
    """Assemble D_N(E) as an explicit polynomial.

    Coefficients at rounding-noise level relative to the largest are
    dropped from the top.
    """
    matrix = determinant_matrix(problem, N)
    determinant = polynomial_determinant(matrix)
    return determinant.trimmed(problem.precision.epsilon)


def classify_roots(
    roots: dict[int, list[HPReal]], precision: Precision
) -> list[RootEntry]:
    """Classify roots across truncation orders.

    A root is QES-exact if it reappears, within the merge tolerance, at every
    order from its onset through the last one and that run spans at least
    three orders. Other roots are matched to the nearest non-QES root of the
    previous order; a root is Converging when that distance shrinks from one
    order to the next and Spurious otherwise. Roots at the first order have
    nothing to compare with and count as Converging.
    """
    orders = sorted(roots)
    tolerance = precision.merge_tolerance

    def present(value: HPReal, N: int) -> bool:
        scale = max(abs(value), 1)
        return any(abs(r - value) <= tolerance * scale for r in roots[N])

    qes: dict[int, list[bool]] = {}
    for k, N in enumerate(orders):
        flags = []
        for r in roots[N]:
            if not all(present(r, M) for M in orders[k + 1 :]):
                flags.append(False)
                continue
            onset = k
            while onset > 0 and present(r, orders[onset - 1]):
                onset -= 1
            flags.append(len(orders) - onset >= QES_MIN_ORDERS)
        qes[N] = flags

    entries: list[RootEntry] = []
    deltas: dict[int, list[HPReal | None]] = {}
    for k, N in enumerate(orders):
        deltas[N] = []
        previous = []
        if k > 0:
            before = orders[k - 1]
            previous = [
                (r, deltas[before][i])
                for i, r in enumerate(roots[before])
                if not qes[before][i]
            ]
        for level, r in enumerate(roots[N]):
            delta = None
            if qes[N][level]:
                classification = RootClass.qes_exact
            elif not previous:
                classification = RootClass.converging
            else:
                partner, partner_delta = min(
                    previous, key=lambda item: abs(item[0] - r)
                )
                delta = abs(partner - r)
                if partner_delta is None or delta < partner_delta:
                    classification = RootClass.converging
                else:
                    classification = RootClass.spurious
            deltas[N].append(delta)
            shown = None if delta is None else precision.format(delta, 5)
            entries.append(
                RootEntry(
                    N=N,
                    level=level,
                    energy=precision.format(r),
                    classification=classification,
                    delta=shown,
                )
            )
    return entries


def scan_roots(
    problem: QuantizationProblem,
    window: tuple[Any, Any],
    orders: Iterable[int],
    timings: Timings | None = None,
) -> RootReport:
    """Find and classify the roots of D_N(E) over truncation orders.

    Parameters
    ----------
    problem
        Quantization problem covering every requested order.
    window
        Energy interval to search.
    orders
        Truncation orders.
    timings
        If given, determinant assembly and root finding are timed per order.

    Raises
    ------
    EmptyWindowError
        Raised if no order has a root in the window.
    """
    timings = timings or Timings()
    precision = problem.precision
    lo, hi = (precision.parse(x) for x in window)
    found: dict[int, list[HPReal]] = {}
    for N in orders:
        annotations = {"N": str(N)}
        with timings.start("determinant", annotations):
            determinant = build_determinant(problem, N)
        with timings.start("roots", annotations):
            if determinant.is_zero or determinant.degree == 0:
                found[N] = []
            else:
                found[N] = real_roots(determinant, (lo, hi)).distinct()
    if not any(found.values()):
        fmt = precision.format
        raise EmptyWindowError(fmt(lo, 8), fmt(hi, 8))
    return RootReport(
        potential=problem.spec.describe(),
        representation=problem.representation,
        mode=problem.mode,
        digits=precision.digits,
        window=(precision.format(lo, 10), precision.format(hi, 10)),
        entries=classify_roots(found, precision),
    )


def factor_out_qes(
    determinant: EnergyPolynomial, qes_poly: EnergyPolynomial
) -> EnergyPolynomial:
    """Divide the QES polynomial out of an OPPQ determinant.

    Returns
    -------
    EnergyPolynomial
        Quotient, whose roots are the non-QES approximants.

    Raises
    ------
    NonFactorizableError
        Raised if the remainder exceeds 10^(−digits/2) relative to the
        determinant.
    """
    precision = determinant.precision
    quotient, remainder = determinant.divmod(qes_poly.monic())
    tolerance = precision.root_tolerance * determinant.norm()
    if remainder.norm() > tolerance:
        raise NonFactorizableError(
            precision.format(remainder.norm(), 5),
            precision.format(tolerance, 5),
        )
    return quotient


def missing_moments(
    problem: QuantizationProblem, N: int, energy: Any
) -> list[HPReal]:
    """Missing moments of the state at a root of D_N(E).

    The null vector of the determinant matrix is taken from the adjugate
    column of largest norm, and scaled so its largest entry is 1.
    """
    precision = problem.precision
    ctx = precision.ctx
    energy = precision.parse(energy)
    size = problem.size
    if size == 1:
        return [ctx.mpf(1)]
    values = [
        [entry(energy) for entry in row]
        for row in determinant_matrix(problem, N)
    ]

    def cofactor(row: int, column: int) -> HPReal:
        minor = ctx.matrix(
            [
                [v for c, v in enumerate(line) if c != column]
                for r, line in enumerate(values)
                if r != row
            ]
        )
        sign = -1 if (row + column) % 2 else 1
        return sign * ctx.det(minor)

    candidates = [
        [cofactor(row, column) for column in range(size)]
        for row in range(size)
    ]
    best = max(candidates, key=lambda v: max(abs(x) for x in v))
    norm = max(abs(x) for x in best)
    if norm == 0:
        raise ValueError("Determinant matrix has rank below size − 1")
    pivot = max(best, key=abs)
    return [x / pivot for x in best]


def reconstruct_state(
    basis: OrthoBasis,
    transfer: TransferSystem,
    energy: Any,
    missing: Sequence[Any],
    j_max: int,
) -> list[HPReal]:
    """Projection coefficients Ω_j, j ≤ j_max, of a state.

    Raises
    ------
    ExtentError
        Raised if j_max exceeds the basis degree or the transfer rows.
    """
    precision = basis.moments.precision
    ctx = precision.ctx
    energy = precision.parse(energy)
    weights = [precision.mpf(v) for v in missing]
    result = []
    for j in range(j_max + 1):
        row = omega_row(basis, transfer, j)
        result.append(
            ctx.fsum(p(energy) * w for p, w in zip(row, weights, strict=True))
        )
    return result
