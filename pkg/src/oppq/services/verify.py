"""Property suite checking a quantization run for internal consistency."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from typing import Any

import structlog
from structlog.stdlib import BoundLogger

from ..config import config
from ..constants import (
    OMEGA_DECAY_START,
    ORACLE_DELTA_TOLERANCE,
    ZERO_MOMENT_RATIO,
)
from ..exceptions import OPPQError
from ..models.oracle import OracleResult
from ..models.potential import Family, QuantizationMode, Representation
from ..models.report import (
    PropertyResult,
    PropertyStatus,
    RootClass,
    RootReport,
    VerifyReport,
)
from .benderdunne import (
    build_lambda,
    build_quantizer,
    hill_series,
    moment_quantizer,
    monic_transform,
    qes_recursion,
)
from .orthopoly import OrthoBasis, orthonormality_residual
from .polynomial import EnergyPolynomial
from .potential import PotentialSpec, is_qes_potential
from .quantizer import (
    QuantizationProblem,
    build_determinant,
    factor_out_qes,
    make_problem,
    missing_moments,
    reconstruct_state,
)
from .roots import real_roots
from .weights import MomentTable, hankel_hadamard_profile

__all__ = [
    "PropertySuite",
    "check_factorization",
    "check_gamma_vanishing",
    "check_hankel_positivity",
    "check_hill_equivalence",
    "check_hill_persistence",
    "check_omega_decay",
    "check_oracle_deltas",
    "check_orthonormality",
    "check_zero_moment_law",
    "first_growth",
    "qes_problem",
]


def _passed(name: str, detail: str) -> PropertyResult:
    status = PropertyStatus.passed
    return PropertyResult(name=name, status=status, detail=detail)


def _failed(name: str, detail: str) -> PropertyResult:
    status = PropertyStatus.failed
    return PropertyResult(name=name, status=status, detail=detail)


def _skipped(name: str, detail: str) -> PropertyResult:
    status = PropertyStatus.skipped
    return PropertyResult(name=name, status=status, detail=detail)


def _result(name: str, ok: bool, detail: str) -> PropertyResult:
    return _passed(name, detail) if ok else _failed(name, detail)


def _root_bound(p: EnergyPolynomial) -> Any:
    leading = abs(p.leading)
    return 1 + max(abs(c) / leading for c in p.coefficients[:-1])


def _all_roots(p: EnergyPolynomial) -> list[Any]:
    bound = _root_bound(p)
    return real_roots(p, (-bound, bound)).distinct()


def _negligible_at(p: EnergyPolynomial, x: Any) -> bool:
    precision = p.precision
    ctx = precision.ctx
    terms = (abs(c) * abs(x) ** i for i, c in enumerate(p.coefficients))
    scale = ctx.fsum(terms)
    return abs(p(x)) <= precision.root_tolerance * max(scale, 1)


def _lowest_converging(report: RootReport) -> tuple[int, Any] | None:
    orders = report.orders()
    if not orders:
        return None
    N = orders[-1]
    for entry in report.roots_at(N):
        if entry.classification == RootClass.converging:
            return N, entry.energy
    return None


def qes_problem(spec: PotentialSpec, N_max: int) -> QuantizationProblem:
    """Segmented problem in the QES sector, whose determinant factorizes.

    Sextic potentials use the Φ representation in parity sector σ*, and
    Bender–Dunne potentials the Bessis representation.
    """
    rec = qes_recursion(spec)
    if spec.family == Family.bender_dunne:
        return make_problem(
            rec.spec,
            Representation.bd_bessis,
            N_max,
            QuantizationMode.bd_full,
        )
    return make_problem(
        rec.spec, Representation.phi_nu, N_max, QuantizationMode.phi_segmented
    )


def check_orthonormality(basis: OrthoBasis) -> PropertyResult:
    """Gram matrix of the basis against its moments is the identity."""
    precision = basis.moments.precision
    residual = orthonormality_residual(basis)
    detail = (
        f"max residual {precision.format(residual, 3)} up to"
        f" J={basis.degree}"
    )
    return _result(
        "orthonormality", residual <= precision.root_tolerance, detail
    )


def check_hankel_positivity(table: MomentTable) -> PropertyResult:
    """Every Hankel–Hadamard determinant of a moment table is positive."""
    negative = []
    orders = 0
    for order, delta0, delta1 in hankel_hadamard_profile(table):
        orders = order + 1
        if delta0 <= 0:
            negative.append(f"Δ0,{order}")
        if delta1 is not None and delta1 <= 0:
            negative.append(f"Δ1,{order}")
    if negative:
        detail = "non-positive " + ", ".join(negative)
        return _failed("hankel_positivity", detail)
    return _passed("hankel_positivity", f"{orders} orders positive")


def check_factorization(spec: PotentialSpec, orders: range) -> PropertyResult:
    """Segmented determinants divide exactly by the QES polynomial."""
    name = "factorization"
    if is_qes_potential(spec) is None:
        return _skipped(name, "potential is not QES-type")
    problem = qes_problem(spec, orders.stop - 1)
    quantizer = build_quantizer(spec)
    checked = [N for N in orders if N >= problem.min_order]
    if not checked:
        return _skipped(name, f"no order reaches {problem.min_order}")
    for N in checked:
        factor_out_qes(build_determinant(problem, N), quantizer)
    return _passed(name, f"divisible for N={checked[0]}..{checked[-1]}")


def check_zero_moment_law(spec: PotentialSpec, N: int) -> PropertyResult:
    """Moments below the kink vanish for non-QES states of the QES sector.

    Evaluated at the lowest converging root of the segmented determinant of
    order N, as max_{ρ≤n*} |ν(ρ)|/|ν(n*+1)|.
    """
    name = "zero_moment_law"
    if is_qes_potential(spec) is None:
        return _skipped(name, "potential is not QES-type")
    problem = qes_problem(spec, N)
    if N < problem.min_order:
        return _skipped(name, f"order {N} is below {problem.min_order}")
    precision = problem.precision
    determinant = build_determinant(problem, N)
    quotient = factor_out_qes(determinant, build_quantizer(spec))
    roots = _all_roots(quotient) if quotient.degree > 0 else []
    if not roots:
        return _skipped(name, f"no non-QES root at N={N}")
    energy = roots[0]
    kink = problem.transfer.kink
    missing = missing_moments(problem, N, energy)
    moments = problem.transfer.evaluate(energy, missing)
    ratio = max(abs(v) for v in moments[:kink]) / abs(moments[kink])
    detail = (
        f"ratio {precision.format(ratio, 3)} at"
        f" E={precision.format(energy, 10)} (N={N})"
    )
    return _result(name, ratio < ZERO_MOMENT_RATIO, detail)


def first_growth(omega: Sequence[Any], start: int) -> int | None:
    """Find where projection coefficients stop decreasing.

    Parameters
    ----------
    omega
        Coefficients Ω_0, Ω_1, … of a reconstructed state.
    start
        First order of the tail that must decrease.

    Returns
    -------
    int or None
        The first j ≥ ``start`` with |Ω_{j+1}| ≥ |Ω_j|, or `None` if the
        magnitudes decrease strictly from ``start`` to the end.
    """
    for j in range(start, len(omega) - 1):
        if abs(omega[j + 1]) >= abs(omega[j]):
            return j
    return None


def check_omega_decay(
    problem: QuantizationProblem, report: RootReport
) -> PropertyResult:
    """Projection coefficients decrease strictly beyond the decay start.

    Evaluated at the lowest converging root of the highest order.
    """
    name = "omega_decay"
    limit = min(problem.basis.degree, problem.transfer.rows - 1)
    if limit <= OMEGA_DECAY_START:
        return _skipped(name, f"basis degree {limit} is too small")
    found = _lowest_converging(report)
    if found is None:
        return _skipped(name, "no converging root")
    N, energy = found
    precision = problem.precision
    missing = missing_moments(problem, N, energy)
    omega = reconstruct_state(
        problem.basis, problem.transfer, energy, missing, limit
    )
    j = first_growth(omega, OMEGA_DECAY_START)
    if j is None:
        detail = (
            f"|Ω_j| decreasing for {OMEGA_DECAY_START} ≤ j ≤ {limit} (N={N})"
        )
        return _passed(name, detail)
    detail = (
        f"|Ω_{j + 1}|={precision.format(abs(omega[j + 1]), 3)}"
        f" ≥ |Ω_{j}|={precision.format(abs(omega[j]), 3)} (N={N})"
    )
    return _failed(name, detail)


def check_oracle_deltas(
    report: RootReport, oracle: OracleResult | None, sigma: int | None
) -> PropertyResult:
    """The lowest converging root lies close to an oracle eigenvalue."""
    name = "oracle_deltas"
    if oracle is None:
        return _skipped(name, "oracle disabled")
    found = _lowest_converging(report)
    if found is None:
        return _skipped(name, "no converging root")
    N, energy = found
    value = float(energy)
    targets = oracle.energies(sigma)
    nearest = min(targets, key=lambda e: abs(e - value))
    delta = abs(nearest - value)
    detail = f"|{value:.6f} - {nearest:.6f}| = {delta:.2e} (N={N})"
    return _result(name, delta < ORACLE_DELTA_TOLERANCE, detail)


def check_gamma_vanishing(spec: PotentialSpec) -> PropertyResult:
    """The monic recurrence of the QES polynomials terminates exactly."""
    name = "gamma_vanishing"
    if is_qes_potential(spec) is None:
        return _skipped(name, "potential is not QES-type")
    polys = monic_transform(build_lambda(spec))
    gamma = polys.gamma_t[-1]
    index = len(polys.gamma_t) - 1
    detail = f"γ̃_{index} = {spec.precision.format(gamma, 3)}"
    return _result(name, gamma == 0, detail)


def check_hill_equivalence(spec: PotentialSpec) -> PropertyResult:
    """Hill and moment quantizers have the same roots."""
    name = "hill_equivalence"
    qes = is_qes_potential(spec)
    if qes is None:
        return _skipped(name, "potential is not QES-type")
    precision = spec.precision
    polys = build_lambda(spec)
    moment = moment_quantizer(qes_recursion(spec), list(polys.lambda_))
    hill = hill_series(spec, qes.n_star + 1)[-1]
    ours = _all_roots(moment)
    theirs = _all_roots(hill)
    if len(ours) != len(theirs):
        return _failed(name, f"{len(ours)} against {len(theirs)} roots")
    gap = max(
        (abs(a - b) for a, b in zip(ours, theirs, strict=True)),
        default=precision.mpf(0),
    )
    detail = f"{len(ours)} roots, max gap {precision.format(gap, 3)}"
    return _result(name, gap <= precision.root_tolerance, detail)


def check_hill_persistence(spec: PotentialSpec) -> PropertyResult:
    """Hill coefficients beyond the quantizer vanish at the QES energies."""
    name = "hill_persistence"
    qes = is_qes_potential(spec)
    if qes is None:
        return _skipped(name, "potential is not QES-type")
    n = qes.n_star
    series = hill_series(spec, n + 3)
    roots = _all_roots(series[n + 1])
    alive = [
        (i, r)
        for r in roots
        for i in (n + 2, n + 3)
        if not _negligible_at(series[i], r)
    ]
    if alive:
        i, r = alive[0]
        value = spec.precision.format(r, 10)
        return _failed(name, f"c_{i} does not vanish at E={value}")
    return _passed(name, f"c_{n + 2}, c_{n + 3} vanish at {len(roots)} roots")


class PropertySuite:
    """Runs every property check for one quantization run.

    Parameters
    ----------
    problem
        Quantization problem of the run.
    report
        Roots found for the run.
    oracle
        Oracle eigenvalues, or `None` to skip the oracle comparison.
    logger
        Logger to use.
    """

    def __init__(
        self,
        problem: QuantizationProblem,
        report: RootReport,
        oracle: OracleResult | None = None,
        logger: BoundLogger | None = None,
    ) -> None:
        self._problem = problem
        self._report = report
        self._oracle = oracle
        self._logger = logger or structlog.get_logger(config.name)

    def run(self) -> VerifyReport:
        """Run all checks.

        A check that raises an `OPPQError` fails with the error message as
        its detail.
        """
        problem = self._problem
        spec = problem.spec
        orders = range(self._report.orders()[0], self._report.orders()[-1] + 1)
        sigma = None
        if problem.representation != Representation.psi_mu:
            sigma = spec.sigma
        checks: list[tuple[str, Callable[[], PropertyResult]]] = [
            ("orthonormality", lambda: check_orthonormality(problem.basis)),
            (
                "hankel_positivity",
                lambda: check_hankel_positivity(problem.basis.moments),
            ),
            ("factorization", lambda: check_factorization(spec, orders)),
            (
                "zero_moment_law",
                lambda: check_zero_moment_law(spec, orders.stop - 1),
            ),
            ("omega_decay", lambda: check_omega_decay(problem, self._report)),
            (
                "oracle_deltas",
                lambda: check_oracle_deltas(self._report, self._oracle, sigma),
            ),
            ("gamma_vanishing", lambda: check_gamma_vanishing(spec)),
            ("hill_equivalence", lambda: check_hill_equivalence(spec)),
            ("hill_persistence", lambda: check_hill_persistence(spec)),
        ]
        results = []
        for name, check in checks:
            try:
                result = check()
            except OPPQError as e:
                result = _failed(name, str(e))
            self._logger.debug(
                f"Property {name}: {result.status.value}", detail=result.detail
            )
            results.append(result)
        return VerifyReport(properties=results)
