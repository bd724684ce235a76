"""Quantization pipeline for one run document."""

from __future__ import annotations

import math

import structlog
from structlog.stdlib import BoundLogger

from ..config import config
from ..constants import DEFAULT_WINDOW, WINDOW_MARGIN, WINDOW_SCALE
from ..models.oracle import OracleConfig, OracleResult
from ..models.potential import Family, Representation
from ..models.report import (
    PropertyStatus,
    QESPolyReport,
    SolveResult,
    VerifyReport,
)
from ..models.run import RunConfig
from ..storage.cache import OracleCache
from .benderdunne import build_quantizer, qes_recursion
from .oracle import SpectralOracle
from .potential import PotentialSpec, is_qes_potential
from .precision import Precision, set_precision
from .quantizer import (
    QuantizationProblem,
    make_problem,
    reference_moments,
    scan_roots,
)
from .roots import real_roots
from .timings import Timings
from .verify import PropertySuite
from .weights import MomentTable, hankel_hadamard_profile

__all__ = ["Solver", "build_spec"]


def build_spec(run: RunConfig, precision: Precision) -> PotentialSpec:
    """Potential described by a run document."""
    if run.family == Family.bender_dunne:
        return PotentialSpec.bender_dunne(
            precision, s=run.s, J=run.J, gamma=run.gamma, m=run.m
        )
    return PotentialSpec.sextic(run.g, run.b, run.m, run.sigma, precision)


class Solver:
    """Runs the stages of a quantization run.

    Parameters
    ----------
    run
        Run document.
    logger
        Logger to use.
    cache
        Cache for oracle results, if any.
    """

    def __init__(
        self,
        run: RunConfig,
        logger: BoundLogger | None = None,
        cache: OracleCache | None = None,
    ) -> None:
        self._run = run
        self._cache = cache
        self._precision = set_precision(run.digits)
        self.spec = build_spec(run, self._precision)
        self._timings = Timings()
        logger = logger or structlog.get_logger(config.name)
        self._logger = logger.bind(
            family=run.family.value,
            representation=self.representation.value,
        )

    @property
    def representation(self) -> Representation:
        """Moment representation of the run."""
        if self._run.representation is None:
            raise RuntimeError("Run document was not validated")
        return self._run.representation

    def problem(self) -> QuantizationProblem:
        """Build the basis and transfer system for the run's orders."""
        with self._timings.start("basis"):
            problem = make_problem(
                self.spec,
                self.representation,
                self._run.N_max,
                self._run.mode,
            )
        self._logger.debug(
            f"Built degree {problem.basis.degree} basis",
            mode=problem.mode.value,
        )
        return problem

    def solve(self) -> SolveResult:
        """Find and classify the determinant roots over the run's orders."""
        oracle = self.oracle() if self._run.oracle is not None else None
        problem = self.problem()
        first = max(self._run.N_min, problem.min_order)
        orders = range(first, self._run.N_max + 1)
        report = scan_roots(
            problem, self.window(oracle), orders, self._timings
        )
        qes = len(report.qes_energies())
        self._logger.info(
            f"Found roots for N={first}..{self._run.N_max}",
            qes_roots=qes,
            entries=len(report.entries),
        )
        return SolveResult(
            report=report, oracle=oracle, timings=self._timings.dump()
        )

    def qes_poly(self) -> QESPolyReport:
        """Quantizing polynomial of a QES potential and its roots.

        Raises
        ------
        NotQESTypeError
            Raised if the potential is not QES-type.
        """
        quantizer = build_quantizer(self.spec)
        qes = is_qes_potential(self.spec)
        if qes is None:
            raise RuntimeError("QES data missing for a quantizer")
        precision = self._precision
        normalized = quantizer.normalized()
        bound = 1 + max(
            abs(c / normalized.leading) for c in normalized.coefficients[:-1]
        )
        roots = real_roots(normalized, (-bound, bound)).distinct()
        self._logger.info(f"QES polynomial of degree {qes.n_star + 1}")
        return QESPolyReport(
            potential=qes_recursion(self.spec).spec.describe(),
            n_star=qes.n_star,
            sigma_star=qes.sigma_star,
            coefficients=[
                precision.format(c) for c in normalized.coefficients
            ],
            roots=[precision.format(r) for r in roots],
        )

    def weights(self, count: int) -> MomentTable:
        """Moment table of the run's reference weight."""
        with self._timings.start("weights", {"count": str(count)}):
            return reference_moments(self.spec, self.representation, count)

    def hankel_profile(self, table: MomentTable) -> list[tuple[int, str, str]]:
        """Hankel–Hadamard determinants of a table, formatted for output."""
        fmt = self._precision.format
        return [
            (order, fmt(delta0, 12), "" if delta1 is None else fmt(delta1, 12))
            for order, delta0, delta1 in hankel_hadamard_profile(table)
        ]

    def oracle(self) -> OracleResult:
        """Oracle eigenvalues for the potential, from the cache if possible."""
        settings = self._run.oracle or OracleConfig()
        levels = self._run.levels
        potential = self.spec.describe()
        if self._cache:
            cached = self._cache.get(potential, settings, levels)
            if cached:
                self._logger.debug("Using cached oracle result")
                return cached
        with self._timings.start("oracle", {"levels": str(levels)}):
            oracle = SpectralOracle(settings, self._logger)
            result = oracle.spectrum(self.spec, levels)
        if self._cache:
            self._cache.store(result, levels)
        return result

    def verify(self, *, use_oracle: bool) -> VerifyReport:
        """Run the property suite on the run."""
        oracle = self.oracle() if use_oracle else None
        problem = self.problem()
        first = max(self._run.N_min, problem.min_order)
        orders = range(first, self._run.N_max + 1)
        report = scan_roots(
            problem, self.window(oracle), orders, self._timings
        )
        suite = PropertySuite(problem, report, oracle, self._logger)
        result = suite.run()
        failed = [
            p.name
            for p in result.properties
            if p.status == PropertyStatus.failed
        ]
        if failed:
            self._logger.error("Properties failed", failed=failed)
        else:
            self._logger.info("All properties hold")
        return result

    def window(self, oracle: OracleResult | None) -> tuple[str, str]:
        """Energy window to search.

        The run's window if given. Otherwise the oracle levels set it, from
        10 below the lowest to 1.5 times the highest. Without either the
        default window is used.
        """
        if self._run.window:
            return self._run.window
        if oracle and oracle.levels:
            energies = oracle.energies()
            lo = math.floor(min(energies)) - WINDOW_MARGIN
            top = max(energies)
            hi = math.ceil(max(top * WINDOW_SCALE, top))
            return (str(lo), str(hi))
        return DEFAULT_WINDOW
