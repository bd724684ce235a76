"""Double-precision spectral oracle for the sextic and Bender–Dunne wells.

The oracle is independent of the moment machinery. Eigenstates of
H = −d²/dx² + V are computed on the half line in the form ψ = x^e φ, where
e is the parity σ of a sextic state or the indicial exponent γ of a
Bender–Dunne state. Then −ψ'' + (e(e−1)/x²)ψ = x^e·(−x^{−2e}(x^{2e}φ')'),
so the singular centrifugal term disappears and φ is smooth and even. The
operator is discretized by finite volumes on a cell-centered grid and the
eigenvalues are extrapolated over three spacings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import structlog
from scipy.integrate import cumulative_trapezoid, trapezoid
from scipy.linalg import eigh, eigh_tridiagonal
from structlog.stdlib import BoundLogger

from ..config import config
from ..constants import ORACLE_DECAY_ACTION, ORACLE_REFINEMENTS
from ..exceptions import NotConvergedError
from ..models.oracle import (
    OracleConfig,
    OracleLevel,
    OracleMethod,
    OracleResult,
)
from ..models.potential import Family, Representation
from .potential import PotentialSpec

__all__ = [
    "HalfLineProblem",
    "SpectralOracle",
    "oracle_spectrum",
    "oracle_wavefunction_moments",
]

FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True)
class HalfLineProblem:
    """A well g x⁶ + b x⁴ + m x² + e(e−1)/x² on the half line.

    Attributes
    ----------
    g
        Sextic coefficient.
    b
        Quartic coefficient.
    m
        Quadratic coefficient.
    exponent
        Power e of x in ψ = x^e φ.
    whole_line
        Whether ψ continues to x < 0 with parity e, so norms and moments
        double.
    """

    g: float
    b: float
    m: float
    exponent: float
    whole_line: bool

    @classmethod
    def from_spec(
        cls, spec: PotentialSpec, sigma: int | None = None
    ) -> HalfLineProblem:
        """Convert a potential in one parity sector to double precision."""
        if spec.family == Family.bender_dunne:
            return cls(
                g=1.0,
                b=0.0,
                m=float(spec.m),
                exponent=float(spec.gamma),
                whole_line=False,
            )
        return cls(
            g=float(spec.g),
            b=float(spec.b),
            m=float(spec.m),
            exponent=float(spec.sigma if sigma is None else sigma),
            whole_line=True,
        )

    def smooth(self, x: FloatArray) -> FloatArray:
        """Polynomial part of the well, acting on φ."""
        x2 = x * x
        return ((self.g * x2 + self.b) * x2 + self.m) * x2

    def potential(self, x: FloatArray) -> FloatArray:
        """Full well including the centrifugal term."""
        e = self.exponent
        return self.smooth(x) + e * (e - 1) / (x * x)


@dataclass(frozen=True)
class _GridStates:
    x: FloatArray
    energies: FloatArray
    phi: FloatArray


class SpectralOracle:
    """Eigenvalue solver used to validate OPPQ energies.

    Parameters
    ----------
    settings
        Oracle settings.
    logger
        Logger to use.
    """

    def __init__(
        self, settings: OracleConfig, logger: BoundLogger | None = None
    ) -> None:
        self._settings = settings
        self._logger = logger or structlog.get_logger(config.name)

    def spectrum(self, spec: PotentialSpec, levels: int) -> OracleResult:
        """Lowest eigenvalues of a potential in every parity sector.

        Parameters
        ----------
        spec
            Potential. Sextic potentials are solved in both sectors.
        levels
            Number of levels per sector.

        Raises
        ------
        NotConvergedError
            Raised if the refinements disagree by more than the tolerance.
        """
        sectors = [0] if spec.family == Family.bender_dunne else [0, 1]
        result = []
        for sigma in sectors:
            problem = HalfLineProblem.from_spec(spec, sigma)
            energies, errors = self.solve(problem, levels)
            pairs = zip(energies, errors, strict=True)
            result.extend(
                OracleLevel(index=i, sigma=sigma, energy=e, error=err)
                for i, (e, err) in enumerate(pairs)
            )
        return OracleResult(
            potential=spec.describe(), config=self._settings, levels=result
        )

    def solve(
        self, problem: HalfLineProblem, levels: int
    ) -> tuple[list[float], list[float]]:
        """Eigenvalues and error estimates of one half-line problem."""
        extent = self._settings.extent or self.extent(problem, levels)
        logger = self._logger.bind(method=self._settings.method.value)
        if self._settings.method == OracleMethod.harmonic:
            energies, errors = self._solve_harmonic(problem, levels, extent)
        else:
            energies, errors = self._solve_grid(problem, levels, extent)
        for level, error in enumerate(errors):
            if error > self._settings.tolerance:
                raise NotConvergedError(level, error, self._settings.tolerance)
        logger.debug(
            f"Solved {levels} levels on [0, {extent:.3f}]",
            exponent=problem.exponent,
        )
        return energies, errors

    def extent(self, problem: HalfLineProblem, levels: int) -> float:
        """Grid extent covering the highest level with a decay margin.

        Alternates a coarse solve with the extent the highest level needs
        until the extent stops growing.
        """
        extent = self._decay_point(problem, 0.0)
        for _ in range(10):
            states = self._grid_states(
                problem, extent, self._settings.points, levels
            )
            needed = self._decay_point(problem, float(states.energies[-1]))
            if needed <= extent:
                break
            extent = 1.2 * needed
        return extent

    def _decay_point(self, problem: HalfLineProblem, energy: float) -> float:
        upper = 1.0
        while problem.smooth(np.array([upper]))[0] <= energy:
            upper *= 2
        xs = np.linspace(0, upper, 4001)[1:]
        inside = xs[problem.potential(xs) <= energy]
        start = float(inside[-1]) if inside.size else float(xs[0])
        xs = np.linspace(start, start + 10 * max(start, 1.0), 20001)
        excess = np.clip(problem.potential(xs) - energy, 0.0, None)
        action = cumulative_trapezoid(np.sqrt(excess), xs, initial=0.0)
        beyond = np.nonzero(action >= ORACLE_DECAY_ACTION)[0]
        return float(xs[beyond[0]]) if beyond.size else float(xs[-1])

    def _grid_states(
        self,
        problem: HalfLineProblem,
        extent: float,
        points: int,
        levels: int,
    ) -> _GridStates:
        h = extent / points
        faces = h * np.arange(points + 1)
        x = 0.5 * (faces[:-1] + faces[1:])
        power = 2 * problem.exponent
        flux = faces[1:] ** power / h
        mass = (faces[1:] ** (power + 1) - faces[:-1] ** (power + 1)) / (
            power + 1
        )
        inflow = np.concatenate(([0.0], flux[:-1]))
        diagonal = (inflow + flux) / mass + problem.smooth(x)
        offdiagonal = -flux[:-1] / np.sqrt(mass[:-1] * mass[1:])
        energies, vectors = eigh_tridiagonal(
            diagonal, offdiagonal, select="i", select_range=(0, levels - 1)
        )
        phi = vectors / np.sqrt(mass)[:, np.newaxis]
        if problem.whole_line:
            phi = phi / np.sqrt(2)
        for k in range(phi.shape[1]):
            if phi[np.argmax(np.abs(phi[:, k])), k] < 0:
                phi[:, k] = -phi[:, k]
        return _GridStates(x=x, energies=energies, phi=phi)

    def _solve_grid(
        self, problem: HalfLineProblem, levels: int, extent: float
    ) -> tuple[list[float], list[float]]:
        runs = [
            self._grid_states(
                problem, extent, self._settings.points * 2**k, levels
            ).energies
            for k in range(ORACLE_REFINEMENTS)
        ]
        coarse, middle, fine = runs
        fourth_order = (4 * fine - middle) / 3
        extrapolated = (64 * fine - 20 * middle + coarse) / 45
        errors = np.abs(extrapolated - fourth_order)
        return extrapolated.tolist(), errors.tolist()

    def _solve_harmonic(
        self, problem: HalfLineProblem, levels: int, extent: float
    ) -> tuple[list[float], list[float]]:
        if not problem.whole_line or problem.exponent not in (0.0, 1.0):
            raise ValueError("Harmonic basis needs a sextic parity sector")
        size = self._settings.basis_size
        omega = (4 * size + 1) / (1.2 * extent) ** 2
        sigma = int(problem.exponent)
        best = self._harmonic_levels(problem, sigma, size, omega, levels)
        check = self._harmonic_levels(
            problem, sigma, (3 * size) // 4, omega, levels
        )
        return best.tolist(), np.abs(best - check).tolist()

    def _harmonic_levels(
        self,
        problem: HalfLineProblem,
        sigma: int,
        size: int,
        omega: float,
        levels: int,
    ) -> FloatArray:
        # x couples n to n ± 1, so x⁶ is exact on the first 2·size states
        # when built in a basis six states larger.
        total = 2 * size + 6
        n = np.arange(total - 1)
        x = np.diag(np.sqrt((n + 1) / (2 * omega)), 1)
        x = x + x.T
        x2 = x @ x
        x4 = x2 @ x2
        x6 = x4 @ x2
        hamiltonian = (
            np.diag(omega * (2 * np.arange(total) + 1))
            + (problem.m - omega**2) * x2
            + problem.b * x4
            + problem.g * x6
        )
        keep = np.arange(sigma, 2 * size, 2)
        block = hamiltonian[np.ix_(keep, keep)]
        return eigh(block, eigvals_only=True, subset_by_index=[0, levels - 1])

    def wavefunction_moments(
        self,
        spec: PotentialSpec,
        level: int,
        count: int,
        representation: Representation,
    ) -> list[float]:
        """Moments of a computed eigenstate in a moment representation.

        Moments follow the conventions of the moment recursions, with Ψ
        normalized to one over its domain and positive at its largest
        magnitude. Integration is by the trapezoid rule on the finest grid.

        Parameters
        ----------
        spec
            Potential, in the parity sector of the state for sextic wells.
        level
            Level index within the sector.
        count
            Number of moments.
        representation
            Moment convention.
        """
        if representation.family != spec.family:
            raise ValueError(
                f"{representation.value} does not apply to {spec.family.value}"
            )
        problem = HalfLineProblem.from_spec(spec)
        extent = self._settings.extent or self.extent(problem, level + 1)
        points = self._settings.points * 2 ** (ORACLE_REFINEMENTS - 1)
        states = self._grid_states(problem, extent, points, level + 1)
        phi = states.phi[:, level]
        x = np.concatenate(([0.0], states.x))
        # φ is even, so its value at the origin follows from the first cells.
        phi = np.concatenate((
            [(9 * phi[0] - phi[1]) / 8], phi
        ))
        e = problem.exponent
        factor = 2.0 if problem.whole_line else 1.0
        envelope = np.ones_like(x)
        match representation:
            case Representation.phi_nu:
                sqrt_g = np.sqrt(problem.g)
                envelope = np.exp(
                    -0.25 * (sqrt_g * x**4 + problem.b / sqrt_g * x**2)
                )
                offset = 2 * e
            case Representation.psi_u | Representation.psi_mu:
                offset = 2 * e
            case Representation.bd_a:
                offset = 0.0
            case Representation.bd_tilde:
                envelope = np.exp(-0.25 * x**4)
                offset = 0.0
            case Representation.bd_bessis:
                envelope = np.exp(-0.25 * x**4)
                offset = 2 * e
        base = phi * envelope

        def integral(power: float) -> float:
            with np.errstate(divide="ignore"):
                weight = np.where(x > 0, x**power, 1.0 if power == 0 else 0.0)
            return factor * float(trapezoid(weight * base, x))

        if representation == Representation.psi_mu:
            return [
                0.0 if (p + int(e)) % 2 else integral(p + e)
                for p in range(count)
            ]
        return [integral(2 * rho + offset) for rho in range(count)]


def oracle_spectrum(
    spec: PotentialSpec, levels: int, settings: OracleConfig | None = None
) -> OracleResult:
    """Lowest eigenvalues of a potential per parity sector."""
    return SpectralOracle(settings or OracleConfig()).spectrum(spec, levels)


def oracle_wavefunction_moments(
    spec: PotentialSpec,
    level: int,
    count: int,
    representation: Representation,
    settings: OracleConfig | None = None,
) -> list[float]:
    """Moments of one computed eigenstate, see `SpectralOracle`."""
    oracle = SpectralOracle(settings or OracleConfig())
    return oracle.wavefunction_moments(spec, level, count, representation)
