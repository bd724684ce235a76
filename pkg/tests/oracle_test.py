"""Tests for the spectral oracle."""

from __future__ import annotations

import pytest

from oppq.exceptions import NotConvergedError
from oppq.models.oracle import OracleConfig, OracleMethod
from oppq.models.potential import Representation
from oppq.services.oracle import (
    HalfLineProblem,
    SpectralOracle,
    oracle_spectrum,
    oracle_wavefunction_moments,
)
from oppq.services.potential import PotentialSpec

from .support.tables import (
    BD_CONVERGED,
    BD_QES,
    EVEN_CONVERGED,
    EVEN_QES,
    ODD_SECTOR_LEVEL,
    UNIFIED_EVEN,
)


def harmonic(exponent: int) -> HalfLineProblem:
    return HalfLineProblem(g=0, b=0, m=1, exponent=exponent, whole_line=True)


@pytest.mark.parametrize("method", list(OracleMethod))
def test_harmonic_oscillator(method: OracleMethod) -> None:
    oracle = SpectralOracle(OracleConfig(method=method, extent=8.0))
    energies, errors = oracle.solve(harmonic(0), 3)
    assert energies == pytest.approx([1, 5, 9], abs=1e-6)
    assert all(error <= 1e-5 for error in errors)

    energies, _ = oracle.solve(harmonic(1), 3)
    assert energies == pytest.approx([3, 7, 11], abs=1e-6)


def test_not_converged() -> None:
    settings = OracleConfig(points=16, extent=8.0, tolerance=1e-12)
    with pytest.raises(NotConvergedError) as excinfo:
        SpectralOracle(settings).solve(harmonic(0), 2)
    assert excinfo.value.exit_code == 3


def test_problem_from_spec(
    sextic_even: PotentialSpec, bender_dunne: PotentialSpec
) -> None:
    problem = HalfLineProblem.from_spec(sextic_even, 1)
    assert problem.exponent == 1
    assert problem.whole_line
    assert problem.m == -13

    problem = HalfLineProblem.from_spec(bender_dunne)
    assert problem.exponent == 1.5
    assert problem.b == 0
    assert not problem.whole_line


def test_sextic_spectrum(sextic_even: PotentialSpec) -> None:
    result = oracle_spectrum(sextic_even, 5)
    assert [level.sigma for level in result.levels] == [0] * 5 + [1] * 5
    assert result.potential == sextic_even.describe()

    even = result.energies(sigma=0)
    assert even[0] == pytest.approx(EVEN_QES[0], abs=1e-6)
    assert even[4] == pytest.approx(EVEN_CONVERGED[0], abs=1e-5)

    # Both parities interleave into the unified spectrum.
    unified = [*UNIFIED_EVEN[:-1], ODD_SECTOR_LEVEL]
    assert sorted(result.energies())[:8] == pytest.approx(unified, abs=1e-5)


def test_bd_spectrum(bender_dunne: PotentialSpec) -> None:
    result = oracle_spectrum(bender_dunne, 5)
    assert {level.sigma for level in result.levels} == {0}
    energies = result.energies()
    assert energies[:4] == pytest.approx(list(BD_QES), abs=1e-5)
    assert energies[4] == pytest.approx(BD_CONVERGED[0], abs=1e-5)


def test_harmonic_method_rejects_bd(bender_dunne: PotentialSpec) -> None:
    oracle = SpectralOracle(OracleConfig(method=OracleMethod.harmonic))
    with pytest.raises(ValueError, match="sextic"):
        oracle.solve(HalfLineProblem.from_spec(bender_dunne), 2)


def test_parity_moments(sextic_odd: PotentialSpec) -> None:
    mu = oracle_wavefunction_moments(
        sextic_odd, 0, 8, Representation.psi_mu
    )
    assert mu[0] == 0
    assert mu[2] == 0
    u = oracle_wavefunction_moments(sextic_odd, 0, 4, Representation.psi_u)
    for rho in range(4):
        assert u[rho] == pytest.approx(mu[2 * rho + 1], rel=1e-12)


def test_moment_equation(sextic_even: PotentialSpec) -> None:
    # g u(3) + b u(2) + m u(1) − E u(0) = 0 for the ground state.
    u = oracle_wavefunction_moments(sextic_even, 0, 4, Representation.psi_u)
    g, b, m = (float(v) for v in (sextic_even.g, sextic_even.b, sextic_even.m))
    terms = [g * u[3], b * u[2], m * u[1], -EVEN_QES[0] * u[0]]
    assert abs(sum(terms)) <= 1e-4 * max(abs(t) for t in terms)


def test_zero_moment_law(sextic_even: PotentialSpec) -> None:
    # Non-QES states of the QES sector have ν(0) = … = ν(n*) = 0.
    nu = oracle_wavefunction_moments(sextic_even, 4, 5, Representation.phi_nu)
    assert max(abs(v) for v in nu[:4]) <= 1e-3 * abs(nu[4])

    qes = oracle_wavefunction_moments(sextic_even, 0, 1, Representation.phi_nu)
    assert qes[0] > 0


def test_moment_representation_mismatch(sextic_even: PotentialSpec) -> None:
    with pytest.raises(ValueError, match="does not apply"):
        oracle_wavefunction_moments(sextic_even, 0, 2, Representation.bd_a)
