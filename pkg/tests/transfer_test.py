"""Tests for the transfer polynomials."""

from __future__ import annotations

import pytest

from oppq.exceptions import LengthError, ZeroLeadingCoefficientError
from oppq.models.potential import Representation
from oppq.services.orthopoly import build_basis
from oppq.services.potential import PotentialSpec
from oppq.services.precision import Precision
from oppq.services.quantizer import reference_moments
from oppq.services.recursion import (
    BDTildeRecursion,
    PhiNuRecursion,
    build_recursion,
)
from oppq.services.transfer import (
    build_transfer,
    propagate_moments,
    qes_moment_closure,
)


def test_unit_rows(sextic_even: PotentialSpec) -> None:
    rec = build_recursion(sextic_even, Representation.psi_u)
    transfer = build_transfer(rec, 12)
    assert transfer.rows == 12
    assert transfer.columns == (0, 1, 2)
    for t in transfer.columns:
        for ell in transfer.columns:
            entry = transfer.entry(t, ell)
            assert entry.coefficients == ((1,) if t == ell else ())
    # Row ρ + 3 gains one power of E per step of three.
    assert transfer.entry(3, 0).degree == 1
    assert transfer.entry(6, 0).degree == 2

    with pytest.raises(ValueError, match="missing-moment"):
        transfer.entry(5, 3)


@pytest.mark.parametrize(
    "representation",
    [
        Representation.psi_mu,
        Representation.psi_u,
        Representation.phi_nu,
    ],
)
def test_matches_scalar_recursion(
    sextic_even: PotentialSpec, representation: Representation
) -> None:
    precision = sextic_even.precision
    rec = build_recursion(sextic_even, representation)
    transfer = build_transfer(rec, 20)
    missing = [precision.parse(v) for v in ("1", "0.5", "-0.2", "3", "2", "7")]
    missing = missing[: len(rec.columns)]
    expected = propagate_moments(rec, "3.3", missing, 20)
    actual = transfer.evaluate("3.3", missing)
    assert len(actual) == 20
    for a, b in zip(actual, expected, strict=True):
        assert abs(a - b) <= precision.root_tolerance * max(abs(b), 1)


def test_bd_matches_scalar_recursion(bender_dunne: PotentialSpec) -> None:
    precision = bender_dunne.precision
    for representation in (
        Representation.bd_a,
        Representation.bd_tilde,
        Representation.bd_bessis,
    ):
        rec = build_recursion(bender_dunne, representation)
        transfer = build_transfer(rec, 16)
        missing = [precision.mpf(k + 1) for k in range(len(rec.columns))]
        expected = propagate_moments(rec, "-2", missing, 16)
        actual = transfer.evaluate("-2", missing)
        for a, b in zip(actual, expected, strict=True):
            assert abs(a - b) <= precision.root_tolerance * max(abs(b), 1)


def test_vanishing_prefix(sextic_even: PotentialSpec) -> None:
    rec = PhiNuRecursion(sextic_even).with_vanishing_prefix()
    transfer = build_transfer(rec, 10)
    assert transfer.columns == (4,)
    for rho in range(4):
        assert transfer.row(rho)[0].is_zero
    assert transfer.row(4)[0].coefficients == (1,)
    assert transfer.row(5)[0].degree == 1


def test_too_few_rows(sextic_even: PotentialSpec) -> None:
    rec = build_recursion(sextic_even, Representation.psi_u)
    with pytest.raises(LengthError):
        build_transfer(rec, 3)
    with pytest.raises(ValueError, match="Expected 3"):
        build_transfer(rec, 6).evaluate(0, [1])


def test_zero_leading_coefficient(precision: Precision) -> None:
    # 4ρ − 2γ + m + 7 vanishes at ρ = 3 for γ = 3/2 and m = −16.
    spec = PotentialSpec.bender_dunne(precision, gamma="3/2", m=-16)
    rec = BDTildeRecursion(spec)
    with pytest.raises(ZeroLeadingCoefficientError) as excinfo:
        build_transfer(rec, 10)
    assert excinfo.value.exit_code == 3
    with pytest.raises(ZeroLeadingCoefficientError):
        propagate_moments(rec, 1, [1, 1], 10)


def test_moment_closure(sextic_even: PotentialSpec) -> None:
    # The weight itself has Ω_j = 0 for every j ≥ 1.
    precision = sextic_even.precision
    table = reference_moments(sextic_even, Representation.phi_nu, 20)
    basis = build_basis(table, 9)
    closure = qes_moment_closure(basis, [table[0]])
    assert len(closure) == 10
    for j, value in enumerate(closure):
        assert abs(value - table[j]) <= precision.root_tolerance * table[j]
