"""Tests for reference weights and their moment tables."""

from __future__ import annotations

from typing import Any

import pytest

from oppq.exceptions import LengthError
from oppq.services.precision import Precision
from oppq.services.weights import (
    Support,
    WeightSpec,
    bd_weight_moments,
    full_line_moments,
    hankel_hadamard,
    hankel_hadamard_profile,
    parity_weight_moments,
    sextic_m0_closed_form,
    sextic_m1_closed_form,
    sextic_weight_moments,
)


def close(precision: Precision, a: Any, b: Any) -> bool:
    return abs(a - b) <= precision.root_tolerance * max(abs(b), 1)


def test_quartic_weight(precision: Precision) -> None:
    weight = WeightSpec.sextic(1, 0, 4, precision)
    table = sextic_weight_moments(weight, 8)
    assert len(table) == 8
    assert table.support == Support.half_line

    # m(ρ+2) = (2ρ+1) m(ρ) for exp(−x⁴/4).
    for rho in range(6):
        assert close(precision, table[rho + 2], (2 * rho + 1) * table[rho])

    closed = sextic_m0_closed_form(weight)
    assert closed is not None
    assert close(precision, table[0], closed)

    # ∫ x² exp(−x⁴/4) dx = 2^{1/2}·Γ(3/4).
    ctx = precision.ctx
    assert close(precision, table[1], ctx.sqrt(2) * ctx.gamma(0.75))


def test_sextic_closed_forms(precision: Precision) -> None:
    weight = WeightSpec.sextic(1, precision.parse("sqrt(8)"), 4, precision)
    table = sextic_weight_moments(weight, 2)
    m0 = sextic_m0_closed_form(weight)
    m1 = sextic_m1_closed_form(weight)
    assert m0 is not None
    assert m1 is not None
    assert close(precision, table[0], m0)
    assert abs(table[1] - m1) < precision.mpf("1e-25")

    negative = WeightSpec.sextic(1, -2, 4, precision)
    assert sextic_m0_closed_form(negative) is None
    assert sextic_m1_closed_form(negative) is None
    table = sextic_weight_moments(negative, 6)
    assert all(value > 0 for value in table.values)


def test_bd_weight(precision: Precision) -> None:
    weight = WeightSpec.bender_dunne(precision.parse("3/2"), 2, precision)
    table = bd_weight_moments(weight, 6)
    ctx = precision.ctx
    assert close(precision, table[0], precision.mpf(1) / 2)
    expected = ctx.power(2, precision.parse("3/2")) * ctx.gamma(1.5) / 4
    assert close(precision, table[1], expected)

    with pytest.raises(ValueError, match="exceed"):
        WeightSpec.bender_dunne(precision.parse("-1/2"), 2, precision)


def test_parity_weight(precision: Precision) -> None:
    weight = WeightSpec.sextic(1, 0, 4, precision)
    base = sextic_weight_moments(weight, 10)
    shifted = parity_weight_moments(base, 1, 9)
    assert shifted.weight.sigma == 1
    assert shifted.values == base.values[1:10]
    assert shifted.weight.matches(base.weight)

    generated = parity_weight_moments(weight, 1, 5)
    for rho in range(5):
        assert close(precision, generated[rho], base[rho + 1])

    with pytest.raises(LengthError):
        parity_weight_moments(base, 1, 10)


def test_full_line(precision: Precision) -> None:
    weight = WeightSpec.sextic(1, 0, 4, precision)
    half = sextic_weight_moments(weight, 5)
    full = full_line_moments(half)
    assert full.support == Support.whole_line
    assert len(full) == 9
    assert full[4] == half[2]
    assert full[3] == 0

    with pytest.raises(ValueError, match="unshifted"):
        full_line_moments(parity_weight_moments(half, 1, 4))


def test_hankel_positivity(precision: Precision) -> None:
    weight = WeightSpec.sextic(1, precision.parse("sqrt(8)"), 4, precision)
    table = sextic_weight_moments(weight, 16)
    profile = hankel_hadamard_profile(table)
    assert [order for order, _, _ in profile] == list(range(8))
    for _, delta0, delta1 in profile:
        assert delta0 > 0
        if delta1 is not None:
            assert delta1 > 0

    assert close(precision, hankel_hadamard(table, 0), table[0])
    expected = table[0] * table[2] - table[1] ** 2
    assert close(precision, hankel_hadamard(table, 1), expected)

    full = hankel_hadamard_profile(full_line_moments(table))
    assert all(delta1 is None for _, _, delta1 in full)

    with pytest.raises(LengthError):
        hankel_hadamard(table, 8)
