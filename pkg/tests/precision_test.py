"""Tests for working-precision sessions."""

from __future__ import annotations

import pytest

from oppq.config import config
from oppq.exceptions import InvalidPrecisionError
from oppq.services.precision import Precision, is_scalar_text, set_precision


def test_set_precision_defaults() -> None:
    precision = set_precision()
    assert precision.digits == 60
    assert precision.guard_digits == 40
    assert precision.dps == 100

    config.digits = 45
    precision = set_precision(guard_digits=10)
    assert precision.digits == 45
    assert precision.dps == 55


def test_minimum_digits() -> None:
    with pytest.raises(InvalidPrecisionError) as excinfo:
        Precision(29, 40)
    assert excinfo.value.exit_code == 2
    assert "29" in str(excinfo.value)

    assert Precision(30, 0).digits == 30


def test_sessions_are_independent() -> None:
    low = Precision(30, 0)
    high = Precision(80, 20)
    assert low.dps == 30
    assert high.dps == 100
    third = low.mpf(1) / 3
    assert low.dps == 30
    assert abs(high.mpf(1) / 3 - third) > high.root_tolerance


def test_parse(precision: Precision) -> None:
    root = precision.parse("sqrt(8)")
    assert abs(root**2 - 8) < precision.mpf("1e-90")
    assert precision.parse("3/4") == precision.mpf(3) / 4
    assert precision.parse("-13") == -13
    assert precision.parse("-sqrt(2)") == -precision.ctx.sqrt(2)
    assert precision.parse(0.1) == precision.mpf("0.1")
    assert precision.parse(7) == 7

    with pytest.raises(ValueError, match="Cannot parse"):
        precision.parse("eight")


def test_is_scalar_text() -> None:
    for text in ("1", "-13", "0.75", "1e-3", "3/4", "sqrt(8)", "-sqrt(3/4)"):
        assert is_scalar_text(text), text
    for text in ("", "abc", "sqrt()", "1/", "sqrt(x)", "1+2"):
        assert not is_scalar_text(text), text


def test_tolerances(precision: Precision) -> None:
    ctx = precision.ctx
    assert ctx.almosteq(precision.root_tolerance, ctx.power(10, -30))
    assert ctx.almosteq(precision.merge_tolerance, ctx.power(10, -15))
    assert precision.epsilon < precision.root_tolerance


def test_nearest_integer(precision: Precision) -> None:
    assert precision.nearest_integer(precision.mpf(3) + 1e-50) == 3
    assert precision.nearest_integer(precision.mpf("-4")) == -4
    assert precision.nearest_integer(precision.mpf("3.1")) is None


def test_is_negligible(precision: Precision) -> None:
    assert precision.is_negligible(precision.mpf("1e-40"), 5)
    assert not precision.is_negligible(precision.mpf("1e-20"), 5)
    assert precision.is_negligible(precision.mpf("1e-20"), 10**15)


def test_format(precision: Precision) -> None:
    value = precision.parse("1/3")
    assert precision.format(value, 6) == "0.333333"
    assert len(precision.format(value).rstrip("0")) > 60
