"""Test fixtures for oppq tests."""

from __future__ import annotations

from collections.abc import Iterator

import pytest

from oppq.config import config
from oppq.services.potential import PotentialSpec
from oppq.services.precision import Precision, set_precision

from .support.tables import BD_PARAMETERS, EVEN_QES_M, ODD_QES_M, SQRT_8


@pytest.fixture(autouse=True)
def _configure() -> Iterator[None]:
    """Pin the precision settings.

    This is an autouse fixture, so every test runs at 60 digits with 40
    guard digits regardless of the environment, and any change a test makes
    to the configuration is undone afterwards.
    """
    digits = config.digits
    guard_digits = config.guard_digits
    oracle_cache = config.oracle_cache
    config.digits = 60
    config.guard_digits = 40
    config.oracle_cache = None
    yield
    config.digits = digits
    config.guard_digits = guard_digits
    config.oracle_cache = oracle_cache


@pytest.fixture
def precision() -> Precision:
    return set_precision()


@pytest.fixture
def sextic_even(precision: Precision) -> PotentialSpec:
    """Sextic potential with QES states in the even sector."""
    return PotentialSpec.sextic(1, SQRT_8, EVEN_QES_M, 0, precision)


@pytest.fixture
def sextic_odd(precision: Precision) -> PotentialSpec:
    """Sextic potential with QES states in the odd sector."""
    return PotentialSpec.sextic(1, SQRT_8, ODD_QES_M, 1, precision)


@pytest.fixture
def bender_dunne(precision: Precision) -> PotentialSpec:
    """Bender–Dunne potential with four QES states."""
    return PotentialSpec.bender_dunne(precision, **BD_PARAMETERS)
