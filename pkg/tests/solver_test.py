"""Tests for the quantization pipeline."""

from __future__ import annotations

import pytest

from oppq.constants import DEFAULT_WINDOW
from oppq.models.oracle import OracleConfig, OracleLevel, OracleResult
from oppq.models.run import RunConfig
from oppq.services.solver import Solver

from .support.tables import SQRT_8


def make_oracle(*energies: float) -> OracleResult:
    levels = [
        OracleLevel(index=i, sigma=0, energy=e, error=1e-8)
        for i, e in enumerate(energies)
    ]
    return OracleResult(potential={}, config=OracleConfig(), levels=levels)


@pytest.mark.parametrize(
    ("energies", "expected"),
    [
        ((-4.701631, 2.28985, 47.613209), ("-15", "72")),
        ((10.2, 100.0), ("0", "150")),
        ((-20.926277, -6.487752), ("-31", "-6")),
    ],
)
def test_default_window(
    energies: tuple[float, ...], expected: tuple[str, str]
) -> None:
    solver = Solver(RunConfig.parse_obj({"b": SQRT_8, "m": -13}))
    assert solver.window(make_oracle(*energies)) == expected


def test_window() -> None:
    solver = Solver(RunConfig.parse_obj({"b": SQRT_8, "m": -13}))
    assert solver.window(None) == DEFAULT_WINDOW
    assert solver.window(make_oracle()) == DEFAULT_WINDOW

    run = RunConfig.parse_obj({"b": SQRT_8, "m": -13, "window": [-10, 70]})
    solver = Solver(run)
    assert solver.window(make_oracle(1.0, 200.0)) == ("-10", "70")
