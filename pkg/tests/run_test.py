"""Tests for run document validation."""

from __future__ import annotations

from typing import Any

import pytest
from pydantic import ValidationError

from oppq.exceptions import ConfigurationError
from oppq.models.oracle import OracleMethod
from oppq.models.potential import Family, Representation
from oppq.models.run import OutputFormat, RunConfig

SEXTIC: dict[str, Any] = {"b": "sqrt(8)", "m": -13}


def test_defaults() -> None:
    run = RunConfig.parse_obj(SEXTIC)
    assert run.family == Family.sextic
    assert run.representation == Representation.psi_u
    assert run.mode is None
    assert run.m == "-13"
    assert run.output == OutputFormat.pretty
    assert run.oracle is None

    bd = RunConfig.parse_obj({"family": "BenderDunne", "s": 1, "J": 4})
    assert bd.representation == Representation.bd_a


def test_scalars() -> None:
    run = RunConfig.parse_obj({"b": "3/4", "m": 2.5, "g": "sqrt(2)"})
    assert (run.b, run.m, run.g) == ("3/4", "2.5", "sqrt(2)")
    run = RunConfig.parse_obj({**SEXTIC, "window": [-10, "70.5"]})
    assert run.window == ("-10", "70.5")


def test_oracle_switch() -> None:
    run = RunConfig.parse_obj({**SEXTIC, "oracle": True})
    assert run.oracle is not None
    assert run.oracle.method == OracleMethod.grid
    assert RunConfig.parse_obj({**SEXTIC, "oracle": False}).oracle is None

    harmonic = {"method": "HarmonicBasis"}
    run = RunConfig.parse_obj({**SEXTIC, "oracle": harmonic})
    assert run.oracle
    assert run.oracle.method == OracleMethod.harmonic


@pytest.mark.parametrize(
    ("document", "field"),
    [
        ({"b": "two", "m": 1}, "b"),
        ({"b": True, "m": 1}, "b"),
        ({**SEXTIC, "sigma": 2}, "sigma"),
        ({**SEXTIC, "digits": 20}, "digits"),
        ({**SEXTIC, "N_min": 6, "N_max": 5}, "N_max"),
        ({**SEXTIC, "window": [70, -10]}, "window"),
        ({**SEXTIC, "levels": 0}, "levels"),
        ({**SEXTIC, "oracle": {"points": 8}}, "oracle"),
        ({**SEXTIC, "unknown": 1}, "unknown"),
    ],
)
def test_invalid_field(document: dict[str, Any], field: str) -> None:
    with pytest.raises(ValidationError) as excinfo:
        RunConfig.parse_obj(document)
    error = ConfigurationError.from_exception(excinfo.value)
    assert error.exit_code == 2
    assert any(f.startswith(field) for f in error.fields)


@pytest.mark.parametrize(
    ("document", "message"),
    [
        ({"m": 1}, "need b and m"),
        ({**SEXTIC, "J": 4}, "Bender–Dunne only"),
        ({**SEXTIC, "representation": "BD_A"}, "not defined"),
        ({**SEXTIC, "mode": "PhiSegmented"}, "does not apply"),
        ({"b": 1, "m": 1, "g": -1}, "positive"),
        ({"family": "BenderDunne", "s": 1, "J": 4, "b": 1}, "follows"),
        ({"family": "BenderDunne", "s": 1, "J": 4, "sigma": 1}, "sigma = 0"),
        (
            {
                "family": "BenderDunne",
                "s": 1,
                "J": 4,
                "oracle": {"method": "HarmonicBasis"},
            },
            "sextic only",
        ),
        ({"family": "BenderDunne", "s": 1, "J": 4, "m": -17}, "inconsistent"),
    ],
)
def test_invalid_potential(document: dict[str, Any], message: str) -> None:
    with pytest.raises(ValidationError, match=message):
        RunConfig.parse_obj(document)
