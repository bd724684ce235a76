"""Tests for the oppq command-line interface."""

from __future__ import annotations

from pathlib import Path

import pytest
from click.testing import CliRunner
from safir.logging import LogLevel

from oppq.cli import main
from oppq.config import config
from oppq.models.report import (
    PropertyResult,
    PropertyStatus,
    QESPolyReport,
    RootClass,
    SolveResult,
    VerifyReport,
)
from oppq.services.verify import PropertySuite

from .support.tables import BD_QES, EVEN_QES
from .support.util import assert_contains

RUN_CONFIG = """
family: SexticAnharmonic
g: 1
b: sqrt(8)
m: -13
sigma: 0
representation: PsiU
N_min: 4
N_max: 5
window: [-10, 70]
output: csv
"""

SEXTIC = ["--g", "1", "--b", "sqrt(8)", "--m=-13"]


@pytest.fixture
def run_config(tmp_path: Path) -> Path:
    path = tmp_path / "run.yaml"
    path.write_text(RUN_CONFIG)
    return path


def test_help() -> None:
    runner = CliRunner()
    result = runner.invoke(main, ["help"])
    assert result.exit_code == 0
    assert "solve" in result.output
    assert "qes-poly" in result.output

    result = runner.invoke(main, ["help", "verify"])
    assert result.exit_code == 0
    assert "--oracle" in result.output

    result = runner.invoke(main, ["help", "unknown"])
    assert result.exit_code == 2


def test_qes_poly() -> None:
    runner = CliRunner()
    result = runner.invoke(
        main, ["qes-poly", "--family", "BenderDunne", "--s", "1", "--J", "4"]
    )
    assert result.exit_code == 0
    report = QESPolyReport.parse_raw(result.stdout)
    assert report.n_star == 3
    assert report.sigma_star == 0
    assert len(report.coefficients) == 5
    assert max(abs(float(c)) for c in report.coefficients) == 1
    assert_contains([float(r) for r in report.roots], BD_QES, 1e-6)

    result = runner.invoke(main, ["qes-poly", "--output", "csv", *SEXTIC])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "kind,index,value"
    roots = [float(v.split(",")[2]) for v in lines if v.startswith("root,")]
    assert_contains(roots, EVEN_QES, 1e-6)


def test_qes_poly_not_qes() -> None:
    runner = CliRunner()
    result = runner.invoke(
        main, ["qes-poly", "--g", "1", "--b", "sqrt(8)", "--m=-14"]
    )
    assert result.exit_code == 4
    assert "not quasi-exactly solvable" in result.stderr


def test_invalid_configuration(run_config: Path) -> None:
    runner = CliRunner()
    result = runner.invoke(
        main, ["solve", "-c", str(run_config), "--digits", "29"]
    )
    assert result.exit_code == 2
    assert "digits" in result.stderr

    result = runner.invoke(main, ["solve", "--family", "BenderDunne"])
    assert result.exit_code == 2


def test_solve(run_config: Path, tmp_path: Path) -> None:
    runner = CliRunner()
    result = runner.invoke(main, ["solve", "-c", str(run_config)])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "N,level,energy,class"
    rows = [line.split(",") for line in lines[1:]]
    assert {row[0] for row in rows} == {"4", "5"}
    assert all(len(row) == 4 for row in rows)
    energies = [float(row[2]) for row in rows if row[0] == "5"]
    assert_contains(energies, (*EVEN_QES, 61.179448), 1e-6)

    # The same run gives the same table.
    again = runner.invoke(main, ["solve", "-c", str(run_config)])
    assert again.stdout == result.stdout

    output = tmp_path / "roots.json"
    args = ["solve", "-c", str(run_config), "--output", "json"]
    result = runner.invoke(main, [*args, "-o", str(output)])
    assert result.exit_code == 0
    assert result.stdout == ""
    solved = SolveResult.parse_raw(output.read_text())
    assert solved.schema_ == "oppq/1"
    assert solved.oracle is None
    assert solved.report.orders() == [4, 5]
    assert solved.report.energies_at(5) == pytest.approx(
        [float(row[2]) for row in rows if row[0] == "5"]
    )
    for entry in solved.report.entries:
        if entry.classification == RootClass.qes_exact:
            assert entry.delta is None
    assert {t.event for t in solved.timings} >= {"basis", "determinant"}


def test_weights() -> None:
    runner = CliRunner()
    result = runner.invoke(main, ["weights", "--count", "6", *SEXTIC])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "rho,value"
    assert len(lines) == 7
    assert float(lines[1].split(",")[1]) > 0

    result = runner.invoke(
        main, ["weights", "--count", "6", "--hankel", *SEXTIC]
    )
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[7] == "order,delta0,delta1"
    assert len(lines) == 11


def test_verify(
    run_config: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    def failing(self: PropertySuite) -> VerifyReport:
        status = PropertyStatus.failed
        prop = PropertyResult(name="orthonormality", status=status)
        return VerifyReport(properties=[prop])

    def passing(self: PropertySuite) -> VerifyReport:
        status = PropertyStatus.passed
        prop = PropertyResult(name="orthonormality", status=status)
        return VerifyReport(properties=[prop])

    runner = CliRunner()
    args = ["verify", "--no-oracle", "-c", str(run_config)]

    monkeypatch.setattr(PropertySuite, "run", failing)
    result = runner.invoke(main, args)
    assert result.exit_code == 1
    assert result.stdout == "FAIL orthonormality\n"

    monkeypatch.setattr(PropertySuite, "run", passing)
    result = runner.invoke(main, args)
    assert result.exit_code == 0
    assert result.stdout == "PASS orthonormality\n"


def test_verify_properties(run_config: Path) -> None:
    runner = CliRunner()
    result = runner.invoke(
        main, ["verify", "--no-oracle", "-c", str(run_config)]
    )
    lines = result.stdout.splitlines()
    assert len(lines) == 9
    assert "SKIP oracle_deltas: oracle disabled" in lines
    assert any(line.startswith("PASS factorization") for line in lines)


def test_logging(run_config: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(config, "log_level", LogLevel.DEBUG)
    runner = CliRunner()
    result = runner.invoke(main, ["solve", "-c", str(run_config)])
    assert result.exit_code == 0
    assert "Built degree" in result.stderr
    assert "Found roots" in result.stderr

    # Standard output carries the table and nothing else.
    lines = result.stdout.splitlines()
    assert lines[0] == "N,level,energy,class"
    assert all(len(line.split(",")) == 4 for line in lines)
    assert "Found roots" not in result.stdout
