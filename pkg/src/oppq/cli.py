"""Command-line interface for oppq."""

from __future__ import annotations

import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, NoReturn, TypeVar

import click
import structlog
import yaml
from pydantic import ValidationError
from safir.logging import configure_logging
from structlog.stdlib import BoundLogger

from .config import config
from .exceptions import ConfigurationError, OPPQError
from .factory import Factory
from .models.oracle import OracleConfig, OracleMethod
from .models.report import PropertyStatus
from .models.run import OutputFormat, RunConfig
from .storage.export import moments_csv, quantizer_csv, quantizer_json

F = TypeVar("F", bound=Callable[..., Any])


def _run_options(command: F) -> F:
    """Add the config file, precision and potential options to a command."""
    options = [
        click.option(
            "-c",
            "--config",
            "config_file",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            envvar="OPPQ_CONFIG",
            help="JSON or YAML run document",
        ),
        click.option(
            "--digits",
            type=int,
            envvar="OPPQ_DIGITS",
            help="Working precision in decimal digits",
        ),
        click.option(
            "--family",
            type=click.Choice(["SexticAnharmonic", "BenderDunne"]),
            help="Potential family",
        ),
        click.option("--g", help="Sextic coupling"),
        click.option("--b", help="Quartic coefficient"),
        click.option("--m", help="Quadratic coefficient"),
        click.option("--s", help="Bender–Dunne parameter s"),
        click.option("--J", "J", type=int, help="Bender–Dunne level count J"),
        click.option("--gamma", help="Bender–Dunne indicial exponent"),
        click.option("--sigma", type=int, help="Parity sector, 0 or 1"),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _load_run(
    config_file: Path | None,
    overrides: dict[str, Any],
    extra: dict[str, Any] | None = None,
) -> RunConfig:
    """Merge the run document with command-line overrides and validate it.

    Raises
    ------
    ConfigurationError
        Raised if the document cannot be read or is invalid.
    """
    document: dict[str, Any] = {}
    if config_file:
        try:
            with config_file.open("r") as f:
                loaded = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Cannot parse {config_file}: {e}") from e
        if loaded is not None and not isinstance(loaded, dict):
            msg = f"{config_file} does not hold a mapping"
            raise ConfigurationError(msg)
        document = loaded or {}
    for key, value in {**overrides, **(extra or {})}.items():
        if value is not None:
            document[key] = value
    try:
        return RunConfig.parse_obj(document)
    except ValidationError as e:
        raise ConfigurationError.from_exception(e) from e


def _fail(logger: BoundLogger, exc: OPPQError) -> NoReturn:
    """Report an error and exit with its status."""
    logger.error(
        f"Run failed: {exc}", error=type(exc).__name__, stage=exc.stage
    )
    click.echo(f"Error: {exc}", err=True)
    sys.exit(exc.exit_code)


def _emit(text: str, output_file: Path | None) -> None:
    if output_file:
        output_file.write_text(text)
    else:
        click.echo(text, nl=False)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(message="%(version)s")
def main() -> None:
    """Orthogonal polynomial projection quantization."""
    configure_logging(
        name=config.name, profile=config.profile, log_level=config.log_level
    )
    # stdout carries the table artifact.
    for handler in logging.getLogger(config.name).handlers:
        if isinstance(handler, logging.StreamHandler):
            handler.setStream(sys.stderr)


@main.command()
@click.argument("topic", default=None, required=False, nargs=1)
@click.pass_context
def help(ctx: click.Context, topic: str | None) -> None:
    """Show help for any command."""
    # The help command implementation is taken from
    # https://www.burgundywall.com/post/having-click-help-subcommand
    if topic:
        if topic in main.commands:
            click.echo(main.commands[topic].get_help(ctx))
        else:
            raise click.UsageError(f"Unknown help topic {topic}", ctx)
    else:
        if not ctx.parent:
            raise RuntimeError("help somehow called without parent or topic")
        click.echo(ctx.parent.get_help())


@main.command()
@_run_options
@click.option(
    "--output",
    type=click.Choice([f.value for f in OutputFormat]),
    help="Format of the table artifact",
)
@click.option(
    "-o",
    "--output-file",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the table here instead of standard output",
)
@click.option("--n-min", "N_min", type=int, help="Smallest truncation order")
@click.option("--n-max", "N_max", type=int, help="Largest truncation order")
@click.option(
    "--oracle/--no-oracle",
    default=None,
    help="Compare with the spectral oracle",
)
def solve(
    config_file: Path | None,
    digits: int | None,
    output: str | None,
    output_file: Path | None,
    N_min: int | None,
    N_max: int | None,
    oracle: bool | None,
    **overrides: Any,
) -> None:
    """Find the OPPQ energies over a range of truncation orders."""
    logger = structlog.get_logger(config.name)
    extra = {
        "digits": digits,
        "output": output,
        "N_min": N_min,
        "N_max": N_max,
        "oracle": oracle,
    }
    try:
        run = _load_run(config_file, overrides, extra)
        factory = Factory(logger)
        result = factory.create_solver(run).solve()
        text = factory.create_writer(run.output).render(result)
    except OPPQError as e:
        _fail(logger, e)
    _emit(text, output_file)


@main.command("qes-poly")
@_run_options
@click.option(
    "--output",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
    help="Output format",
)
def qes_poly(
    config_file: Path | None,
    digits: int | None,
    output: str,
    **overrides: Any,
) -> None:
    """Print the quantizing polynomial of a QES potential and its roots."""
    logger = structlog.get_logger(config.name)
    try:
        run = _load_run(config_file, overrides, {"digits": digits})
        report = Factory(logger).create_solver(run).qes_poly()
    except OPPQError as e:
        _fail(logger, e)
    if output == "csv":
        click.echo(quantizer_csv(report), nl=False)
    else:
        click.echo(quantizer_json(report), nl=False)


@main.command()
@_run_options
@click.option(
    "--count",
    type=int,
    default=24,
    show_default=True,
    help="Number of moments",
)
@click.option(
    "--hankel/--no-hankel",
    default=False,
    help="Append the Hankel–Hadamard positivity profile",
)
def weights(
    config_file: Path | None,
    digits: int | None,
    count: int,
    hankel: bool,
    **overrides: Any,
) -> None:
    """Write the reference-weight moment table as CSV."""
    logger = structlog.get_logger(config.name)
    try:
        run = _load_run(config_file, overrides, {"digits": digits})
        solver = Factory(logger).create_solver(run)
        table = solver.weights(count)
        profile = solver.hankel_profile(table) if hankel else []
    except OPPQError as e:
        _fail(logger, e)
    click.echo(moments_csv(table), nl=False)
    if profile:
        click.echo("order,delta0,delta1")
        for order, delta0, delta1 in profile:
            click.echo(f"{order},{delta0},{delta1}")


@main.command()
@_run_options
@click.option("--levels", type=int, help="Levels per parity sector")
@click.option(
    "--method",
    type=click.Choice([m.value for m in OracleMethod]),
    help="Eigenvalue method",
)
def oracle(
    config_file: Path | None,
    digits: int | None,
    levels: int | None,
    method: str | None,
    **overrides: Any,
) -> None:
    """Print oracle eigenvalues with error estimates."""
    logger = structlog.get_logger(config.name)
    extra: dict[str, Any] = {"digits": digits, "levels": levels}
    try:
        run = _load_run(config_file, overrides, extra)
        if method:
            settings = run.oracle or OracleConfig()
            settings = settings.copy(update={"method": OracleMethod(method)})
            run = run.copy(update={"oracle": settings})
        result = Factory(logger).create_solver(run).oracle()
    except OPPQError as e:
        _fail(logger, e)
    click.echo("sigma,level,energy,error")
    for level in result.levels:
        click.echo(
            f"{level.sigma},{level.index},{level.energy:.10f},"
            f"{level.error:.2e}"
        )


@main.command()
@_run_options
@click.option(
    "--oracle/--no-oracle",
    default=True,
    show_default=True,
    help="Compare with the spectral oracle",
)
def verify(
    config_file: Path | None,
    digits: int | None,
    oracle: bool,
    **overrides: Any,
) -> None:
    """Run the property suite and print one line per property."""
    logger = structlog.get_logger(config.name)
    try:
        run = _load_run(config_file, overrides, {"digits": digits})
        solver = Factory(logger).create_solver(run)
        report = solver.verify(use_oracle=oracle)
    except OPPQError as e:
        _fail(logger, e)
    for prop in report.properties:
        line = f"{prop.status.value} {prop.name}"
        if prop.detail:
            line += f": {prop.detail}"
        click.echo(line)
    if report.failed:
        sys.exit(1)
    skipped = sum(
        p.status == PropertyStatus.skipped for p in report.properties
    )
    logger.debug(f"{skipped} properties skipped")
