"""Component factory for oppq."""

from __future__ import annotations

import structlog
from structlog.stdlib import BoundLogger

from .config import config
from .models.run import OutputFormat, RunConfig
from .services.solver import Solver
from .storage.cache import OracleCache
from .storage.export import ReportWriter

__all__ = ["Factory"]


class Factory:
    """Component factory for oppq.

    Constructs the components of a command-line run on demand.

    Parameters
    ----------
    logger
        Logger shared by every component.
    """

    def __init__(self, logger: BoundLogger | None = None) -> None:
        self._logger = logger if logger else structlog.get_logger(config.name)

    def create_oracle_cache(self) -> OracleCache | None:
        """Create the oracle cache if one is configured.

        Returns
        -------
        OracleCache or None
            Newly-created cache, or `None` if ``OPPQ_ORACLE_CACHE`` is unset.
        """
        if not config.oracle_cache:
            return None
        return OracleCache(config.oracle_cache, self._logger)

    def create_solver(self, run: RunConfig) -> Solver:
        """Create the pipeline for a run document.

        Parameters
        ----------
        run
            Validated run document.

        Returns
        -------
        Solver
            Newly-created pipeline.
        """
        return Solver(run, self._logger, self.create_oracle_cache())

    def create_writer(self, output: OutputFormat) -> ReportWriter:
        """Create a writer for solve results."""
        return ReportWriter(output)
