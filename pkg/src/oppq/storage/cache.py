"""File-backed cache of spectral oracle results."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any

import structlog
from pydantic import ValidationError
from structlog.stdlib import BoundLogger

from ..config import config
from ..models.oracle import OracleConfig, OracleResult

__all__ = ["OracleCache", "cache_key"]


def cache_key(
    potential: dict[str, str], settings: OracleConfig, levels: int
) -> str:
    """SHA-256 of the canonical JSON of one oracle request."""
    document = {
        "potential": potential,
        "config": json.loads(settings.json()),
        "levels": levels,
    }
    canonical = json.dumps(document, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


class OracleCache:
    """Stores oracle results in a JSON file keyed by request hash.

    The file is read on first use and rewritten atomically on every update.

    Parameters
    ----------
    path
        Cache file. Created on the first store.
    logger
        Logger to use.
    """

    def __init__(self, path: Path, logger: BoundLogger | None = None) -> None:
        self._path = path
        self._logger = logger or structlog.get_logger(config.name)
        self._entries: dict[str, Any] | None = None

    def get(
        self, potential: dict[str, str], settings: OracleConfig, levels: int
    ) -> OracleResult | None:
        """Cached result for a request, or `None` on a miss."""
        key = cache_key(potential, settings, levels)
        entry = self._load().get(key)
        if entry is None:
            return None
        try:
            return OracleResult.parse_obj(entry)
        except ValidationError:
            self._logger.warning(f"Ignoring malformed cache entry {key}")
            return None

    def store(self, result: OracleResult, levels: int) -> None:
        """Add a result to the cache and write the file."""
        key = cache_key(result.potential, result.config, levels)
        entries = self._load()
        entries[key] = json.loads(result.json())
        self._path.parent.mkdir(parents=True, exist_ok=True)
        fd, name = tempfile.mkstemp(
            dir=self._path.parent, prefix=f".{self._path.name}."
        )
        try:
            with os.fdopen(fd, "w") as f:
                json.dump(entries, f, indent=2, sort_keys=True)
            Path(name).replace(self._path)
        except BaseException:
            Path(name).unlink(missing_ok=True)
            raise
        self._logger.debug(f"Stored oracle result {key} in {self._path}")

    def _load(self) -> dict[str, Any]:
        if self._entries is None:
            self._entries = {}
            if self._path.exists():
                try:
                    self._entries = json.loads(self._path.read_text())
                except json.JSONDecodeError:
                    msg = f"Oracle cache {self._path} is corrupt, ignoring it"
                    self._logger.warning(msg)
        return self._entries
