"""Tests for the oracle result cache."""

from __future__ import annotations

import json
from pathlib import Path

from oppq.models.oracle import (
    OracleConfig,
    OracleLevel,
    OracleMethod,
    OracleResult,
)
from oppq.storage.cache import OracleCache, cache_key

POTENTIAL = {"family": "SexticAnharmonic", "g": "1", "m": "-13"}


def make_result(settings: OracleConfig) -> OracleResult:
    levels = [
        OracleLevel(index=0, sigma=0, energy=-4.701631, error=2e-9),
        OracleLevel(index=0, sigma=1, energy=-3.1, error=3e-9),
    ]
    return OracleResult(potential=POTENTIAL, config=settings, levels=levels)


def test_key() -> None:
    settings = OracleConfig()
    key = cache_key(POTENTIAL, settings, 8)
    assert key == cache_key(dict(reversed(POTENTIAL.items())), settings, 8)
    assert key != cache_key(POTENTIAL, settings, 9)
    harmonic = OracleConfig(method=OracleMethod.harmonic)
    assert key != cache_key(POTENTIAL, harmonic, 8)


def test_store_and_get(tmp_path: Path) -> None:
    path = tmp_path / "cache" / "oracle.json"
    settings = OracleConfig(extent=7.5)
    result = make_result(settings)

    cache = OracleCache(path)
    assert cache.get(POTENTIAL, settings, 8) is None
    cache.store(result, 8)
    assert path.exists()
    assert cache.get(POTENTIAL, settings, 8) == result
    assert cache.get(POTENTIAL, settings, 4) is None
    assert cache.get(POTENTIAL, OracleConfig(), 8) is None

    # A fresh cache reads what the first one wrote.
    assert OracleCache(path).get(POTENTIAL, settings, 8) == result
    assert list(tmp_path.joinpath("cache").iterdir()) == [path]


def test_corrupt_file(tmp_path: Path) -> None:
    path = tmp_path / "oracle.json"
    path.write_text("{not json")
    settings = OracleConfig()
    cache = OracleCache(path)
    assert cache.get(POTENTIAL, settings, 8) is None

    # Storing replaces the corrupt file.
    cache.store(make_result(settings), 8)
    assert len(json.loads(path.read_text())) == 1


def test_malformed_entry(tmp_path: Path) -> None:
    path = tmp_path / "oracle.json"
    settings = OracleConfig()
    key = cache_key(POTENTIAL, settings, 8)
    path.write_text(json.dumps({key: {"levels": "none"}}))
    assert OracleCache(path).get(POTENTIAL, settings, 8) is None
