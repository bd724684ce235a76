"""Configuration definition."""

from __future__ import annotations

from pathlib import Path

from pydantic import BaseSettings, Field, validator
from safir.logging import LogLevel, Profile

from .constants import DEFAULT_DIGITS, DEFAULT_GUARD_DIGITS, MIN_DIGITS

__all__ = [
    "Configuration",
    "config",
]


class Configuration(BaseSettings):
    """Configuration for oppq."""

    digits: int = Field(
        DEFAULT_DIGITS,
        title="Working precision in decimal digits",
        description=(
            "Default precision for every computation session. Runs may"
            " override it. Root tolerances are derived from it, so it is the"
            " number of digits the results can be trusted to."
        ),
        env="OPPQ_DIGITS",
        example=60,
    )

    guard_digits: int = Field(
        DEFAULT_GUARD_DIGITS,
        title="Extra internal digits",
        description=(
            "Digits carried internally beyond ``digits`` to absorb the"
            " cancellation in moment contractions and Hankel forms."
        ),
        env="OPPQ_GUARD_DIGITS",
        example=40,
    )

    oracle_cache: Path | None = Field(
        None,
        title="Path to the JSON cache of oracle results",
        description=(
            "If set, spectral oracle results are stored in and reused from"
            " this file, keyed by the potential and oracle settings."
        ),
        env="OPPQ_ORACLE_CACHE",
        example="/var/cache/oppq/oracle.json",
    )

    name: str = Field(
        "oppq",
        title="Name of application",
        description="Used as the logger name.",
        env="SAFIR_NAME",
    )

    profile: Profile = Field(
        Profile.development,
        title="Application logging profile",
        env="SAFIR_PROFILE",
    )

    log_level: LogLevel = Field(
        LogLevel.INFO,
        title="Log level of the application's logger",
        env="SAFIR_LOG_LEVEL",
    )

    @validator("digits")
    def _validate_digits(cls, v: int) -> int:
        if v < MIN_DIGITS:
            raise ValueError(f"must be at least {MIN_DIGITS}")
        return v

    @validator("guard_digits")
    def _validate_guard_digits(cls, v: int) -> int:
        if v < 0:
            raise ValueError("must not be negative")
        return v


config = Configuration()
"""Configuration for oppq."""
