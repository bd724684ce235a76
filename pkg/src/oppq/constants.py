"""Global constants for oppq."""

from __future__ import annotations

__all__ = [
    "DEFAULT_DIGITS",
    "DEFAULT_GUARD_DIGITS",
    "DEFAULT_WINDOW",
    "MIN_DIGITS",
    "MOMENT_MARGIN",
    "OMEGA_DECAY_START",
    "ORACLE_DECAY_ACTION",
    "ORACLE_DELTA_TOLERANCE",
    "ORACLE_REFINEMENTS",
    "QES_MIN_ORDERS",
    "QUADRATURE_TAIL_DIGITS",
    "SCHEMA_VERSION",
    "TABLE_DECIMALS",
    "WINDOW_MARGIN",
    "WINDOW_SCALE",
    "ZERO_MOMENT_RATIO",
]

DEFAULT_DIGITS = 60
"""Default working precision in decimal digits."""

DEFAULT_GUARD_DIGITS = 40
"""Extra digits carried internally beyond the requested precision.

Ξ coefficients and Hankel-type contractions lose roughly 1.2 digits per
polynomial order, so the guard covers orthonormal bases up to J ≈ 40 at the
default precision.
"""

MIN_DIGITS = 30
"""Smallest accepted working precision."""

MOMENT_MARGIN = 4
"""Extra moments generated beyond the 2J + 2 needed for a degree-J basis."""

QUADRATURE_TAIL_DIGITS = 5
"""Digits beyond working precision by which the truncated tail must vanish."""

QES_MIN_ORDERS = 3
"""Consecutive truncation orders over which a QES root must be constant."""

DEFAULT_WINDOW = ("-50", "150")
"""Energy window used when neither the run nor the oracle supplies one."""

WINDOW_MARGIN = 10
"""Distance below the lowest oracle level where the default window starts."""

WINDOW_SCALE = 1.5
"""Factor on the highest oracle level giving the top of the default window."""

TABLE_DECIMALS = 6
"""Decimals shown for energies in pretty tables."""

SCHEMA_VERSION = "oppq/1"
"""Schema identifier written into JSON documents."""

ORACLE_DECAY_ACTION = 30.0
"""WKB action beyond the turning point at which the oracle grid ends."""

ORACLE_REFINEMENTS = 3
"""Grid spacings h, h/2, h/4 used by the oracle's Richardson extrapolation."""

ORACLE_DELTA_TOLERANCE = 1e-3
"""Largest accepted gap between the lowest converging root and the oracle."""

ZERO_MOMENT_RATIO = 1e-4
"""Bound on |ν(ρ)|/|ν(n*+1)|, ρ ≤ n*, for non-QES states of the QES sector."""

OMEGA_DECAY_START = 10
"""Order from which projection coefficients must decrease strictly."""
