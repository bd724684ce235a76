"""Utility functions for tests."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Any

from oppq.models.potential import Family, QuantizationMode, Representation
from oppq.services.benderdunne import build_quantizer
from oppq.services.potential import PotentialSpec
from oppq.services.quantizer import (
    build_determinant,
    factor_out_qes,
    make_problem,
)
from oppq.services.roots import real_roots

__all__ = [
    "assert_contains",
    "determinant_roots",
    "quotient_roots",
]


def assert_contains(
    values: Iterable[Any], expected: Sequence[float], tolerance: float
) -> None:
    """Check that every expected energy is within tolerance of some value."""
    found = [float(v) for v in values]
    for energy in expected:
        closest = min(found, key=lambda v: abs(v - energy), default=None)
        assert closest is not None, f"no roots, expected {energy}"
        assert abs(closest - energy) < tolerance, (
            f"expected {energy}, closest root {closest}"
        )


def determinant_roots(
    spec: PotentialSpec,
    representation: Representation,
    N: int,
    window: tuple[Any, Any],
    mode: QuantizationMode | None = None,
) -> list[float]:
    """Distinct roots of D_N(E) inside a window, in double precision."""
    problem = make_problem(spec, representation, N, mode)
    determinant = build_determinant(problem, N)
    return [float(r) for r in real_roots(determinant, window).distinct()]


def quotient_roots(
    spec: PotentialSpec, N: int, window: tuple[Any, Any]
) -> list[float]:
    """Roots of the segmented determinant with the QES factor removed.

    Sextic potentials use the Φ representation and Bender–Dunne potentials
    the Bessis one.
    """
    if spec.family == Family.bender_dunne:
        problem = make_problem(spec, Representation.bd_bessis, N)
    else:
        problem = make_problem(
            spec, Representation.phi_nu, N, QuantizationMode.phi_segmented
        )
    determinant = build_determinant(problem, N)
    quotient = factor_out_qes(determinant, build_quantizer(spec))
    return [float(r) for r in real_roots(quotient, window).distinct()]
