"""Real-root isolation and refinement for energy polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..exceptions import NonConvergenceError
from .polynomial import EnergyPolynomial
from .precision import HPReal, Precision

_MAX_REFINE_ITERATIONS = 400
"""Iteration cap for safeguarded Newton refinement of a single root."""

__all__ = [
    "RootSet",
    "real_roots",
    "sign_variations",
    "sturm_sequence",
]


@dataclass(frozen=True)
class RootSet:
    """Real roots of a polynomial inside an interval.

    Attributes
    ----------
    roots
        Roots in ascending order, repeated according to multiplicity.
    residuals
        Magnitude of the polynomial at each root.
    """

    roots: tuple[HPReal, ...]
    residuals: tuple[HPReal, ...]

    def __len__(self) -> int:
        return len(self.roots)

    def distinct(self) -> list[HPReal]:
        """Return the roots without repetition."""
        result: list[HPReal] = []
        for root in self.roots:
            if not result or root != result[-1]:
                result.append(root)
        return result


def sturm_sequence(p: EnergyPolynomial) -> list[EnergyPolynomial]:
    """Build the Sturm sequence of a polynomial.

    Each member is scaled to unit coefficient norm. The sequence stops when
    a remainder is negligible relative to its predecessor, so near-multiple
    roots are treated as multiple roots and the last member approximates
    gcd(p, p′).

    Parameters
    ----------
    p
        Polynomial of degree at least one.

    Returns
    -------
    list of EnergyPolynomial
        The sequence p, p′, −rem(p, p′), …
    """
    tolerance = p.precision.root_tolerance
    sequence = [p.normalized(), p.derivative().normalized()]
    while sequence[-1].degree > 0:
        _, remainder = sequence[-2].divmod(sequence[-1])
        if remainder.norm() <= tolerance:
            break
        sequence.append((-remainder).normalized())
    return sequence


def sign_variations(sequence: list[EnergyPolynomial], x: Any) -> int:
    """Count sign changes of a Sturm sequence evaluated at ``x``."""
    count = 0
    previous = 0
    for member in sequence:
        value = member(x)
        if value == 0:
            continue
        sign = 1 if value > 0 else -1
        if previous and sign != previous:
            count += 1
        previous = sign
    return count


def _refine(
    p: EnergyPolynomial, lo: HPReal, hi: HPReal, precision: Precision
) -> HPReal:
    """Refine a simple root bracketed by ``(lo, hi]`` with safeguarded Newton.

    Newton steps that leave the bracket fall back to bisection, so the
    bracket shrinks every iteration.
    """
    dp = p.derivative()
    f_lo = p(lo)
    f_hi = p(hi)
    if f_hi == 0:
        return hi
    if f_lo == 0:
        return lo
    x = (lo + hi) / 2
    for _ in range(_MAX_REFINE_ITERATIONS):
        fx = p(x)
        if fx == 0:
            return x
        if (fx > 0) == (f_lo > 0):
            lo, f_lo = x, fx
        else:
            hi = x
        slope = dp(x)
        step_ok = False
        if slope != 0:
            candidate = x - fx / slope
            step_ok = lo < candidate < hi
        if not step_ok:
            candidate = (lo + hi) / 2
        scale = max(abs(candidate), 1)
        if abs(candidate - x) <= precision.epsilon * scale:
            return candidate
        if hi - lo <= precision.epsilon * scale:
            return (lo + hi) / 2
        x = candidate
    raise NonConvergenceError(
        precision.format(lo, 12),
        precision.format(hi, 12),
        _MAX_REFINE_ITERATIONS,
    )


def _is_root(p: EnergyPolynomial, x: HPReal, precision: Precision) -> bool:
    ctx = precision.ctx
    scale = sum(
        (abs(c) * ctx.power(abs(x), i) for i, c in enumerate(p.coefficients)),
        ctx.mpf(0),
    )
    return abs(p(x)) <= precision.root_tolerance * scale


def _multiplicity(
    gcd: EnergyPolynomial, root: HPReal, precision: Precision
) -> int:
    multiplicity = 1
    while gcd.degree > 0 and _is_root(gcd, root, precision):
        multiplicity += 1
        if gcd.degree == 1:
            break
        gcd = sturm_sequence(gcd)[-1]
    return multiplicity


def real_roots(p: EnergyPolynomial, interval: tuple[Any, Any]) -> RootSet:
    """Find every real root of a polynomial inside an interval.

    Roots are isolated by bisection on Sturm sign-variation counts and then
    refined on the square-free part of the polynomial. Roots closer than the
    merge tolerance are reported once per unit of multiplicity.

    Parameters
    ----------
    p
        Polynomial, not identically zero.
    interval
        Closed interval ``(lo, hi)`` with ``lo < hi``.

    Returns
    -------
    RootSet
        Roots in ascending order, repeated by multiplicity.

    Raises
    ------
    NonConvergenceError
        Raised if refinement of a root fails to converge.
    ValueError
        Raised if ``p`` is zero or the interval is empty.
    """
    if p.is_zero:
        raise ValueError("Cannot find roots of the zero polynomial")
    precision = p.precision
    ctx = precision.ctx
    lo = ctx.mpf(interval[0])
    hi = ctx.mpf(interval[1])
    if not lo < hi:
        raise ValueError(f"Empty interval [{interval[0]}, {interval[1]}]")
    if p.degree == 0:
        return RootSet((), ())

    sequence = sturm_sequence(p)
    gcd = sequence[-1]
    square_free = sequence[0]
    if gcd.degree > 0:
        square_free, _ = sequence[0].divmod(gcd)

    # Open the interval slightly below lo so a root at lo is counted.
    lo_open = lo - precision.epsilon * max(abs(lo), 1)
    merge = precision.merge_tolerance
    v_lo = sign_variations(sequence, lo_open)
    v_hi = sign_variations(sequence, hi)
    pending = [(lo_open, hi, v_lo, v_hi)]
    brackets: list[tuple[HPReal, HPReal, int]] = []
    while pending:
        a, b, v_a, v_b = pending.pop()
        count = v_a - v_b
        if count <= 0:
            continue
        if count == 1 or b - a <= merge * max(abs(a), 1):
            brackets.append((a, b, count))
            continue
        mid = (a + b) / 2
        v_mid = sign_variations(sequence, mid)
        pending.append((a, mid, v_a, v_mid))
        pending.append((mid, b, v_mid, v_b))

    roots: list[HPReal] = []
    for a, b, count in sorted(brackets, key=lambda item: item[0]):
        if count == 1:
            root = _refine(square_free, a, b, precision)
        else:
            root = (a + b) / 2
        root = min(max(root, lo), hi)
        multiplicity = count
        if gcd.degree > 0:
            multiplicity = count - 1 + _multiplicity(gcd, root, precision)
        roots.extend([root] * multiplicity)

    merged: list[HPReal] = []
    for root in roots:
        if merged and abs(root - merged[-1]) <= merge * max(abs(root), 1):
            merged.append(merged[-1])
        else:
            merged.append(root)
    residuals = tuple(abs(p(r)) for r in merged)
    return RootSet(tuple(merged), residuals)
