"""Rotational symmetry of trig curves, and rational approximation of ratios.

The whole analysis runs on the reduced integer frequencies n_k = f_k / g,
where g is the rational gcd of the frequencies.  The order of the rotation
group is d = gcd of the pairwise differences |n_j - n_k|; shifting the
parameter by one d-th of the period rotates the curve by 2*pi*(n_0 mod d)/d
about the origin.  A nonzero offset is a frequency-0 term and takes part in
the differences, which is how an off-center curve loses its symmetry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import NamedTuple

import numpy as np

from .curvecore import (
    TrigCurve,
    evaluate_many,
    exact_frequencies,
    frequency_gcd,
    period,
    sample,
    Polyline,
)
from .errors import EmptyCurveError, InvalidParamError, NonCommensurableError

TWO_PI = 2.0 * math.pi

# matches the canonicalize amplitude threshold: an offset this small is noise
OFFSET_EPS = 1e-15


@dataclass(frozen=True)
class SymmetryReport:
    """What detect_order found: order may be math.inf for a centered circle."""

    order: float
    rotation_angle: float
    param_shift: float
    reduced_frequencies: tuple[int, ...]
    verified: bool
    max_residual: float

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.order)


class VerifyResult(NamedTuple):
    ok: bool
    max_residual: float


def reduced_frequencies(curve: TrigCurve) -> tuple[Fraction, tuple[int, ...]]:
    """(g, n): frequencies are g*n_k with integer n_k, gcd(|n_k|) = 1.

    A nonzero offset appends a virtual integer frequency 0.
    """
    g = frequency_gcd(curve)
    ns = [int(f / g) for f in exact_frequencies(curve)]
    if math.hypot(*curve.offset) > OFFSET_EPS:
        ns.append(0)
    return g, tuple(ns)


def _rotated(points: np.ndarray, angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    return points @ rot.T


def detect_order(curve: TrigCurve) -> SymmetryReport:
    """Order of the rotation group mapping the curve onto itself.

    d = gcd of pairwise differences of the reduced integer frequencies;
    the parameter shift period/d realizes the rotation by
    2*pi*(n_0 mod d)/d.  A single component with zero offset is a circle:
    infinite order.  d = 1 means no nontrivial symmetry.
    """
    if not curve.components:
        raise EmptyCurveError("constant curve has no rotational symmetry order")
    g, ns = reduced_frequencies(curve)
    if len(ns) == 1:
        # a centered circle is invariant under every rotation
        return SymmetryReport(
            order=math.inf,
            rotation_angle=0.0,
            param_shift=0.0,
            reduced_frequencies=ns,
            verified=True,
            max_residual=0.0,
        )
    n0 = ns[0]
    d = reduce(math.gcd, (abs(n - n0) for n in ns[1:]))
    t = period(curve)
    angle = TWO_PI * (n0 % d) / d
    ok, residual = verify_order(curve, d)
    return SymmetryReport(
        order=float(d),
        rotation_angle=angle,
        param_shift=t / d,
        reduced_frequencies=ns,
        verified=ok,
        max_residual=residual,
    )


def verify_order(
    curve: TrigCurve,
    n: int,
    samples: int = 1024,
    tol: float = 1e-9,
) -> VerifyResult:
    """Numerically check invariance under rotation by 2*pi/n.

    Evaluates |z(u + shift) - R(2*pi/n) z(u)| at uniform parameters, using
    the parameter shift predicted by the reduced frequencies.  When n cannot
    divide the detected order the identity has no valid shift, so the naive
    shift period/n is used and the check fails loudly rather than erroring.
    """
    if n < 1:
        raise InvalidParamError(f"symmetry order must be >= 1, got {n}")
    if samples < 256:
        raise InvalidParamError(f"need >= 256 samples, got {samples}")
    angle = TWO_PI / n
    if not curve.components:
        # a single point: invariant only if it is the rotation center
        ox, oy = curve.offset
        rx, ry = _rotated(np.array([[ox, oy]]), angle)[0]
        residual = math.hypot(rx - ox, ry - oy)
        return VerifyResult(residual <= tol, float(residual))
    try:
        g, ns = reduced_frequencies(curve)
    except NonCommensurableError:
        return VerifyResult(False, math.inf)
    t = period(curve)
    if len(ns) == 1:
        # circle: solve f * shift = angle directly
        shift = angle / float(g * ns[0])
    else:
        n0 = ns[0]
        d = reduce(math.gcd, (abs(m - n0) for m in ns[1:]))
        if d % n == 0:
            # shift k periods/d so that k * (n0 mod d) = d/n (mod d)
            a = n0 % d
            k = ((d // n) * pow(a, -1, d)) % d if d > 1 else 0
            shift = t * k / d
        else:
            shift = t / n
    us = np.linspace(0.0, t, samples, endpoint=False)
    lhs = evaluate_many(curve, us + shift)
    rhs = _rotated(evaluate_many(curve, us), angle)
    residual = float(np.linalg.norm(lhs - rhs, axis=1).max())
    return VerifyResult(residual <= tol, residual)


def fundamental_arc(curve: TrigCurve, n: int, points_per_arc: int = 1024) -> Polyline:
    """Dense samples over one n-th of the period, u in [0, period/n].

    When n is the true order, the n copies of this arc rotated by multiples
    of the rotation angle tile the whole curve; any other n still yields a
    valid drawing primitive (overlapping or gappy rotated copies).  The arc
    grid divides the period grid evenly, so rotated copies of the samples
    land exactly on samples of the full curve.
    """
    if n < 1:
        raise InvalidParamError(f"arc count must be >= 1, got {n}")
    t = period(curve)
    return sample(curve, points_per_arc + 1, (0.0, t / n))


def rationalize(x: float, max_denominator: int) -> Fraction:
    """Best rational approximation of x with denominator <= max_denominator.

    Walks the continued-fraction convergents, then compares the final
    semiconvergent against the last convergent by exact error; a tie goes to
    the smaller denominator.  An x already representable within the bound is
    returned exactly.
    """
    if max_denominator < 1:
        raise InvalidParamError(f"max_denominator must be >= 1, got {max_denominator}")
    if not math.isfinite(x):
        raise InvalidParamError(f"cannot rationalize {x}")
    target = Fraction(x)
    if target.denominator <= max_denominator:
        return target
    p0, q0, p1, q1 = 0, 1, 1, 0
    num, den = target.numerator, target.denominator
    while True:
        a = num // den
        if q0 + a * q1 > max_denominator:
            break
        p0, q0, p1, q1 = p1, q1, p0 + a * p1, q0 + a * q1
        num, den = den, num - a * den
    k = (max_denominator - q0) // q1
    semi = Fraction(p0 + k * p1, q0 + k * q1)
    conv = Fraction(p1, q1)
    err_semi = abs(semi - target)
    err_conv = abs(conv - target)
    if err_semi < err_conv:
        return semi
    if err_semi == err_conv and semi.denominator < conv.denominator:
        return semi
    return conv


def rationalized_curve(curve: TrigCurve, max_denominator: int) -> TrigCurve:
    """Replace every float frequency by its best rational approximation."""
    from .curvecore import CircularComponent, canonicalize

    comps = []
    for c in curve.components:
        if c.is_exact:
            comps.append(c)
        else:
            comps.append(
                CircularComponent(
                    rationalize(float(c.frequency), max_denominator),
                    c.amplitude,
                    c.phase,
                )
            )
    return canonicalize(comps, curve.offset)
