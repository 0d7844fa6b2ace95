"""Curves built from finite sums of uniform circular motions.

A curve is z(u) = offset + sum_k amp_k * (cos(f_k*u + phi_k), sin(f_k*u + phi_k)).
Frequencies are exact rationals (fractions.Fraction); a plain float frequency
is legal but marks the component as inexact, and period/symmetry operations
refuse it until it has been rationalized explicitly (see symmetry module).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Union

import numpy as np

from . import kernels
from .errors import EmptyCurveError, InvalidParamError, NonCommensurableError

Rational = Fraction
FrequencyLike = Union[Fraction, int, float]

TWO_PI = 2.0 * math.pi

# additive noise floor of double precision; e^{i*0}+e^{i*pi} sums to ~1.2e-16
AMPLITUDE_EPS = 1e-15


def _coerce_frequency(f: FrequencyLike):
    """ints and Fractions stay exact; floats stay floats (inexact marker)."""
    if isinstance(f, Fraction):
        return f
    if isinstance(f, int):
        return Fraction(f)
    return float(f)


@dataclass(frozen=True)
class CircularComponent:
    """One uniform circular motion: amp * (cos(freq*u + phase), sin(...))."""

    frequency: FrequencyLike
    amplitude: float
    phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "frequency", _coerce_frequency(self.frequency))

    @property
    def is_exact(self) -> bool:
        return isinstance(self.frequency, Fraction)


@dataclass(frozen=True)
class TrigCurve:
    """Finite sum of circular components plus a constant offset point."""

    components: tuple[CircularComponent, ...]
    offset: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        ox, oy = self.offset
        object.__setattr__(self, "offset", (float(ox), float(oy)))

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for c in self.components)

    def frequencies(self) -> tuple[FrequencyLike, ...]:
        return tuple(c.frequency for c in self.components)

    @cached_property
    def _arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        freqs = np.array([float(c.frequency) for c in self.components])
        amps = np.array([c.amplitude for c in self.components])
        phases = np.array([c.phase for c in self.components])
        for a in (freqs, amps, phases):
            a.flags.writeable = False
        return freqs, amps, phases


@dataclass(frozen=True)
class Curve3D:
    """Planar curve lifted to space by a linear drift: p(u) = (x,y,0) + u*drift."""

    base: TrigCurve
    drift: tuple[float, float, float]

    def __post_init__(self):
        dx, dy, dz = self.drift
        object.__setattr__(self, "drift", (float(dx), float(dy), float(dz)))


@dataclass(frozen=True, eq=False)
class Polyline:
    """Discrete samples of a curve: points (n,2) or (n,3), matching params."""

    points: np.ndarray
    params: np.ndarray
    closed: bool = False

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=float)
        us = np.ascontiguousarray(self.params, dtype=float)
        if pts.shape[0] != us.shape[0] or pts.shape[0] < 2:
            raise InvalidParamError("polyline needs matching points/params, len >= 2")
        if not np.all(np.diff(us) > 0):
            raise InvalidParamError("polyline params must be strictly increasing")
        pts.flags.writeable = False
        us.flags.writeable = False
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "params", us)

    def __len__(self) -> int:
        return int(self.points.shape[0])


def _component_from_complex(frequency: FrequencyLike, coeff: complex) -> CircularComponent:
    phase = math.fmod(cmath.phase(coeff), TWO_PI)
    if phase < 0.0:
        phase += TWO_PI
    return CircularComponent(frequency, abs(coeff), phase)


def canonicalize(
    components: Iterable[CircularComponent],
    offset: tuple[float, float] = (0.0, 0.0),
) -> TrigCurve:
    """Merge equal frequencies, drop vanishing amplitudes, fold freq 0 into offset.

    Equal-frequency components add as complex coefficients amp*e^{i*phase}.
    Amplitudes below 1e-15 after merging are dropped; a frequency-0 component
    is a constant and moves into the offset.  Components come out sorted by
    frequency, so canonicalize is idempotent.
    """
    buckets: dict = {}
    reps: dict = {}
    ox, oy = float(offset[0]), float(offset[1])
    for comp in components:
        f = _coerce_frequency(comp.frequency)
        if f in buckets:
            buckets[f].append(comp)
            # an exact frequency wins over a float that compares equal to it
            if isinstance(f, Fraction) and not isinstance(reps[f], Fraction):
                reps[f] = f
        else:
            buckets[f] = [comp]
            reps[f] = f
    out = []
    for f, bucket in buckets.items():
        if len(bucket) == 1 and bucket[0].amplitude >= 0.0:
            # no merge needed: keep amplitude/phase bit-exact so that
            # canonicalize is idempotent
            amp = float(bucket[0].amplitude)
            phase = math.fmod(bucket[0].phase, TWO_PI)
            if phase < 0.0:
                phase += TWO_PI
        else:
            coeff = sum(c.amplitude * cmath.exp(1j * c.phase) for c in bucket)
            amp = abs(coeff)
            phase = math.fmod(cmath.phase(coeff), TWO_PI)
            if phase < 0.0:
                phase += TWO_PI
        if amp < AMPLITUDE_EPS:
            continue
        if f == 0:
            ox += amp * math.cos(phase)
            oy += amp * math.sin(phase)
            continue
        out.append(CircularComponent(reps[f], amp, phase))
    out.sort(key=lambda c: c.frequency)
    return TrigCurve(tuple(out), (ox, oy))


def evaluate_many(curve: TrigCurve, us: np.ndarray) -> np.ndarray:
    """Points of the curve at an array of parameters, shape (n, 2)."""
    us = np.ascontiguousarray(us, dtype=float)
    freqs, amps, phases = curve._arrays
    return kernels.trig_eval(us, freqs, amps, phases, curve.offset[0], curve.offset[1])


def evaluate(curve: TrigCurve, u: float) -> tuple[float, float]:
    pt = evaluate_many(curve, np.array([float(u)]))[0]
    return (float(pt[0]), float(pt[1]))


def velocity_many(curve: TrigCurve, us: np.ndarray) -> np.ndarray:
    """Exact derivative dz/du at an array of parameters, shape (n, 2)."""
    us = np.ascontiguousarray(us, dtype=float)
    freqs, amps, phases = curve._arrays
    return kernels.trig_velocity(us, freqs, amps, phases)


def velocity(curve: TrigCurve, u: float) -> tuple[float, float]:
    v = velocity_many(curve, np.array([float(u)]))[0]
    return (float(v[0]), float(v[1]))


def exact_frequencies(curve: TrigCurve) -> tuple[Fraction, ...]:
    """All frequencies as Fractions, or NonCommensurableError if any is a float."""
    inexact = [c.frequency for c in curve.components if not c.is_exact]
    if inexact:
        raise NonCommensurableError(
            f"curve carries inexact float frequencies {inexact}; "
            "rationalize them before asking for a period or symmetry"
        )
    return tuple(c.frequency for c in curve.components)


def frequency_gcd(curve: TrigCurve) -> Fraction:
    """Greatest rational g with every frequency an integer multiple of g."""
    freqs = exact_frequencies(curve)
    if not freqs:
        raise EmptyCurveError("constant curve has no frequency gcd")
    num = reduce(math.gcd, (abs(f.numerator) for f in freqs))
    den = reduce(math.lcm, (f.denominator for f in freqs))
    return Fraction(num, den)


def period(curve: TrigCurve) -> float:
    """Smallest T > 0 with z(u + T) = z(u): 2*pi over the frequency gcd."""
    g = frequency_gcd(curve)
    return TWO_PI * g.denominator / g.numerator


def sample(
    curve: TrigCurve,
    n: int,
    u_range: tuple[float, float] = (0.0, TWO_PI),
) -> Polyline:
    """n uniform samples over [u0, u1] inclusive of both endpoints."""
    u0, u1 = float(u_range[0]), float(u_range[1])
    if n < 2:
        raise InvalidParamError(f"need n >= 2 samples, got {n}")
    if not u0 < u1:
        raise InvalidParamError(f"need u0 < u1, got [{u0}, {u1}]")
    us = np.linspace(u0, u1, n)
    pts = evaluate_many(curve, us)
    return Polyline(pts, us, closed=_is_closed_range(curve, u0, u1, pts[0], pts[-1]))


def _is_closed_range(curve, u0, u1, p0, p1) -> bool:
    if math.hypot(p1[0] - p0[0], p1[1] - p0[1]) >= 1e-9:
        return False
    try:
        t = period(curve)
    except (NonCommensurableError, EmptyCurveError):
        return False
    winds = (u1 - u0) / t
    return abs(winds - round(winds)) < 1e-9 and round(winds) >= 1


def min_speed(curve: TrigCurve) -> tuple[float, float]:
    """Global minimum of |velocity| over one period: (u*, speed).

    Dense scan (4096 points) finds the basin; golden-section on speed^2
    refines u* to 1e-10.  Zero minimum speed means a cusp (epicycloid-like),
    positive means the trace is regular (epitrochoid-like).
    """
    if not curve.components:
        raise EmptyCurveError("min_speed needs at least one component")
    t = period(curve)
    n = 4096
    us = np.linspace(0.0, t, n, endpoint=False)
    v = velocity_many(curve, us)
    sq = (v * v).sum(axis=1)
    i = int(np.argmin(sq))
    lo = us[i] - t / n
    hi = us[i] + t / n

    def f(u):
        vx, vy = velocity(curve, u)
        return vx * vx + vy * vy

    u_star = _golden_min(f, lo, hi, tol=1e-10)
    return u_star, math.sqrt(f(u_star))


def _golden_min(f, lo, hi, tol):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2.0


# ---------------------------------------------------------------------------
# 3D lift


def lift3d(curve: TrigCurve, drift: tuple[float, float, float]) -> Curve3D:
    return Curve3D(curve, drift)


def evaluate3_many(curve3: Curve3D, us: np.ndarray) -> np.ndarray:
    us = np.ascontiguousarray(us, dtype=float)
    flat = evaluate_many(curve3.base, us)
    out = np.empty((us.shape[0], 3))
    out[:, 0] = flat[:, 0] + us * curve3.drift[0]
    out[:, 1] = flat[:, 1] + us * curve3.drift[1]
    out[:, 2] = us * curve3.drift[2]
    return out


def evaluate3(curve3: Curve3D, u: float) -> tuple[float, float, float]:
    p = evaluate3_many(curve3, np.array([float(u)]))[0]
    return (float(p[0]), float(p[1]), float(p[2]))


def velocity3_many(curve3: Curve3D, us: np.ndarray) -> np.ndarray:
    us = np.ascontiguousarray(us, dtype=float)
    flat = velocity_many(curve3.base, us)
    out = np.empty((us.shape[0], 3))
    out[:, 0] = flat[:, 0] + curve3.drift[0]
    out[:, 1] = flat[:, 1] + curve3.drift[1]
    out[:, 2] = curve3.drift[2]
    return out


def sample3(
    curve3: Curve3D,
    n: int,
    u_range: tuple[float, float] = (0.0, TWO_PI),
) -> Polyline:
    """3D analogue of sample; closed only when the drift brings the ends together."""
    u0, u1 = float(u_range[0]), float(u_range[1])
    if n < 2:
        raise InvalidParamError(f"need n >= 2 samples, got {n}")
    if not u0 < u1:
        raise InvalidParamError(f"need u0 < u1, got [{u0}, {u1}]")
    us = np.linspace(u0, u1, n)
    pts = evaluate3_many(curve3, us)
    dist = float(np.linalg.norm(pts[-1] - pts[0]))
    closed = dist < 1e-9 and _is_closed_range(curve3.base, u0, u1, pts[0, :2], pts[-1, :2])
    return Polyline(pts, us, closed=closed)


# ---------------------------------------------------------------------------
# Presets


def unit_orbit() -> TrigCurve:
    """(cos u, sin u): one planet on the unit circle at unit angular speed."""
    return canonicalize([CircularComponent(1, 1.0)])


def second_planet(r: float, h: FrequencyLike) -> TrigCurve:
    """r * (cos(u/h), sin(u/h)): circular orbit of radius r and period h cycles.

    Exact h (int or Fraction) gives an exact frequency 1/h; a float h gives
    a float frequency that must be rationalized before symmetry analysis.
    """
    if not r > 0:
        raise InvalidParamError(f"radius must be positive, got {r}")
    if h == 0:
        raise InvalidParamError("period h must be nonzero")
    if isinstance(h, (int, Fraction)) and not isinstance(h, bool):
        freq: FrequencyLike = Fraction(1) / Fraction(h)
    else:
        freq = 1.0 / float(h)
    return canonicalize([CircularComponent(freq, float(r))])


def eq3(a: FrequencyLike, b: FrequencyLike, c: float) -> TrigCurve:
    """(cos u, sin u) + 1/3 (cos au, sin au) + 1/2 (sin bu, c cos bu).

    The third summand is not a circular motion when c != 1; by Euler's
    formula sin(bu) + i*c*cos(bu) = (i(c-1)/2) e^{ibu} + (i(c+1)/2) e^{-ibu},
    so it splits into counter-rotating components at frequencies +b and -b.
    For c = 1 the +b part vanishes and the whole curve is tricircular.
    """
    a = _coerce_frequency(a)
    b = _coerce_frequency(b)
    c = float(c)
    neg_b = -b if isinstance(b, Fraction) else -float(b)
    comps = [
        CircularComponent(1, 1.0),
        CircularComponent(a, 1.0 / 3.0),
        _component_from_complex(b, 1j * (c - 1.0) / 4.0),
        _component_from_complex(neg_b, 1j * (c + 1.0) / 4.0),
    ]
    return canonicalize(comps)


def tricircular(
    r1: float,
    f1: FrequencyLike,
    r2: float,
    f2: FrequencyLike,
    r3: float,
    f3: FrequencyLike,
) -> TrigCurve:
    """Sum of three circular motions with zero phases: the general chain of three."""
    for r in (r1, r2, r3):
        if not r > 0:
            raise InvalidParamError(f"radii must be positive, got {r}")
    return canonicalize(
        [
            CircularComponent(f1, float(r1)),
            CircularComponent(f2, float(r2)),
            CircularComponent(f3, float(r3)),
        ]
    )
