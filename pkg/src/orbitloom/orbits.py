"""Toy solar system: circular coplanar orbits composed into chains.

Lengths are AU (1 AU = 149.6e6 km, the Earth row of the built-in table),
times are terrestrial years.  A chain is a sequence of links, each a
uniform circular motion around the tip of the previous one: planet around
the Sun, moon around the planet, orbiter around the moon.  Chains convert
to trig curves with frequency direction/period, which is where the
rationalization question becomes unavoidable: table periods are decimal
floats, and every symmetry statement depends on how they are rounded.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .curvecore import (
    CircularComponent,
    FrequencyLike,
    TrigCurve,
    canonicalize,
)
from .errors import InvalidParamError
from .symmetry import rationalize

AU_KM = 149.6e6

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PlanetRecord:
    name: str
    orbit_radius_km: float
    period_years: float

    @property
    def radius_au(self) -> float:
        return self.orbit_radius_km / AU_KM


PLANETS: tuple[PlanetRecord, ...] = (
    PlanetRecord("Mercury", 57.91e6, 0.2408),
    PlanetRecord("Venus", 108.2e6, 0.6152),
    PlanetRecord("Earth", 149.6e6, 1.0),
    PlanetRecord("Mars", 227.9e6, 1.8808),
    PlanetRecord("Jupiter", 778.5e6, 11.862),
    PlanetRecord("Saturn", 1.434e9, 29.457),
    PlanetRecord("Uranus", 2.871e9, 84.018),
    PlanetRecord("Neptune", 4.495e9, 164.78),
)


def planet_table() -> tuple[PlanetRecord, ...]:
    return PLANETS


def lookup(name: str) -> PlanetRecord:
    for p in PLANETS:
        if p.name.lower() == name.strip().lower():
            return p
    raise InvalidParamError(f"unknown planet {name!r}")


class Kepler3Report(NamedTuple):
    ratios: tuple[tuple[str, float], ...]
    max_deviation: float


def kepler3_residuals() -> Kepler3Report:
    """period^2 / radius_au^3 per planet; exactly 1 would be Kepler's 3rd law."""
    ratios = tuple(
        (p.name, p.period_years**2 / p.radius_au**3) for p in PLANETS
    )
    max_dev = max(abs(r - 1.0) for _, r in ratios)
    return Kepler3Report(ratios, max_dev)


@dataclass(frozen=True)
class ChainLink:
    """One circular stage: radius around the parent, period in years."""

    radius: float
    period: FrequencyLike
    direction: int = 1
    initial_phase: float = 0.0

    def __post_init__(self):
        if self.radius < 0:
            raise InvalidParamError(f"link radius must be >= 0, got {self.radius}")
        if not self.period > 0:
            raise InvalidParamError(f"link period must be > 0, got {self.period}")
        if self.direction not in (1, -1):
            raise InvalidParamError(f"direction must be +1 or -1, got {self.direction}")


@dataclass(frozen=True)
class OrbitChain:
    links: tuple[ChainLink, ...]

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(self.links))
        if not self.links:
            raise InvalidParamError("chain needs at least one link")


def planet_chain(name: str, direction: int = 1, initial_phase: float = 0.0) -> OrbitChain:
    """Single-link chain for one planet: radius in AU, period from the table."""
    p = lookup(name)
    period: FrequencyLike = p.period_years
    if period == int(period):
        period = int(period)
    return OrbitChain((ChainLink(p.radius_au, period, direction, initial_phase),))


def _link_frequency(link: ChainLink, max_denominator: Optional[int]):
    if isinstance(link.period, (int, Fraction)):
        freq: FrequencyLike = Fraction(link.direction) / Fraction(link.period)
    elif max_denominator is not None:
        freq = link.direction / rationalize(float(link.period), max_denominator)
    else:
        freq = link.direction / float(link.period)
    return freq


def chain_to_curve(chain: OrbitChain, max_denominator: Optional[int] = None) -> TrigCurve:
    """One component per link: amplitude = radius, frequency = direction/period.

    Exact periods (int or Fraction) give exact frequencies.  Float periods
    give float frequencies unless max_denominator is set, in which case each
    period is rationalized first; the choice of max_denominator decides
    which symmetry the composed curve ends up with.
    """
    comps = [
        CircularComponent(
            _link_frequency(link, max_denominator), link.radius, link.initial_phase
        )
        for link in chain.links
    ]
    return canonicalize(comps)


def ephemeris(chain: OrbitChain, t: float) -> tuple[float, float]:
    """Position at time t in years, summed link by link."""
    x = y = 0.0
    for link in chain.links:
        ang = TWO_PI * link.direction * t / float(link.period) + link.initial_phase
        x += link.radius * math.cos(ang)
        y += link.radius * math.sin(ang)
    return (x, y)


def ephemeris3(
    chain: OrbitChain, t: float, drift: tuple[float, float, float]
) -> tuple[float, float, float]:
    """Position with the whole system drifting linearly (the moving Sun).

    drift is AU per year.  Note the curve parameter u runs 2*pi per year,
    so a Curve3D built from this chain needs its drift scaled by 1/(2*pi)
    to trace the same path.
    """
    x, y = ephemeris(chain, t)
    return (x + t * drift[0], y + t * drift[1], t * drift[2])


def relative_view(
    target: OrbitChain,
    observer: Optional[OrbitChain] = None,
    max_denominator: Optional[int] = None,
) -> TrigCurve:
    """Curve of target as seen from observer (None = the Sun at the origin).

    The difference of two chain positions is itself a sum of circular
    motions: the observer's components enter with phase shifted by pi.
    """
    comps = list(chain_to_curve(target, max_denominator).components)
    if observer is not None:
        for c in chain_to_curve(observer, max_denominator).components:
            comps.append(
                CircularComponent(c.frequency, c.amplitude, c.phase + math.pi)
            )
    return canonicalize(comps)


def load_planet_table(text: str) -> tuple[PlanetRecord, ...]:
    """Parse a JSON array of {name, orbit_radius_km, period_years} records.

    Lets users extend the built-in table with moons or dwarf planets.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParamError(f"planet table is not valid JSON: {exc}") from exc
    if not isinstance(data, list) or not data:
        raise InvalidParamError("planet table must be a nonempty JSON array")
    records = []
    for row in data:
        try:
            rec = PlanetRecord(
                str(row["name"]),
                float(row["orbit_radius_km"]),
                float(row["period_years"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidParamError(f"bad planet row {row!r}") from exc
        if rec.orbit_radius_km <= 0 or rec.period_years <= 0:
            raise InvalidParamError(
                f"planet {rec.name!r} needs positive radius and period"
            )
        records.append(rec)
    return tuple(records)


def planets_to_json() -> str:
    """The built-in table as a JSON document (used by the HTTP service)."""
    return json.dumps(
        [
            {
                "name": p.name,
                "orbit_radius_km": p.orbit_radius_km,
                "radius_au": p.radius_au,
                "period_years": p.period_years,
            }
            for p in PLANETS
        ]
    )
