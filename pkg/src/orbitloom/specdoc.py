"""Serialized curve descriptions shared by the CLI and the HTTP service.

A curve document is a JSON object in exactly one of three shapes:

  {"preset": {"name": "eq3", "params": [6, 14, 1]}}
  {"components": [{"freq_num": 1, "freq_den": 1, "amplitude": 1.0,
                   "phase": 0.0}], "offset": [0.0, 0.0]}
  {"chain": {"links": [{"radius": 1.0, "period": 1, "direction": 1,
                        "initial_phase": 0.0}], "max_denominator": 100}}

plus an optional "drift": [x, y, z] lifting the curve to 3D.  Rational
values travel as an integer, a [numerator, denominator] pair, or a "p/q"
string; bare floats are rejected wherever exactness matters (frequencies,
preset frequency ratios).  Chain periods are the one deliberate exception:
they may be floats, because rationalizing measured periods is the caller's
explicit decision via max_denominator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional, Union

from .curvecore import (
    CircularComponent,
    Curve3D,
    TrigCurve,
    canonicalize,
    eq3,
    lift3d,
    second_planet,
    tricircular,
    unit_orbit,
)
from .errors import InvalidParamError
from .orbits import ChainLink, OrbitChain, chain_to_curve
from .symmetry import SymmetryReport


def parse_rational(value: Any, what: str) -> Fraction:
    """int, [num, den], or "p/q" -> Fraction; anything else is an error."""
    if isinstance(value, bool):
        raise InvalidParamError(f"{what} must be rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParamError(f"{what}: bad rational {value!r}") from exc
    if isinstance(value, (list, tuple)) and len(value) == 2:
        num, den = value
        if isinstance(num, int) and isinstance(den, int) and not isinstance(num, bool):
            if den == 0:
                raise InvalidParamError(f"{what}: zero denominator")
            return Fraction(num, den)
    raise InvalidParamError(
        f"{what} must be an integer, [num, den] pair, or 'p/q' string, "
        f"got {value!r}"
    )


def parse_number(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidParamError(f"{what} must be a number, got {value!r}")
    return float(value)


def _parse_preset(doc: Any) -> TrigCurve:
    if not isinstance(doc, dict) or "name" not in doc:
        raise InvalidParamError("preset needs {name, params}")
    name = doc["name"]
    params = doc.get("params", [])
    if not isinstance(params, list):
        raise InvalidParamError("preset params must be a list")
    if name == "unit_orbit":
        if params:
            raise InvalidParamError("unit_orbit takes no params")
        return unit_orbit()
    if name == "second_planet":
        if len(params) != 2:
            raise InvalidParamError("second_planet takes [r, h]")
        r = parse_number(params[0], "radius r")
        h: Union[Fraction, float]
        try:
            h = parse_rational(params[1], "period h")
        except InvalidParamError:
            h = parse_number(params[1], "period h")
        return second_planet(r, h)
    if name == "eq3":
        if len(params) != 3:
            raise InvalidParamError("eq3 takes [a, b, c]")
        a = parse_rational(params[0], "a")
        b = parse_rational(params[1], "b")
        c = parse_number(params[2], "c")
        return eq3(a, b, c)
    if name == "tricircular":
        if len(params) != 6:
            raise InvalidParamError("tricircular takes [r1, f1, r2, f2, r3, f3]")
        r1 = parse_number(params[0], "r1")
        f1 = parse_rational(params[1], "f1")
        r2 = parse_number(params[2], "r2")
        f2 = parse_rational(params[3], "f2")
        r3 = parse_number(params[4], "r3")
        f3 = parse_rational(params[5], "f3")
        return tricircular(r1, f1, r2, f2, r3, f3)
    raise InvalidParamError(f"unknown preset {name!r}")


def _parse_components(doc: Any, offset: Any) -> TrigCurve:
    if not isinstance(doc, list) or not doc:
        raise InvalidParamError("components must be a nonempty list")
    comps = []
    for i, entry in enumerate(doc):
        if not isinstance(entry, dict):
            raise InvalidParamError(f"component {i} must be an object")
        for key in ("freq_num", "freq_den"):
            if key not in entry:
                raise InvalidParamError(f"component {i} missing {key}")
            if isinstance(entry[key], bool) or not isinstance(entry[key], int):
                raise InvalidParamError(
                    f"component {i}: {key} must be an integer (frequencies "
                    f"never travel as floats), got {entry[key]!r}"
                )
        if entry["freq_den"] == 0:
            raise InvalidParamError(f"component {i}: zero denominator")
        amp = parse_number(entry.get("amplitude", 1.0), f"component {i} amplitude")
        if amp < 0:
            raise InvalidParamError(f"component {i}: amplitude must be >= 0")
        phase = parse_number(entry.get("phase", 0.0), f"component {i} phase")
        comps.append(
            CircularComponent(Fraction(entry["freq_num"], entry["freq_den"]), amp, phase)
        )
    if offset is None:
        off = (0.0, 0.0)
    else:
        if not isinstance(offset, (list, tuple)) or len(offset) != 2:
            raise InvalidParamError("offset must be [x, y]")
        off = (parse_number(offset[0], "offset x"), parse_number(offset[1], "offset y"))
    return canonicalize(comps, off)


def parse_chain(doc: Any) -> OrbitChain:
    if not isinstance(doc, dict) or "links" not in doc:
        raise InvalidParamError("chain needs {links: [...]}")
    links_doc = doc["links"]
    if not isinstance(links_doc, list) or not links_doc:
        raise InvalidParamError("chain links must be a nonempty list")
    links = []
    for i, entry in enumerate(links_doc):
        if not isinstance(entry, dict):
            raise InvalidParamError(f"link {i} must be an object")
        radius = parse_number(entry.get("radius"), f"link {i} radius")
        raw_period = entry.get("period")
        period: Union[Fraction, float]
        try:
            period = parse_rational(raw_period, f"link {i} period")
        except InvalidParamError:
            period = parse_number(raw_period, f"link {i} period")
        direction = entry.get("direction", 1)
        if direction not in (1, -1) or isinstance(direction, bool):
            raise InvalidParamError(f"link {i}: direction must be 1 or -1")
        phase = parse_number(entry.get("initial_phase", 0.0), f"link {i} phase")
        links.append(ChainLink(radius, period, direction, phase))
    return OrbitChain(tuple(links))


def _parse_chain_curve(doc: Any) -> TrigCurve:
    chain = parse_chain(doc)
    max_den = doc.get("max_denominator")
    if max_den is not None:
        if isinstance(max_den, bool) or not isinstance(max_den, int) or max_den < 1:
            raise InvalidParamError("max_denominator must be a positive integer")
    return chain_to_curve(chain, max_den)


def parse_curve_spec(doc: Any) -> tuple[TrigCurve, Optional[tuple[float, float, float]]]:
    """Validate a curve document; returns the curve and the drift, if any."""
    if not isinstance(doc, dict):
        raise InvalidParamError("curve spec must be a JSON object")
    kinds = [k for k in ("preset", "components", "chain") if k in doc]
    if len(kinds) != 1:
        raise InvalidParamError(
            "curve spec needs exactly one of: preset, components, chain"
        )
    kind = kinds[0]
    if kind == "preset":
        curve = _parse_preset(doc["preset"])
    elif kind == "components":
        curve = _parse_components(doc["components"], doc.get("offset"))
    else:
        curve = _parse_chain_curve(doc["chain"])
    drift = None
    if "drift" in doc and doc["drift"] is not None:
        d = doc["drift"]
        if not isinstance(d, (list, tuple)) or len(d) != 3:
            raise InvalidParamError("drift must be [x, y, z]")
        drift = tuple(parse_number(c, "drift") for c in d)
    return curve, drift


def parse_curve3(doc: Any) -> Curve3D:
    curve, drift = parse_curve_spec(doc)
    return lift3d(curve, drift or (0.0, 0.0, 0.0))


def curve_to_doc(curve: TrigCurve) -> dict:
    """Canonical explicit-components document for a curve (exact curves only)."""
    comps = []
    for c in curve.components:
        if not c.is_exact:
            raise InvalidParamError(
                "cannot serialize float frequencies; rationalize the curve first"
            )
        comps.append(
            {
                "freq_num": c.frequency.numerator,
                "freq_den": c.frequency.denominator,
                "amplitude": c.amplitude,
                "phase": c.phase,
            }
        )
    return {"components": comps, "offset": list(curve.offset)}


def report_to_doc(report: SymmetryReport) -> dict:
    return {
        "order": "infinite" if report.is_infinite else int(report.order),
        "rotation_angle": report.rotation_angle,
        "param_shift": report.param_shift,
        "reduced_frequencies": list(report.reduced_frequencies),
        "verified": report.verified,
        "max_residual": report.max_residual,
    }
