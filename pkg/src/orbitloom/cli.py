"""Command line front end.

Subcommands map one-to-one onto library calls; everything here is argument
plumbing.  All output goes to stdout (bytes, for the binary formats) unless
`-o FILE` is given.  Exit code 0 on success, 2 on any validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Union

from . import artexport, orbits, specdoc, symmetry
from .curvecore import TWO_PI, TrigCurve, eq3, lift3d, sample, sample3
from .errors import InvalidParamError, OrbitloomError

DEFAULT_PORT = 8000


def _parse_period_token(s: str) -> Union[Fraction, float]:
    """Integers and p/q stay exact, decimal notation means a measured float."""
    s = s.strip()
    try:
        return Fraction(int(s))
    except ValueError:
        pass
    if "/" in s:
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParamError(f"bad period {s!r}") from exc
    try:
        return float(s)
    except ValueError as exc:
        raise InvalidParamError(f"bad period {s!r}") from exc


def _parse_eq3(text: str) -> TrigCurve:
    parts = text.split(",")
    if len(parts) != 3:
        raise InvalidParamError("--eq3 needs a,b,c")
    try:
        a = Fraction(parts[0].strip())
        b = Fraction(parts[1].strip())
        c = float(parts[2])
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParamError(f"bad --eq3 value: {text!r}") from exc
    return eq3(a, b, c)


def _parse_triple(text: str, what: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise InvalidParamError(f"{what} needs x,y,z")
    try:
        x, y, z = (float(p) for p in parts)
    except ValueError as exc:
        raise InvalidParamError(f"bad {what}: {text!r}") from exc
    return (x, y, z)


def _load_curve(args) -> tuple[TrigCurve, Optional[tuple[float, float, float]]]:
    if (args.spec is None) == (args.eq3 is None):
        raise InvalidParamError("give exactly one of --spec or --eq3")
    drift = None
    if args.eq3 is not None:
        curve = _parse_eq3(args.eq3)
    else:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise InvalidParamError(f"cannot read spec file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidParamError(f"spec file is not valid JSON: {exc}") from exc
        curve, drift = specdoc.parse_curve_spec(doc)
    if getattr(args, "drift", None) is not None:
        drift = _parse_triple(args.drift, "--drift")
    return curve, drift


def _parse_links(text: str) -> orbits.OrbitChain:
    links = []
    for i, part in enumerate(filter(None, (p.strip() for p in text.split(";")))):
        fields = [f.strip() for f in part.split(",")]
        if not 2 <= len(fields) <= 4:
            raise InvalidParamError(
                f"link {i}: expected radius,period[,direction[,phase]], got {part!r}"
            )
        try:
            radius = float(fields[0])
        except ValueError as exc:
            raise InvalidParamError(f"link {i}: bad radius {fields[0]!r}") from exc
        period = _parse_period_token(fields[1])
        direction = 1
        if len(fields) >= 3:
            if fields[2] not in ("1", "-1"):
                raise InvalidParamError(f"link {i}: direction must be 1 or -1")
            direction = int(fields[2])
        phase = 0.0
        if len(fields) == 4:
            try:
                phase = float(fields[3])
            except ValueError as exc:
                raise InvalidParamError(f"link {i}: bad phase {fields[3]!r}") from exc
        links.append(orbits.ChainLink(radius, period, direction, phase))
    if not links:
        raise InvalidParamError("--links is empty")
    return orbits.OrbitChain(tuple(links))


def _emit(data: Union[str, bytes], output: Optional[str]) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if output is None or output == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(output, "wb") as fh:
            fh.write(data)


def _cmd_curve_sample(args) -> int:
    curve, drift = _load_curve(args)
    lo, hi = args.range
    if drift is not None:
        poly = sample3(lift3d(curve, drift), args.n, (lo, hi))
    else:
        poly = sample(curve, args.n, (lo, hi))
    if args.format == "csv":
        _emit(artexport.write_csv(poly), args.output)
    else:
        _emit(artexport.write_json(poly), args.output)
    return 0


def _cmd_symmetry(args) -> int:
    curve, _ = _load_curve(args)
    if args.max_denominator is not None:
        curve = symmetry.rationalized_curve(curve, args.max_denominator)
    report = symmetry.detect_order(curve)
    order = "infinite" if report.is_infinite else str(int(report.order))
    if report.max_residual < 1e-9:
        residual = "residual<1e-9"
    else:
        residual = f"residual={report.max_residual:.3e}"
    _emit(
        f"order={order} angle={report.rotation_angle:.6f} {residual}\n",
        args.output,
    )
    return 0


def _cmd_orbit_chain(args) -> int:
    chain = _parse_links(args.links)
    observer = None
    if args.view is not None:
        try:
            with open(args.view, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise InvalidParamError(f"cannot read view file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidParamError(f"view file is not valid JSON: {exc}") from exc
        if isinstance(doc, dict) and "chain" in doc:
            doc = doc["chain"]
        observer = specdoc.parse_chain(doc)
    curve = orbits.relative_view(chain, observer, args.max_denominator)
    doc_out = specdoc.curve_to_doc(curve)
    _emit(json.dumps(doc_out, indent=2) + "\n", args.output)
    return 0


def _cmd_orbit_kepler3(args) -> int:
    report = orbits.kepler3_residuals()
    lines = []
    for name, ratio in report.ratios:
        lines.append(f"{name:<8} ratio={ratio:.6f} deviation={abs(ratio - 1.0):.6f}")
    lines.append(f"max deviation: {report.max_deviation:.6f}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_export_svg(args) -> int:
    curve, _ = _load_curve(args)
    arcset = artexport.partition_arcs(curve, args.arcs)
    _emit(artexport.write_svg(arcset, stroke_width=args.stroke_width), args.output)
    return 0


def _cmd_export_stl(args) -> int:
    curve, drift = _load_curve(args)
    curve3 = lift3d(curve, drift or (0.0, 0.0, 0.0))
    mesh = artexport.tube_sweep(
        curve3,
        args.tube_radius,
        segments_around=args.around,
        samples_along=args.along,
        closed=args.closed,
    )
    _emit(artexport.write_stl(mesh, unit_scale=args.scale), args.output)
    return 0


def resolve_port(arg_port: Optional[int]) -> int:
    if arg_port is not None:
        return arg_port
    env = os.environ.get("ORBITLOOM_PORT")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InvalidParamError(f"bad ORBITLOOM_PORT {env!r}") from exc
    return DEFAULT_PORT


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static)
    uvicorn.run(app, host=args.host, port=resolve_port(args.port), log_level="info")
    return 0


def _range_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected LO,HI")
    try:
        return (float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _add_curve_source(p: argparse.ArgumentParser, with_drift: bool = True) -> None:
    p.add_argument("--spec", metavar="FILE", help="curve document (JSON)")
    p.add_argument("--eq3", metavar="A,B,C", help="trig curve parameters a,b,c")
    if with_drift:
        p.add_argument("--drift", metavar="X,Y,Z", help="linear 3D drift per unit u")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", metavar="FILE", help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitloom",
        description="curves made of stacked circular motions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_curve = sub.add_parser("curve", help="evaluate and sample curves")
    curve_sub = p_curve.add_subparsers(dest="subcommand", required=True)
    p_sample = curve_sub.add_parser("sample", help="sample a curve to csv or json")
    _add_curve_source(p_sample)
    p_sample.add_argument("--n", type=int, default=1024, help="number of samples")
    p_sample.add_argument(
        "--range", type=_range_pair, default=(0.0, TWO_PI), metavar="LO,HI"
    )
    p_sample.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_output(p_sample)
    p_sample.set_defaults(func=_cmd_curve_sample)

    p_sym = sub.add_parser("symmetry", help="detect rotational symmetry")
    _add_curve_source(p_sym, with_drift=False)
    p_sym.add_argument("--max-denominator", type=int, metavar="D")
    _add_output(p_sym)
    p_sym.set_defaults(func=_cmd_symmetry)

    p_orbit = sub.add_parser("orbit", help="circular orbit chains")
    orbit_sub = p_orbit.add_subparsers(dest="subcommand", required=True)
    p_chain = orbit_sub.add_parser(
        "chain", help="compose a chain (optionally relative to an observer)"
    )
    p_chain.add_argument(
        "--links",
        required=True,
        metavar='"R,T,DIR;..."',
        help="semicolon separated links: radius,period[,direction[,phase]]",
    )
    p_chain.add_argument("--view", metavar="FILE", help="observer chain (JSON)")
    p_chain.add_argument("--max-denominator", type=int, metavar="D")
    _add_output(p_chain)
    p_chain.set_defaults(func=_cmd_orbit_chain)
    p_kepler = orbit_sub.add_parser("kepler3", help="period^2/radius^3 table")
    _add_output(p_kepler)
    p_kepler.set_defaults(func=_cmd_orbit_kepler3)

    p_export = sub.add_parser("export", help="render to svg or stl")
    export_sub = p_export.add_subparsers(dest="subcommand", required=True)
    p_svg = export_sub.add_parser("svg", help="colored arc drawing")
    _add_curve_source(p_svg, with_drift=False)
    p_svg.add_argument("--arcs", type=int, default=1, metavar="M")
    p_svg.add_argument("--stroke-width", type=float, default=None)
    _add_output(p_svg)
    p_svg.set_defaults(func=_cmd_export_svg)
    p_stl = export_sub.add_parser("stl", help="printable tube mesh")
    _add_curve_source(p_stl)
    p_stl.add_argument("--tube-radius", type=float, required=True)
    p_stl.add_argument("--around", type=int, default=16, metavar="K")
    p_stl.add_argument("--along", type=int, default=256, metavar="N")
    p_stl.add_argument("--closed", action="store_true", help="weld the seam")
    p_stl.add_argument("--scale", type=float, default=1.0, help="unit scale factor")
    _add_output(p_stl)
    p_stl.set_defaults(func=_cmd_export_stl)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--static", metavar="DIR", help="serve static files too")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OrbitloomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
