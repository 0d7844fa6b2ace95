"""Stateless HTTP JSON service over the curve engine.

Every endpoint is a pure function of its request body, so identical
requests produce byte-identical responses.  Validation failures come back
as 400 with {"error", "detail"}; curves whose frequencies cannot be made
commensurable come back as 422.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response

from . import artexport, orbits, specdoc, symmetry
from .curvecore import TWO_PI, lift3d, period, sample, sample3
from .errors import InvalidParamError, NonCommensurableError, OrbitloomError

SVG_MEDIA_TYPE = "image/svg+xml"
STL_MEDIA_TYPE = "model/stl"


def _require_int(doc: dict, key: str, default: Optional[int], minimum: int) -> int:
    value = doc.get(key, default)
    if value is None:
        raise InvalidParamError(f"missing required field {key!r}")
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidParamError(f"{key} must be an integer, got {value!r}")
    if value < minimum:
        raise InvalidParamError(f"{key} must be >= {minimum}, got {value}")
    return value


def _get_spec(doc: dict):
    if "spec" not in doc:
        raise InvalidParamError("missing required field 'spec'")
    return specdoc.parse_curve_spec(doc["spec"])


def _sample_range(doc: dict, curve) -> tuple[float, float]:
    if "range" in doc and doc["range"] is not None:
        rng = doc["range"]
        if not isinstance(rng, (list, tuple)) or len(rng) != 2:
            raise InvalidParamError("range must be [lo, hi]")
        lo = specdoc.parse_number(rng[0], "range lo")
        hi = specdoc.parse_number(rng[1], "range hi")
        return (lo, hi)
    # default to one full period when there is one, else one turn
    if curve.is_exact:
        return (0.0, period(curve))
    return (0.0, TWO_PI)


def create_app(static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="orbitloom", docs_url=None, redoc_url=None)

    @app.exception_handler(NonCommensurableError)
    async def _non_commensurable(request: Request, exc: NonCommensurableError):
        return JSONResponse(
            status_code=422,
            content={"error": "non_commensurable", "detail": str(exc)},
        )

    @app.exception_handler(OrbitloomError)
    async def _validation(request: Request, exc: OrbitloomError):
        return JSONResponse(
            status_code=400,
            content={"error": "validation", "detail": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    async def _bad_request(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "validation", "detail": str(exc)},
        )

    @app.get("/api/planets")
    def planets() -> Response:
        return Response(content=orbits.planets_to_json(), media_type="application/json")

    @app.post("/api/curve/samples")
    def curve_samples(body: dict) -> Response:
        curve, drift = _get_spec(body)
        n = _require_int(body, "n", 1024, 2)
        u_range = _sample_range(body, curve)
        if drift is not None:
            poly = sample3(lift3d(curve, drift), n, u_range)
        else:
            poly = sample(curve, n, u_range)
        return Response(
            content=artexport.write_json(poly), media_type="application/json"
        )

    @app.post("/api/symmetry")
    def symmetry_report(body: dict) -> JSONResponse:
        curve, _ = _get_spec(body)
        if body.get("max_denominator") is not None:
            max_den = _require_int(body, "max_denominator", None, 1)
            curve = symmetry.rationalized_curve(curve, max_den)
        report = symmetry.detect_order(curve)
        return JSONResponse(content=specdoc.report_to_doc(report))

    @app.post("/api/arcs")
    def arcs(body: dict) -> JSONResponse:
        curve, _ = _get_spec(body)
        m = _require_int(body, "m", None, 1)
        points_per_arc = _require_int(body, "points_per_arc", 256, 2)
        arcset = artexport.partition_arcs(curve, m, points_per_arc=points_per_arc)
        return JSONResponse(
            content={
                "order_used": arcset.order_used,
                "arcs": [
                    {
                        "params": [float(u) for u in arc.polyline.params],
                        "points": [[float(c) for c in p] for p in arc.polyline.points],
                        "closed": arc.polyline.closed,
                        "color_index": arc.color_index,
                    }
                    for arc in arcset.arcs
                ],
            }
        )

    @app.post("/api/export/svg")
    def export_svg(body: dict) -> Response:
        curve, _ = _get_spec(body)
        m = _require_int(body, "m", 1, 1)
        stroke = body.get("stroke_width")
        if stroke is not None:
            stroke = specdoc.parse_number(stroke, "stroke_width")
            if not stroke > 0:
                raise InvalidParamError("stroke_width must be positive")
        arcset = artexport.partition_arcs(curve, m)
        return Response(
            content=artexport.write_svg(arcset, stroke_width=stroke),
            media_type=SVG_MEDIA_TYPE,
        )

    @app.post("/api/export/stl")
    def export_stl(body: dict) -> Response:
        curve, drift = _get_spec(body)
        if "tube_radius" not in body:
            raise InvalidParamError("missing required field 'tube_radius'")
        tube_radius = specdoc.parse_number(body["tube_radius"], "tube_radius")
        around = _require_int(body, "around", 16, 3)
        along = _require_int(body, "along", 256, 8)
        closed = body.get("closed", False)
        if not isinstance(closed, bool):
            raise InvalidParamError("closed must be true or false")
        scale = specdoc.parse_number(body.get("unit_scale", 1.0), "unit_scale")
        curve3 = lift3d(curve, drift or (0.0, 0.0, 0.0))
        mesh = artexport.tube_sweep(
            curve3,
            tube_radius,
            segments_around=around,
            samples_along=along,
            closed=closed,
        )
        return Response(
            content=artexport.write_stl(mesh, unit_scale=scale),
            media_type=STL_MEDIA_TYPE,
        )

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
