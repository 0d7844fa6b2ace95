"""Rendering and fabrication output: SVG arc plots, CSV/JSON dumps, STL tubes.

The SVG writer produces byte-identical output for identical input: all
coordinates go through fixed 6-decimal formatting, which Python renders
without any locale influence.  The STL writer emits the standard little-
endian binary layout, 84 + 50 * triangle_count bytes exactly.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from . import kernels
from .curvecore import (
    Curve3D,
    Polyline,
    TrigCurve,
    evaluate3_many,
    period,
    sample,
    velocity3_many,
)
from .errors import (
    DegenerateFrameError,
    EmptyInputError,
    EmptyMeshError,
    InvalidParamError,
)

# 12 distinguishable strokes; adapt manually when taste disagrees
DEFAULT_PALETTE = (
    "#e6194b",
    "#3cb44b",
    "#4363d8",
    "#f58231",
    "#911eb4",
    "#42d4f4",
    "#f032e6",
    "#bfef45",
    "#469990",
    "#9a6324",
    "#800000",
    "#000075",
)


class ColoredArc(NamedTuple):
    polyline: Polyline
    color_index: int


@dataclass(frozen=True)
class ArcSet:
    arcs: tuple[ColoredArc, ...]
    order_used: int


@dataclass(frozen=True, eq=False)
class TriMesh:
    """Indexed triangle mesh; vertices (V, 3) float, triangles (F, 3) int."""

    vertices: np.ndarray
    triangles: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.vertices, dtype=float)
        t = np.ascontiguousarray(self.triangles, dtype=np.int64)
        v.flags.writeable = False
        t.flags.writeable = False
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "triangles", t)


def partition_arcs(
    curve: TrigCurve,
    m: int,
    palette_size: int = len(DEFAULT_PALETTE),
    points_per_arc: int = 256,
) -> ArcSet:
    """Split one period into m arcs, colored cyclically through the palette.

    With m equal to the symmetry order the arcs are rotated copies of each
    other; any other m still draws fine, it just stops meaning anything.
    """
    if m < 1:
        raise InvalidParamError(f"arc count must be >= 1, got {m}")
    if palette_size < 1:
        raise InvalidParamError(f"palette size must be >= 1, got {palette_size}")
    t = period(curve)
    arcs = []
    for k in range(m):
        poly = sample(curve, points_per_arc + 1, (k * t / m, (k + 1) * t / m))
        arcs.append(ColoredArc(poly, k % palette_size))
    return ArcSet(tuple(arcs), m)


# ---------------------------------------------------------------------------
# SVG


def _fmt(x: float) -> str:
    # -0.000000 and 0.000000 must serialize identically
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def write_svg(
    data: Union[ArcSet, Polyline, Sequence[Polyline]],
    stroke_width: Optional[float] = None,
    palette: Sequence[str] = DEFAULT_PALETTE,
    size: int = 640,
    margin: float = 0.05,
) -> bytes:
    """Deterministic SVG 1.1 document, one path per arc, y axis flipped up.

    The viewBox hugs the bounding box of all points plus a margin fraction
    of the larger dimension; `size` only sets the nominal pixel width.
    """
    if isinstance(data, ArcSet):
        pairs = [(arc.polyline, arc.color_index) for arc in data.arcs]
    elif isinstance(data, Polyline):
        pairs = [(data, 0)]
    else:
        pairs = [(poly, i) for i, poly in enumerate(data)]
    if not pairs:
        raise EmptyInputError("nothing to draw")
    if not palette:
        raise InvalidParamError("palette must not be empty")

    all_x = np.concatenate([poly.points[:, 0] for poly, _ in pairs])
    all_y = np.concatenate([-poly.points[:, 1] for poly, _ in pairs])
    xmin, xmax = float(all_x.min()), float(all_x.max())
    ymin, ymax = float(all_y.min()), float(all_y.max())
    span = max(xmax - xmin, ymax - ymin, 1e-6)
    pad = margin * span
    width = stroke_width if stroke_width is not None else 0.004 * span

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" '
        f'viewBox="{_fmt(xmin - pad)} {_fmt(ymin - pad)} '
        f'{_fmt(xmax - xmin + 2 * pad)} {_fmt(ymax - ymin + 2 * pad)}">',
    ]
    for poly, color_index in pairs:
        pts = poly.points
        coords = [f"M {_fmt(pts[0, 0])} {_fmt(-pts[0, 1])}"]
        coords += [f"L {_fmt(x)} {_fmt(-y)}" for x, y in pts[1:]]
        if poly.closed:
            coords.append("Z")
        color = palette[color_index % len(palette)]
        lines.append(
            f'<path d="{" ".join(coords)}" fill="none" '
            f'stroke="{color}" stroke-width="{_fmt(width)}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines).encode("utf-8") + b"\n"


# ---------------------------------------------------------------------------
# CSV / JSON


def write_csv(poly: Polyline) -> bytes:
    """u,x,y[,z] rows, CRLF line endings."""
    dim = poly.points.shape[1]
    header = "u,x,y" if dim == 2 else "u,x,y,z"
    rows = [header]
    for u, pt in zip(poly.params, poly.points):
        rows.append(",".join([repr(float(u))] + [repr(float(c)) for c in pt]))
    return ("\r\n".join(rows) + "\r\n").encode("ascii")


def write_json(poly: Polyline) -> bytes:
    doc = {
        "params": [float(u) for u in poly.params],
        "points": [[float(c) for c in pt] for pt in poly.points],
        "closed": poly.closed,
    }
    return json.dumps(doc).encode("ascii")


# ---------------------------------------------------------------------------
# tube sweep


def spine_proximity_count(points: np.ndarray, tube_radius: float, closed: bool) -> int:
    """Spine sample pairs closer than the tube diameter, beyond neighbors.

    The window of ignored along-spine neighbors covers the arc length a
    tube diameter spans, so an ordinary smooth curve reports 0 and real
    self-crossings (inevitable for most multicircular curves) are counted.
    """
    pts = np.ascontiguousarray(points, dtype=float)
    steps = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    min_step = float(steps.min()) if steps.size else 0.0
    if min_step <= 0.0:
        return 0
    window = int(2.0 * tube_radius / min_step) + 2
    return int(kernels.close_pair_count(pts, 2.0 * tube_radius, window, closed))


def _frame_start_normal(t0: np.ndarray) -> np.ndarray:
    up = np.array([0.0, 0.0, 1.0])
    if abs(float(t0 @ up)) > 0.9:
        up = np.array([1.0, 0.0, 0.0])
    r0 = up - (up @ t0) * t0
    return r0 / np.linalg.norm(r0)


def _transport_step(p0, p1, t0, t1, r):
    # one double-reflection step of the rotation-minimizing transport
    v1 = p1 - p0
    c1 = float(v1 @ v1)
    if c1 == 0.0:
        return r
    rl = r - (2.0 / c1) * float(v1 @ r) * v1
    tl = t0 - (2.0 / c1) * float(v1 @ t0) * v1
    v2 = t1 - tl
    c2 = float(v2 @ v2)
    if c2 != 0.0:
        rl = rl - (2.0 / c2) * float(v2 @ rl) * v2
    rl = rl - float(rl @ t1) * t1
    return rl / np.linalg.norm(rl)


def _rotate_about(vecs, axes, angles):
    # Rodrigues rotation of each row about its own unit axis
    cos = np.cos(angles)[:, None]
    sin = np.sin(angles)[:, None]
    return vecs * cos + np.cross(axes, vecs) * sin


def tube_sweep(
    curve3: Curve3D,
    tube_radius: float,
    segments_around: int = 16,
    samples_along: int = 256,
    closed: bool = False,
) -> TriMesh:
    """Sweep a circle along one period of the curve into a triangle mesh.

    Frames are rotation-minimizing (double-reflection transport), which
    stays defined where Frenet frames die at inflections.  For a closed
    sweep the residual frame twist around the loop is snapped to the
    nearest multiple of 2*pi/segments_around (absorbed by an index shift
    at the seam) and the remainder is spread evenly along the spine, so
    the seam is watertight.  Open sweeps get flat fan caps.

    A tube wider than the gaps of the curve self-intersects; that is not
    an error (printers cope), but detected spine self-proximities are
    reported as a warning.
    """
    if not tube_radius > 0:
        raise InvalidParamError(f"tube radius must be positive, got {tube_radius}")
    if segments_around < 3:
        raise InvalidParamError(f"need >= 3 segments around, got {segments_around}")
    if samples_along < 8:
        raise InvalidParamError(f"need >= 8 samples along, got {samples_along}")

    t_period = period(curve3.base)
    n = samples_along
    k = segments_around
    if closed:
        us = np.linspace(0.0, t_period, n, endpoint=False)
    else:
        us = np.linspace(0.0, t_period, n)
    pts = evaluate3_many(curve3, us)

    gaps = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    if closed:
        gaps = np.append(gaps, np.linalg.norm(pts[0] - pts[-1]))
    if float(gaps.min()) < 1e-12:
        raise DegenerateFrameError(
            "consecutive spine samples coincide; lower samples_along or "
            "check the curve for stationary points"
        )

    tans = velocity3_many(curve3, us)
    norms = np.linalg.norm(tans, axis=1)
    # analytic tangents vanish at cusps; fall back to chord directions there
    bad = norms < 1e-9
    if bad.any():
        chords = np.roll(pts, -1, axis=0) - np.roll(pts, 1, axis=0)
        tans[bad] = chords[bad]
        norms = np.linalg.norm(tans, axis=1)
    tans = tans / norms[:, None]

    r0 = _frame_start_normal(tans[0])
    normals = kernels.rmf_normals(pts, tans, r0)

    seam_shift = 0
    if closed:
        r_wrap = _transport_step(pts[-1], pts[0], tans[-1], tans[0], normals[-1])
        side0 = np.cross(tans[0], normals[0])
        phi = math.atan2(float(r_wrap @ side0), float(r_wrap @ normals[0]))
        sigma = round(phi * k / (2.0 * math.pi))
        psi = phi - sigma * 2.0 * math.pi / k
        # spread the residual over the n-1 interior edges; ring n-1 ends up
        # rotated by -psi, so the seam edge carries exactly sigma * 2*pi/k
        normals = _rotate_about(normals, tans, -psi * np.arange(n) / (n - 1))
        # the corrected loop twist must now be an exact multiple of 2*pi/k
        r_wrap = _transport_step(pts[-1], pts[0], tans[-1], tans[0], normals[-1])
        side0 = np.cross(tans[0], normals[0])
        phi = math.atan2(float(r_wrap @ side0), float(r_wrap @ normals[0]))
        seam_shift = round(phi * k / (2.0 * math.pi)) % k
        if abs(phi - round(phi * k / (2.0 * math.pi)) * 2.0 * math.pi / k) > 1e-6:
            raise DegenerateFrameError("seam frames failed to align after snapping")

    sides = np.cross(tans, normals)
    thetas = 2.0 * math.pi * np.arange(k) / k
    ring = (
        np.cos(thetas)[None, :, None] * normals[:, None, :]
        + np.sin(thetas)[None, :, None] * sides[:, None, :]
    )
    vertices = pts[:, None, :] + tube_radius * ring
    vertices = vertices.reshape(n * k, 3)

    def vid(i, j):
        return i * k + j

    tris = []
    pairs = [(i, i + 1, 0) for i in range(n - 1)]
    if closed:
        pairs.append((n - 1, 0, seam_shift))
    for i, i2, shift in pairs:
        for j in range(k):
            j2 = (j + 1) % k
            a = vid(i, j)
            b = vid(i, j2)
            c = vid(i2, (j + shift) % k)
            d = vid(i2, (j2 + shift) % k)
            tris.append((a, c, b))
            tris.append((b, c, d))

    if not closed:
        center0 = len(vertices)
        center1 = center0 + 1
        vertices = np.vstack([vertices, pts[0], pts[-1]])
        for j in range(k):
            j2 = (j + 1) % k
            tris.append((center0, vid(0, j), vid(0, j2)))
            tris.append((center1, vid(n - 1, j2), vid(n - 1, j)))

    mesh = TriMesh(np.asarray(vertices), np.asarray(tris, dtype=np.int64))
    if signed_volume(mesh) < 0.0:
        mesh = TriMesh(mesh.vertices, mesh.triangles[:, [0, 2, 1]])

    hits = spine_proximity_count(pts, tube_radius, closed)
    if hits:
        warnings.warn(
            f"tube self-intersects: {hits} spine point pairs closer than "
            f"the tube diameter {2 * tube_radius}",
            RuntimeWarning,
            stacklevel=2,
        )
    return mesh


def signed_volume(mesh: TriMesh) -> float:
    """Sum of signed tetrahedron volumes; positive for outward winding."""
    v = mesh.vertices
    t = mesh.triangles
    a, b, c = v[t[:, 0]], v[t[:, 1]], v[t[:, 2]]
    return float(np.einsum("ij,ij->i", a, np.cross(b, c)).sum() / 6.0)


def edge_use_counts(mesh: TriMesh) -> dict[tuple[int, int], int]:
    """How many triangles use each undirected edge; all 2 means watertight."""
    counts: dict[tuple[int, int], int] = {}
    for a, b, c in mesh.triangles:
        for u, v in ((a, b), (b, c), (c, a)):
            key = (int(u), int(v)) if u < v else (int(v), int(u))
            counts[key] = counts.get(key, 0) + 1
    return counts


def euler_characteristic(mesh: TriMesh) -> int:
    return int(
        mesh.vertices.shape[0] - len(edge_use_counts(mesh)) + mesh.triangles.shape[0]
    )


# ---------------------------------------------------------------------------
# STL


STL_TRIANGLE = np.dtype(
    [
        ("normal", "<f4", (3,)),
        ("vertices", "<f4", (3, 3)),
        ("attr", "<u2"),
    ]
)


def write_stl(mesh: TriMesh, unit_scale: float = 1.0) -> bytes:
    """Binary STL: 80-byte header, uint32 count, 50 bytes per triangle."""
    nt = int(mesh.triangles.shape[0])
    if nt == 0:
        raise EmptyMeshError("mesh has no triangles")
    assert STL_TRIANGLE.itemsize == 50
    v = mesh.vertices * unit_scale
    tri = v[mesh.triangles]
    normals = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
    lens = np.linalg.norm(normals, axis=1)
    ok = lens > 0.0
    normals[ok] /= lens[ok, None]
    normals[~ok] = 0.0
    records = np.zeros(nt, dtype=STL_TRIANGLE)
    records["normal"] = normals.astype("<f4")
    records["vertices"] = tri.astype("<f4")
    header = b"orbitloom tube sweep".ljust(80, b"\x00")
    return header + np.uint32(nt).tobytes() + records.tobytes()
