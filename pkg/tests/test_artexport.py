import json
import math
import pathlib
import struct
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from orbitloom import (
    CircularComponent,
    DegenerateFrameError,
    EmptyInputError,
    EmptyMeshError,
    InvalidParamError,
    NonPeriodicError,
    canonicalize,
    eq3,
    lift3d,
    sample,
    unit_orbit,
)
from orbitloom.artexport import (
    ArcSet,
    DEFAULT_PALETTE,
    TriMesh,
    edge_use_counts,
    euler_characteristic,
    partition_arcs,
    signed_volume,
    spine_proximity_count,
    tube_sweep,
    write_csv,
    write_json,
    write_stl,
    write_svg,
)
from orbitloom.kernels import BACKEND
from orbitloom.symmetry import detect_order

TWO_PI = 2.0 * math.pi
GOLDEN = pathlib.Path(__file__).parent / "golden"

SVG_NS = "{http://www.w3.org/2000/svg}"


def satellite_curve():
    return canonicalize([CircularComponent(1, 1.0), CircularComponent(12, 0.2)])


# ---------------------------------------------------------------------------
# partition_arcs


def test_single_arc_is_full_period():
    arcs = partition_arcs(eq3(6, 14, 1), 1)
    assert arcs.order_used == 1
    assert len(arcs.arcs) == 1
    poly = arcs.arcs[0].polyline
    assert poly.params[0] == 0.0
    assert math.isclose(poly.params[-1], TWO_PI)
    assert poly.closed


def test_arcs_partition_the_period_continuously():
    arcs = partition_arcs(eq3(6, 14, 1), 5)
    assert [a.color_index for a in arcs.arcs] == [0, 1, 2, 3, 4]
    for left, right in zip(arcs.arcs, arcs.arcs[1:]):
        assert left.polyline.params[-1] == right.polyline.params[0]
        gap = np.linalg.norm(left.polyline.points[-1] - right.polyline.points[0])
        assert gap <= 1e-9


def test_arcs_at_symmetry_order_are_rotated_copies():
    curve = eq3(6, 14, 1)
    report = detect_order(curve)
    arcs = partition_arcs(curve, int(report.order))
    base = arcs.arcs[0].polyline.points
    for idx, arc in enumerate(arcs.arcs):
        ang = idx * report.rotation_angle
        c, s = math.cos(ang), math.sin(ang)
        rotated = base @ np.array([[c, -s], [s, c]]).T
        assert np.linalg.norm(arc.polyline.points - rotated, axis=1).max() <= 1e-9


def test_arcs_at_wrong_count_are_not_rotated_copies():
    curve = eq3(6, 14, 1)
    arcs = partition_arcs(curve, 7)
    base = arcs.arcs[0].polyline.points
    diameter = float(np.ptp(base, axis=0).max())
    worst = 0.0
    for idx, arc in enumerate(arcs.arcs[1:], start=1):
        ang = idx * TWO_PI / 7
        c, s = math.cos(ang), math.sin(ang)
        rotated = base @ np.array([[c, -s], [s, c]]).T
        worst = max(
            worst, float(np.linalg.norm(arc.polyline.points - rotated, axis=1).max())
        )
    assert worst > 0.01 * diameter


def test_partition_color_wraps_at_palette_size():
    arcs = partition_arcs(eq3(6, 14, 1), 15, palette_size=12)
    assert [a.color_index for a in arcs.arcs][12:] == [0, 1, 2]


def test_partition_refuses_non_periodic_curves():
    curve = canonicalize([CircularComponent(1, 1.0), CircularComponent(1.77, 0.5)])
    with pytest.raises(NonPeriodicError):
        partition_arcs(curve, 3)


def test_partition_validates():
    with pytest.raises(InvalidParamError):
        partition_arcs(unit_orbit(), 0)


# ---------------------------------------------------------------------------
# SVG


def test_svg_single_circle_parses_with_one_path():
    poly = sample(unit_orbit(), 64, (0.0, TWO_PI))
    root = ET.fromstring(write_svg(poly))
    assert root.tag == f"{SVG_NS}svg"
    assert len(list(root.iter(f"{SVG_NS}path"))) == 1


def test_svg_five_arcs_five_colors():
    svg = write_svg(partition_arcs(eq3(6, 14, 1), 5))
    paths = list(ET.fromstring(svg).iter(f"{SVG_NS}path"))
    assert len(paths) == 5
    strokes = {p.get("stroke") for p in paths}
    assert len(strokes) == 5
    assert strokes <= set(DEFAULT_PALETTE)


def test_svg_same_input_same_bytes():
    a = write_svg(partition_arcs(eq3(6, 14, 1), 5))
    b = write_svg(partition_arcs(eq3(6, 14, 1), 5))
    assert a == b


@pytest.mark.skipif(BACKEND != "numba", reason="golden bytes pinned on the default backend")
def test_svg_matches_golden_file():
    svg = write_svg(partition_arcs(eq3(6, 14, 1), 5))
    assert svg == (GOLDEN / "eq3_6_14_1_m5.svg").read_bytes()


def test_svg_bytes_do_not_depend_on_locale():
    # the formatting path must be locale-blind: render under two locales in
    # fresh interpreters and compare bytes
    script = (
        "import hashlib\n"
        "from orbitloom import eq3\n"
        "from orbitloom.artexport import partition_arcs, write_svg\n"
        "svg = write_svg(partition_arcs(eq3(6, 14, 1), 5))\n"
        "print(hashlib.sha256(svg).hexdigest())\n"
    )
    digests = set()
    for loc in ("C", "C.utf8"):
        out = subprocess.run(
            [sys.executable, "-c", script],
            capture_output=True,
            text=True,
            env={"PATH": "/usr/bin:/bin", "LC_ALL": loc, "LANG": loc},
            check=True,
        )
        digests.add(out.stdout.strip())
    assert len(digests) == 1


def test_svg_empty_input_raises():
    with pytest.raises(EmptyInputError):
        write_svg([])


def test_svg_respects_style_arguments():
    poly = sample(unit_orbit(), 16, (0.0, TWO_PI))
    svg = write_svg([poly], stroke_width=0.125, palette=("#123456",), size=100)
    root = ET.fromstring(svg)
    assert root.get("width") == "100"
    path = next(iter(root.iter(f"{SVG_NS}path")))
    assert path.get("stroke") == "#123456"
    assert path.get("stroke-width") == "0.125000"


# ---------------------------------------------------------------------------
# CSV / JSON


def test_csv_2d_layout():
    poly = sample(unit_orbit(), 4, (0.0, TWO_PI))
    text = write_csv(poly).decode("ascii")
    lines = text.split("\r\n")
    assert lines[0] == "u,x,y"
    assert lines[1] == "0.0,1.0,0.0"
    assert lines[-1] == ""
    assert len(lines) == 6


def test_csv_3d_has_z_column():
    helix = lift3d(unit_orbit(), (0.0, 0.0, 1.0))
    from orbitloom import sample3

    poly = sample3(helix, 8, (0.0, TWO_PI))
    first = write_csv(poly).decode("ascii").split("\r\n")[0]
    assert first == "u,x,y,z"


def test_json_round_trip():
    poly = sample(eq3(6, 14, 1), 32, (0.0, TWO_PI))
    doc = json.loads(write_json(poly))
    assert doc["closed"] is True
    assert len(doc["params"]) == 32
    np.testing.assert_array_equal(np.array(doc["points"]), poly.points)


# ---------------------------------------------------------------------------
# tube sweep


def torus_mesh(k=16, n=128):
    return tube_sweep(lift3d(unit_orbit(), (0.0, 0.0, 0.0)), 0.2, k, n, closed=True)


def helix_mesh():
    helix = lift3d(satellite_curve(), (0.0, 0.0, 1.0))
    return tube_sweep(helix, 0.05, 12, 256, closed=False)


def test_torus_topology():
    mesh = torus_mesh()
    assert mesh.triangles.shape[0] == 2 * 16 * 128
    assert euler_characteristic(mesh) == 0
    assert set(edge_use_counts(mesh).values()) == {2}
    assert signed_volume(mesh) > 0


def test_torus_volume_approaches_analytic():
    mesh = torus_mesh(k=48, n=512)
    exact = 2 * math.pi**2 * 1.0 * 0.2**2
    assert abs(signed_volume(mesh) - exact) / exact < 0.01


def test_open_helix_is_a_capped_disk():
    mesh = helix_mesh()
    assert euler_characteristic(mesh) == 2
    assert set(edge_use_counts(mesh).values()) == {2}
    assert signed_volume(mesh) > 0


def test_closed_eq3_tube_is_watertight():
    with pytest.warns(RuntimeWarning):
        mesh = tube_sweep(lift3d(eq3(6, 14, 1), (0, 0, 0)), 0.05, 16, 512, closed=True)
    assert euler_characteristic(mesh) == 0
    assert set(edge_use_counts(mesh).values()) == {2}
    assert signed_volume(mesh) > 0


def test_tube_vertices_sit_at_tube_radius():
    radius = 0.2
    mesh = torus_mesh()
    spine = mesh.vertices.reshape(128, 16, 3).mean(axis=1)
    dists = np.linalg.norm(mesh.vertices.reshape(128, 16, 3) - spine[:, None, :], axis=2)
    assert np.abs(dists - radius).max() / radius < 1e-6


def test_cusp_curve_sweeps_without_frenet_failure():
    # velocity vanishes at the cusps; Frenet frames would blow up there
    cusped = canonicalize(
        [CircularComponent(1, 1.0), CircularComponent(12, 1.0 / 12.0)]
    )
    mesh = tube_sweep(lift3d(cusped, (0, 0, 0)), 0.02, 8, 256, closed=True)
    assert set(edge_use_counts(mesh).values()) == {2}
    assert euler_characteristic(mesh) == 0


def test_degenerate_spine_raises():
    tiny = canonicalize([CircularComponent(1, 1e-13)])
    with pytest.raises(DegenerateFrameError):
        tube_sweep(lift3d(tiny, (0, 0, 0)), 0.1, 8, 64, closed=True)


def test_tube_validates_arguments():
    flat = lift3d(unit_orbit(), (0, 0, 0))
    with pytest.raises(InvalidParamError):
        tube_sweep(flat, 0.0, 8, 64)
    with pytest.raises(InvalidParamError):
        tube_sweep(flat, 0.1, 2, 64)
    with pytest.raises(InvalidParamError):
        tube_sweep(flat, 0.1, 8, 4)


def test_proximity_warning_fires_only_when_tube_too_fat():
    import warnings as W

    flat = lift3d(unit_orbit(), (0, 0, 0))
    with W.catch_warnings():
        W.simplefilter("error")
        tube_sweep(flat, 0.2, 8, 64, closed=True)  # circle never self-crosses
    pts = np.array([[0.0, 0, 0], [1.0, 0, 0], [1.0, 1.0, 0], [0.01, 0.02, 0]])
    assert spine_proximity_count(pts, 0.05, False) == 1


# ---------------------------------------------------------------------------
# STL


def parse_stl(blob):
    # independent reader: struct only, no shared code with the writer
    assert len(blob) >= 84
    count = struct.unpack_from("<I", blob, 80)[0]
    assert len(blob) == 84 + 50 * count
    tris = []
    off = 84
    for _ in range(count):
        vals = struct.unpack_from("<12fH", blob, off)
        assert vals[12] == 0
        tris.append(
            (
                vals[0:3],
                (vals[3:6], vals[6:9], vals[9:12]),
            )
        )
        off += 50
    return tris


def test_two_triangle_patch_is_184_bytes():
    mesh = TriMesh(
        np.array([[0.0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]),
        np.array([[0, 1, 2], [0, 2, 3]]),
    )
    blob = write_stl(mesh)
    assert len(blob) == 184
    tris = parse_stl(blob)
    assert len(tris) == 2
    # both triangles face +z
    for normal, _ in tris:
        np.testing.assert_allclose(normal, (0, 0, 1), atol=1e-7)


def test_stl_length_formula_and_round_trip():
    mesh = torus_mesh(k=8, n=64)
    blob = write_stl(mesh)
    nt = mesh.triangles.shape[0]
    assert len(blob) == 84 + 50 * nt
    tris = parse_stl(blob)
    got = np.array([v for _, verts in tris for v in verts])
    expect = mesh.vertices[mesh.triangles.reshape(-1)].astype(np.float32)
    np.testing.assert_array_equal(got.astype(np.float32), expect)


def test_stl_unit_scale():
    mesh = TriMesh(
        np.array([[0.0, 0, 0], [1, 0, 0], [0, 1, 0]]), np.array([[0, 1, 2]])
    )
    tris = parse_stl(write_stl(mesh, unit_scale=25.4))
    assert max(c for _, verts in tris for v in verts for c in v) == pytest.approx(25.4)


def test_stl_refuses_empty_mesh():
    mesh = TriMesh(np.zeros((0, 3)), np.zeros((0, 3), dtype=int))
    with pytest.raises(EmptyMeshError):
        write_stl(mesh)
