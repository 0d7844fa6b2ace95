"""Hot numeric kernels: numba-jitted fast path, pure-numpy fallback.

The active backend is chosen at import time from the ORBITLOOM_BACKEND
environment variable ("numba" or "numpy").  Default is numba when it is
importable.  Both backends compute the same quantities; the numpy path is
the reference implementation and the jitted path must agree with it to
floating-point noise (see tests/test_kernels.py).  Nothing here is
parallel, so results are deterministic within a backend.
"""

from __future__ import annotations

import math
import os
import warnings

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# numpy reference implementations


def trig_eval_numpy(us, freqs, amps, phases, ox, oy):
    """Points of sum_k amps[k]*(cos, sin)(freqs[k]*u + phases[k]) + offset."""
    ang = us[:, None] * freqs[None, :] + phases[None, :]
    x = (np.cos(ang) * amps).sum(axis=1) + ox
    y = (np.sin(ang) * amps).sum(axis=1) + oy
    return np.stack([x, y], axis=1)


def trig_velocity_numpy(us, freqs, amps, phases):
    """Exact derivative of trig_eval with respect to u (offset drops out)."""
    ang = us[:, None] * freqs[None, :] + phases[None, :]
    fa = freqs * amps
    x = (-np.sin(ang) * fa).sum(axis=1)
    y = (np.cos(ang) * fa).sum(axis=1)
    return np.stack([x, y], axis=1)


def directed_hausdorff_numpy(a, b):
    """max over a of min over b of Euclidean distance; a is (n,d), b (m,d)."""
    worst = 0.0
    # chunked so the (n, m) distance matrix never materializes whole
    for lo in range(0, a.shape[0], 256):
        chunk = a[lo : lo + 256]
        d2 = ((chunk[:, None, :] - b[None, :, :]) ** 2).sum(axis=2)
        worst = max(worst, float(d2.min(axis=1).max()))
    return math.sqrt(worst)


def rmf_normals_numpy(points, tangents, r0):
    """Rotation-minimizing normals along a polyline via double reflection.

    points and tangents are (n, 3) with unit tangents; r0 is the unit
    start normal (perpendicular to tangents[0]).  Returns (n, 3) unit
    normals, each re-orthogonalized against its tangent to stop drift.
    """
    n = points.shape[0]
    rs = np.empty((n, 3))
    rs[0] = r0
    for i in range(n - 1):
        v1 = points[i + 1] - points[i]
        c1 = float(v1 @ v1)
        if c1 == 0.0:
            rs[i + 1] = rs[i]
            continue
        rl = rs[i] - (2.0 / c1) * (v1 @ rs[i]) * v1
        tl = tangents[i] - (2.0 / c1) * (v1 @ tangents[i]) * v1
        v2 = tangents[i + 1] - tl
        c2 = float(v2 @ v2)
        r = rl if c2 == 0.0 else rl - (2.0 / c2) * (v2 @ rl) * v2
        r = r - (r @ tangents[i + 1]) * tangents[i + 1]
        rs[i + 1] = r / math.sqrt(float(r @ r))
    return rs


def close_pair_count_numpy(points, threshold, window, closed):
    """Pairs closer than threshold, skipping near-neighbors along the spine.

    window is the index distance (cyclic when closed) within which pairs are
    ignored; those are trivially close because the spine is continuous.
    """
    n = points.shape[0]
    thr2 = threshold * threshold
    count = 0
    for i in range(n - 1):
        d2 = ((points[i + 1 :] - points[i]) ** 2).sum(axis=1)
        js = np.nonzero(d2 < thr2)[0] + i + 1
        for j in js:
            idx = j - i
            if closed:
                idx = min(idx, n - idx)
            if idx > window:
                count += 1
    return count


# ---------------------------------------------------------------------------
# numba fast path

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def trig_eval_numba(us, freqs, amps, phases, ox, oy):
        n = us.shape[0]
        k = freqs.shape[0]
        out = np.empty((n, 2))
        for i in range(n):
            x = ox
            y = oy
            for j in range(k):
                ang = freqs[j] * us[i] + phases[j]
                x += amps[j] * math.cos(ang)
                y += amps[j] * math.sin(ang)
            out[i, 0] = x
            out[i, 1] = y
        return out

    @numba.njit(cache=True)
    def trig_velocity_numba(us, freqs, amps, phases):
        n = us.shape[0]
        k = freqs.shape[0]
        out = np.empty((n, 2))
        for i in range(n):
            x = 0.0
            y = 0.0
            for j in range(k):
                ang = freqs[j] * us[i] + phases[j]
                fa = freqs[j] * amps[j]
                x -= fa * math.sin(ang)
                y += fa * math.cos(ang)
            out[i, 0] = x
            out[i, 1] = y
        return out

    @numba.njit(cache=True)
    def directed_hausdorff_numba(a, b):
        worst = 0.0
        for i in range(a.shape[0]):
            best = np.inf
            for j in range(b.shape[0]):
                s = 0.0
                for c in range(a.shape[1]):
                    diff = a[i, c] - b[j, c]
                    s += diff * diff
                if s < best:
                    best = s
            if best > worst:
                worst = best
        return math.sqrt(worst)

    @numba.njit(cache=True)
    def rmf_normals_numba(points, tangents, r0):
        n = points.shape[0]
        rs = np.empty((n, 3))
        rs[0] = r0
        for i in range(n - 1):
            v1 = points[i + 1] - points[i]
            c1 = v1 @ v1
            if c1 == 0.0:
                rs[i + 1] = rs[i]
                continue
            rl = rs[i] - (2.0 / c1) * (v1 @ rs[i]) * v1
            tl = tangents[i] - (2.0 / c1) * (v1 @ tangents[i]) * v1
            v2 = tangents[i + 1] - tl
            c2 = v2 @ v2
            if c2 == 0.0:
                r = rl
            else:
                r = rl - (2.0 / c2) * (v2 @ rl) * v2
            r = r - (r @ tangents[i + 1]) * tangents[i + 1]
            rs[i + 1] = r / math.sqrt(r @ r)
        return rs

    @numba.njit(cache=True)
    def close_pair_count_numba(points, threshold, window, closed):
        n = points.shape[0]
        thr2 = threshold * threshold
        count = 0
        for i in range(n - 1):
            for j in range(i + 1, n):
                idx = j - i
                if closed and n - idx < idx:
                    idx = n - idx
                if idx <= window:
                    continue
                s = 0.0
                for c in range(points.shape[1]):
                    diff = points[i, c] - points[j, c]
                    s += diff * diff
                if s < thr2:
                    count += 1
        return count


_IMPLS = {
    "trig_eval": trig_eval_numpy,
    "trig_velocity": trig_velocity_numpy,
    "directed_hausdorff": directed_hausdorff_numpy,
    "rmf_normals": rmf_normals_numpy,
    "close_pair_count": close_pair_count_numpy,
}
_JIT_IMPLS = (
    {
        "trig_eval": trig_eval_numba,
        "trig_velocity": trig_velocity_numba,
        "directed_hausdorff": directed_hausdorff_numba,
        "rmf_normals": rmf_normals_numba,
        "close_pair_count": close_pair_count_numba,
    }
    if HAVE_NUMBA
    else {}
)


def _pick_backend():
    requested = os.environ.get("ORBITLOOM_BACKEND", "").strip().lower()
    if requested not in ("", "numba", "numpy"):
        warnings.warn(
            f"ORBITLOOM_BACKEND={requested!r} not recognized; using default",
            RuntimeWarning,
        )
        requested = ""
    if requested == "numba" and not HAVE_NUMBA:
        warnings.warn(
            "ORBITLOOM_BACKEND=numba but numba is not importable; using numpy",
            RuntimeWarning,
        )
        requested = "numpy"
    if requested == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


BACKEND = _pick_backend()

_active = _JIT_IMPLS if BACKEND == "numba" else _IMPLS

trig_eval = _active["trig_eval"]
trig_velocity = _active["trig_velocity"]
directed_hausdorff = _active["directed_hausdorff"]
rmf_normals = _active["rmf_normals"]
close_pair_count = _active["close_pair_count"]


def hausdorff(a, b):
    """Symmetric Hausdorff distance between two point sets (n,d) and (m,d)."""
    return max(directed_hausdorff(a, b), directed_hausdorff(b, a))


def warmup():
    """Trigger JIT compilation of every kernel on tiny inputs."""
    us = np.array([0.0, 1.0])
    one = np.array([1.0])
    trig_eval(us, one, one, np.array([0.0]), 0.0, 0.0)
    trig_velocity(us, one, one, np.array([0.0]))
    pts2 = np.zeros((2, 2))
    directed_hausdorff(pts2, pts2)
    pts3 = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    tans = np.array([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    rmf_normals(pts3, tans, np.array([0.0, 0.0, 1.0]))
    close_pair_count(pts3, 0.1, 1, False)
