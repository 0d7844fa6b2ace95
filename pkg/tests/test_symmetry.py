import math
from fractions import Fraction

import numpy as np
import pytest

from orbitloom import (
    CircularComponent,
    EmptyCurveError,
    InvalidParamError,
    NonCommensurableError,
    canonicalize,
    eq3,
    evaluate_many,
    sample,
    unit_orbit,
)
from orbitloom.kernels import hausdorff
from orbitloom.symmetry import (
    detect_order,
    fundamental_arc,
    rationalize,
    rationalized_curve,
    reduced_frequencies,
    verify_order,
)

TWO_PI = 2.0 * math.pi


def curve_of(*freqs, offset=(0.0, 0.0)):
    return canonicalize(
        [CircularComponent(f, 1.0 / (i + 1)) for i, f in enumerate(freqs)],
        offset=offset,
    )


def satellite_curve():
    return canonicalize([CircularComponent(1, 1.0), CircularComponent(12, 0.2)])


# ---------------------------------------------------------------------------
# reduced_frequencies


def test_reduce_integer_frequencies():
    g, ns = reduced_frequencies(curve_of(1, 12))
    assert g == 1
    assert set(ns) == {1, 12}


def test_reduce_fractional_frequencies():
    g, ns = reduced_frequencies(curve_of(Fraction(1, 2), Fraction(3, 4)))
    assert g == Fraction(1, 4)
    assert set(ns) == {2, 3}


def test_reduce_divides_by_integer_gcd():
    g, ns = reduced_frequencies(curve_of(2, 12))
    assert g == 2
    assert set(ns) == {1, 6}


def test_reduce_appends_zero_for_offset():
    g, ns = reduced_frequencies(curve_of(2, 12, offset=(0.5, 0.0)))
    assert g == 2
    assert ns[-1] == 0
    assert set(ns) == {1, 6, 0}


def test_reduce_refuses_float_frequencies():
    curve = canonicalize([CircularComponent(1, 1.0), CircularComponent(0.5317, 1.0)])
    with pytest.raises(NonCommensurableError):
        reduced_frequencies(curve)


# ---------------------------------------------------------------------------
# detect_order


@pytest.mark.parametrize(
    "a,b,order",
    [(6, 14, 5), (10, 14, 3), (7, 14, 3)],
)
def test_detect_order_on_threefold_and_fivefold_curves(a, b, order):
    report = detect_order(eq3(a, b, 1))
    assert report.order == order
    assert report.verified
    assert report.max_residual <= 1e-9


def test_detect_order_7_17_is_6():
    # the reduced set {1, 7, -17} gives gcd(6, 18, 24) = 6; order 6
    # invariance implies the 3-fold invariance observed on the plot
    report = detect_order(eq3(7, 17, 1))
    assert report.order == 6
    assert report.verified
    assert verify_order(eq3(7, 17, 1), 3).ok


def test_detect_order_satellite_is_11():
    report = detect_order(satellite_curve())
    assert report.order == 11
    assert report.verified


def test_detect_order_circle_is_infinite():
    report = detect_order(unit_orbit())
    assert report.is_infinite
    assert report.verified


def test_detect_order_shifted_circle_is_one():
    report = detect_order(curve_of(1, offset=(0.4, 0.0)))
    assert report.order == 1
    assert report.verified


def test_detect_order_rotation_angle_uses_first_reduced_frequency():
    report = detect_order(eq3(6, 14, 1))
    # reduced, sorted: (-14, 1, 6); -14 mod 5 = 1
    assert report.reduced_frequencies == (-14, 1, 6)
    assert math.isclose(report.rotation_angle, TWO_PI / 5)
    assert math.isclose(report.param_shift, TWO_PI / 5)


def test_detect_order_empty_curve_raises():
    with pytest.raises(EmptyCurveError):
        detect_order(canonicalize([]))


def test_detect_order_refuses_floats():
    curve = canonicalize([CircularComponent(1, 1.0), CircularComponent(1.532, 0.5)])
    with pytest.raises(NonCommensurableError):
        detect_order(curve)


def test_shift_identity_holds_pointwise():
    for curve in (eq3(6, 14, 1), eq3(10, 14, 1), satellite_curve()):
        report = detect_order(curve)
        us = np.linspace(0.0, TWO_PI, 1024, endpoint=False)
        lhs = evaluate_many(curve, us + report.param_shift)
        pts = evaluate_many(curve, us)
        c, s = math.cos(report.rotation_angle), math.sin(report.rotation_angle)
        rhs = pts @ np.array([[c, -s], [s, c]]).T
        assert np.linalg.norm(lhs - rhs, axis=1).max() <= 1e-9


def test_order_invariant_under_frequency_rescaling():
    base = eq3(6, 14, 1)
    for scale in (Fraction(2), Fraction(1, 3), Fraction(5, 7)):
        comps = [
            CircularComponent(c.frequency * scale, c.amplitude, c.phase)
            for c in base.components
        ]
        assert detect_order(canonicalize(comps)).order == 5


def test_order_invariant_under_global_phase_rotation():
    base = eq3(10, 14, 1)
    comps = [
        CircularComponent(c.frequency, c.amplitude, c.phase + 0.83)
        for c in base.components
    ]
    assert detect_order(canonicalize(comps)).order == 3


# ---------------------------------------------------------------------------
# verify_order


def test_verify_accepts_true_order():
    ok, residual = verify_order(eq3(6, 14, 1), 5, samples=1024, tol=1e-9)
    assert ok
    assert residual <= 1e-9


def test_verify_rejects_wrong_order():
    ok, residual = verify_order(eq3(6, 14, 1), 4)
    assert not ok
    assert residual > 0.1


def test_verify_accepts_divisors_of_order():
    assert verify_order(eq3(6, 14, 1), 1).ok
    assert verify_order(eq3(7, 17, 1), 2).ok
    assert verify_order(eq3(7, 17, 1), 6).ok


def test_verify_rejects_multiples_of_order():
    for curve, order in [(eq3(6, 14, 1), 5), (eq3(10, 14, 1), 3), (satellite_curve(), 11)]:
        for k in (2, 3):
            assert not verify_order(curve, k * order).ok


def test_verify_circle_any_order():
    for n in (1, 2, 7, 360):
        ok, residual = verify_order(unit_orbit(), n)
        assert ok
        assert residual <= 1e-12


def test_verify_float_curve_fails_without_error():
    curve = canonicalize([CircularComponent(1, 1.0), CircularComponent(0.5317, 0.5)])
    ok, residual = verify_order(curve, 3)
    assert not ok
    assert math.isinf(residual)


def test_verify_validates_arguments():
    with pytest.raises(InvalidParamError):
        verify_order(unit_orbit(), 0)
    with pytest.raises(InvalidParamError):
        verify_order(unit_orbit(), 3, samples=16)


def test_soundness_on_random_exact_curves():
    rng = np.random.default_rng(17)
    for _ in range(20):
        k = int(rng.integers(2, 5))
        freqs = set()
        while len(freqs) < k:
            freqs.add(
                Fraction(int(rng.integers(-15, 16)) or 1, int(rng.integers(1, 5)))
            )
        curve = canonicalize(
            [
                CircularComponent(f, float(rng.uniform(0.1, 1.0)), float(rng.uniform(0, TWO_PI)))
                for f in freqs
            ]
        )
        if not curve.components:
            continue
        report = detect_order(curve)
        if not report.is_infinite:
            assert verify_order(curve, int(report.order), 1024, 1e-9).ok


# ---------------------------------------------------------------------------
# fundamental_arc


def test_arc_with_n1_is_full_curve():
    curve = eq3(6, 14, 1)
    arc = fundamental_arc(curve, 1)
    assert math.isclose(arc.params[-1], TWO_PI)
    assert arc.closed


def test_rotated_arc_copies_tile_the_curve():
    curve = eq3(6, 14, 1)
    report = detect_order(curve)
    n = int(report.order)
    arc = fundamental_arc(curve, n, points_per_arc=512)
    copies = [arc.points]
    for k in range(1, n):
        ang = k * report.rotation_angle
        c, s = math.cos(ang), math.sin(ang)
        copies.append(arc.points @ np.array([[c, -s], [s, c]]).T)
    union = np.vstack(copies)
    full = sample(curve, n * 512 + 1, (0.0, TWO_PI)).points
    diameter = float(np.ptp(full, axis=0).max())
    assert hausdorff(union, full) <= 1e-6 * diameter


def test_wrong_arc_count_leaves_gaps():
    curve = eq3(6, 14, 1)
    arc = fundamental_arc(curve, 7, points_per_arc=512)
    copies = [arc.points]
    for k in range(1, 7):
        ang = k * TWO_PI / 7
        c, s = math.cos(ang), math.sin(ang)
        copies.append(arc.points @ np.array([[c, -s], [s, c]]).T)
    union = np.vstack(copies)
    full = sample(curve, 4096, (0.0, TWO_PI)).points
    diameter = float(np.ptp(full, axis=0).max())
    assert hausdorff(union, full) > 0.01 * diameter


def test_arc_validates_count():
    with pytest.raises(InvalidParamError):
        fundamental_arc(unit_orbit(), 0)


# ---------------------------------------------------------------------------
# rationalize


def brute_force_best(x, max_den):
    # all best approximations p/q, q <= max_den, by exact comparison
    target = Fraction(x)
    best = []
    best_err = None
    for q in range(1, max_den + 1):
        for p in (math.floor(x * q), math.ceil(x * q)):
            err = abs(Fraction(p, q) - target)
            if best_err is None or err < best_err:
                best, best_err = [Fraction(p, q)], err
            elif err == best_err:
                best.append(Fraction(p, q))
    min_den = min(f.denominator for f in best)
    return [f for f in best if f.denominator == min_den], best_err


def test_rationalize_exact_dyadic():
    assert rationalize(0.25, 100) == Fraction(1, 4)


def test_rationalize_matches_brute_force():
    rng = np.random.default_rng(29)
    xs = list(rng.uniform(-3.0, 3.0, size=40)) + [0.5317, 1.0 / 1.8808, 0.5]
    for x in xs:
        for max_den in (1, 2, 7, 10, 25, 50):
            got = rationalize(x, max_den)
            candidates, best_err = brute_force_best(x, max_den)
            assert got.denominator <= max_den
            assert abs(got - Fraction(x)) == best_err
            assert got in candidates


def test_rationalize_returns_exact_fractions_unchanged():
    for p, q in [(3, 7), (-22, 9), (1, 1000)]:
        x = p / q
        got = rationalize(x, 1000)
        # x as a float is not exactly p/q; only assert the denominator bound
        # and optimality
        candidates, best_err = brute_force_best(x, 1000)
        assert abs(got - Fraction(x)) == best_err


def test_rationalize_small_denominator_snap():
    assert rationalize(0.3333333333333333, 10) == Fraction(1, 3)
    assert rationalize(3.0, 5) == Fraction(3)


def test_rationalize_validates():
    with pytest.raises(InvalidParamError):
        rationalize(0.5, 0)
    with pytest.raises(InvalidParamError):
        rationalize(math.inf, 10)


def test_rationalized_curve_replaces_floats_only():
    curve = canonicalize(
        [CircularComponent(1, 1.0), CircularComponent(1 / 1.8808, 0.5)]
    )
    fixed = rationalized_curve(curve, 10)
    assert fixed.is_exact
    assert fixed.components[1].frequency == 1
    assert fixed.components[0].frequency == rationalize(1 / 1.8808, 10)
