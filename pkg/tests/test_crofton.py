import math

import numpy as np
import pytest

from inconstancy.crofton import (
    LineParam,
    McEstimate,
    empirical_pn,
    estimate_crofton,
    intersect_count,
)
from inconstancy.errors import EmptyEstimateError
from inconstancy.geometry import Polyline, inconstancy, polyline_from_points, polyline_from_values

GAMMA_10 = polyline_from_values([1, 0])


def regular_polygon(k):
    t = np.linspace(0, 2 * math.pi, k + 1)
    t[-1] = 0.0
    return Polyline(np.cos(t), np.sin(t))


def random_polylines(count, seed, max_segments=8):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, max_segments + 1))
        yield polyline_from_values(rng.uniform(-3, 3, n))


@pytest.mark.parametrize(
    "rho, theta, expected",
    [(1.0, 0.0, 1), (0.5, math.pi / 2, 2), (-1.0, math.pi / 2, 0)],
)
def test_intersect_count(rho, theta, expected):
    assert intersect_count(LineParam(rho, theta), GAMMA_10) == expected


def test_intersect_count_overlap_and_vertex_runs():
    flat = polyline_from_points([(0, 0), (1, 0), (2, 0), (3, 1)])
    # The line y = 0 contains two segments: one intersection "point".
    assert intersect_count(LineParam(0.0, math.pi / 2), flat) == 1
    # theta = 0 keeps the line exactly vertical (cos(pi/2) is not 0 in floats).
    zig = polyline_from_points([(0, 0), (1, 1), (0, 2), (1, 3), (0, 4)])
    assert intersect_count(LineParam(1.0, 0.0), zig) == 2
    assert intersect_count(LineParam(0.5, 0.0), zig) == 4
    assert intersect_count(LineParam(0.0, 0.0), zig) == 3


def test_intersect_count_closed_curve_start_vertex():
    square = polyline_from_points([(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)])
    # x + y = 0 touches only the corner where the curve starts and ends.
    assert intersect_count(LineParam(0.0, 3 * math.pi / 4 - math.pi / 2), square) == 1
    assert intersect_count(LineParam(0.5, 0.0), square) == 2


def test_line_param_validation():
    with pytest.raises(ValueError):
        LineParam(0.0, math.pi)
    with pytest.raises(ValueError):
        LineParam(math.nan, 0.0)


def test_single_segment_mean_is_one():
    est = estimate_crofton(polyline_from_values([0]), 50_000, seed=1)
    assert est.mean_hits == 1.0
    assert est.std_error == 0.0
    assert empirical_pn(est) == {1: 1.0}


def test_polygon_circle_mean_is_two():
    est = estimate_crofton(regular_polygon(360), 50_000, seed=2)
    assert abs(est.mean_hits - 2.0) < 1e-3
    assert empirical_pn(est)[2] > 0.999


def test_gamma_10_estimate():
    est = estimate_crofton(GAMMA_10, 1_000_000, seed=0)
    exact = 2 * math.sqrt(2) / (1 + math.sqrt(2))
    assert abs(est.mean_hits - exact) <= 3 * est.std_error
    pn = empirical_pn(est)
    assert set(pn) == {1, 2}
    assert pn[1] + pn[2] == pytest.approx(1.0, abs=1e-12)
    assert abs(sum(n * p for n, p in pn.items()) - 1.1716) < 5e-3


def test_pn_moments_are_exact():
    est = estimate_crofton(polyline_from_values([2, -1, 3, 0]), 100_000, seed=5)
    pn = empirical_pn(est)
    assert abs(sum(pn.values()) - 1.0) < 1e-12
    assert abs(sum(n * p for n, p in pn.items()) - est.mean_hits) < 1e-12
    assert sum(est.hit_histogram.values()) == est.n_lines_hitting
    assert all(isinstance(k, int) and k >= 1 for k in est.hit_histogram)


def test_unbiased_on_random_polylines():
    for curve in random_polylines(20, seed=11):
        est = estimate_crofton(curve, 100_000, seed=3)
        exact = inconstancy(curve).inconstancy
        assert abs(est.mean_hits - exact) <= 4 * est.std_error + 1e-12


def test_determinism_and_worker_independence():
    a = estimate_crofton(GAMMA_10, 70_000, seed=9)
    b = estimate_crofton(GAMMA_10, 70_000, seed=9)
    c = estimate_crofton(GAMMA_10, 70_000, seed=9, workers=3)
    assert a == b == c
    assert estimate_crofton(GAMMA_10, 70_000, seed=10) != a


def test_hit_fraction_estimates_hull_perimeter():
    for curve in (GAMMA_10, polyline_from_values([2, -1, 3, 0])):
        est = estimate_crofton(curve, 1_000_000, seed=4)
        perimeter = inconstancy(curve).hull_perimeter
        assert abs(est.omega_measure - perimeter) / perimeter < 0.05


def test_estimate_validation():
    with pytest.raises(ValueError):
        estimate_crofton(GAMMA_10, 0)
    empty = McEstimate(math.nan, math.nan, 0, 10, {})
    with pytest.raises(EmptyEstimateError):
        empirical_pn(empty)
