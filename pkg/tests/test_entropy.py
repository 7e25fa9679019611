import math

import numpy as np
import pytest

from inconstancy.crofton import empirical_pn, estimate_crofton
from inconstancy.entropy import (
    curve_entropy,
    empirical_entropy,
    entropy_std_error,
    max_entropy,
    modified_entropy,
)
from inconstancy.geometry import CurveMetrics, inconstancy, polyline_from_values
from oracles import geometric_max_entropy


def metrics_for(i, length=1.0):
    perimeter = 2 * length / i
    return CurveMetrics(length, perimeter, 2 * length / perimeter)


def test_modified_entropy():
    assert modified_entropy(inconstancy(polyline_from_values([0]))) == 0.0
    assert modified_entropy(metrics_for(math.sqrt(2))) == pytest.approx(math.log(2) / 2)
    g = inconstancy(polyline_from_values([1, 0]))
    assert modified_entropy(g) == pytest.approx(math.log(2 * math.sqrt(2) / (1 + math.sqrt(2))))


def test_segment_boundary():
    rep = max_entropy(inconstancy(polyline_from_values([0])))
    assert rep.h_max == 0.0
    assert rep.beta == math.inf
    assert rep.straight


def test_closed_convex_curve():
    # delta = length, so I = 2 and beta = log 2.
    rep = max_entropy(CurveMetrics(3.0, 3.0, 2.0))
    assert rep.beta == pytest.approx(math.log(2))
    assert rep.h_max == pytest.approx(2 * math.log(2))


@pytest.mark.parametrize("i", [1.0001, 1.05, 1.1716, 1.5, 2.0, 3.7, 10.0])
def test_h_max_is_entropy_of_geometric_law(i):
    rep = max_entropy(metrics_for(i))
    assert rep.h_max == pytest.approx(geometric_max_entropy(i), abs=1e-10)


def test_beta_decreases_with_inconstancy():
    grid = np.linspace(1.001, 2.0, 200)
    betas = [max_entropy(metrics_for(i)).beta for i in grid]
    assert all(b < a for a, b in zip(betas, betas[1:]))


def test_strict_gap_for_fluctuating_curves():
    rng = np.random.default_rng(1)
    for _ in range(50):
        m = inconstancy(polyline_from_values(rng.uniform(-3, 3, rng.integers(2, 9))))
        if m.inconstancy > 1:
            rep = max_entropy(m)
            assert 0 < rep.modified_entropy < rep.h_max


def test_empirical_entropy():
    assert empirical_entropy({1: 1.0}) == 0.0
    assert empirical_entropy({1: 0.5, 2: 0.5}) == pytest.approx(math.log(2))
    assert empirical_entropy({1: 0.5, 2: 0.5, 3: 0.0}) == pytest.approx(math.log(2))
    with pytest.raises(ValueError):
        empirical_entropy({1: 0.4, 2: 0.4})


def test_mc_entropy_below_h_max_for_gamma_10():
    curve = polyline_from_values([1, 0])
    est = estimate_crofton(curve, 200_000, seed=0)
    h = empirical_entropy(empirical_pn(est))
    assert h <= max_entropy(inconstancy(curve)).h_max + 0.01


def test_curve_entropy_report():
    rep = curve_entropy(polyline_from_values([1, 0]), n_samples=20_000, seed=1)
    assert rep.empirical_entropy is not None
    assert rep.modified_entropy == pytest.approx(math.log(inconstancy(polyline_from_values([1, 0])).inconstancy), abs=1e-12)
    assert curve_entropy(polyline_from_values([1, 0])).empirical_entropy is None


def test_entropy_std_error_matches_replication_spread():
    curve = polyline_from_values([2, -1, 3, 0])
    hs, errs = [], []
    for seed in range(30):
        est = estimate_crofton(curve, 20_000, seed=seed)
        pn = empirical_pn(est)
        hs.append(empirical_entropy(pn))
        errs.append(entropy_std_error(pn, est.n_lines_hitting))
    spread = float(np.std(hs, ddof=1))
    assert 0.6 < spread / float(np.mean(errs)) < 1.5
    assert entropy_std_error({1: 1.0}, 10) == 0.0
    with pytest.raises(ValueError):
        entropy_std_error({1: 1.0}, 0)
