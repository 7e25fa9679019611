"""Classical fluctuation statistics, for comparison with inconstancy.

All statistics of a value list are taken over the vertices of its curve,
origin included, so ``[a1, a2]`` is the three points (0,0), (1,a1), (2,a2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateAbscissaError
from .geometry import inconstancy, polyline_from_values


@dataclass(frozen=True)
class RegressionFit:
    slope: float
    intercept: float
    n_points: int


@dataclass(frozen=True)
class FluctuationReport:
    mse: float
    rmse: float
    total_variation: float
    max_distance: float
    inconstancy: float


def _xy(points):
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must be (x, y) pairs")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    return pts[:, 0], pts[:, 1]


def regression(points) -> RegressionFit:
    """Least-squares line y = slope * x + intercept."""
    x, y = _xy(points)
    if x.size < 3:
        raise ValueError("regression needs at least 3 points")
    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise DegenerateAbscissaError("all abscissae are equal")
    slope = float(dx @ (y - y.mean())) / sxx
    return RegressionFit(slope, float(y.mean() - slope * x.mean()), int(x.size))


def _residuals(points):
    fit = regression(points)
    x, y = _xy(points)
    return y - fit.slope * x - fit.intercept


def mse(points) -> float:
    """Residual variance: sum of squared residuals over n - 2."""
    r = _residuals(points)
    return float(r @ r) / (r.size - 2)


def rmse(points) -> float:
    return math.sqrt(mse(points))


def total_variation(points) -> float:
    """Mean of (y_i - mean y)^2."""
    _, y = _xy(points)
    if y.size == 0:
        raise ValueError("total_variation needs at least one point")
    d = y - y.mean()
    return float(d @ d) / y.size


def max_distance(points) -> float:
    """Largest absolute residual about the regression line."""
    return float(np.max(np.abs(_residuals(points))))


def curve_points(values: Sequence[float]) -> np.ndarray:
    curve = polyline_from_values(values)
    return np.column_stack((curve.xs, curve.ys))


def fluctuation_report(values: Sequence[float]) -> FluctuationReport:
    if len(values) < 2:
        raise ValueError("fluctuation_report needs at least 2 values")
    pts = curve_points(values)
    m = mse(pts)
    return FluctuationReport(
        mse=m,
        rmse=math.sqrt(m),
        total_variation=total_variation(pts),
        max_distance=max_distance(pts),
        inconstancy=inconstancy(polyline_from_values(values)).inconstancy,
    )


def inconstancy_changes(values: Sequence[float], candidates: Sequence[float]) -> dict:
    """|I(values + [c]) - I(values)| for every candidate c."""
    base = inconstancy(polyline_from_values(values)).inconstancy
    out = {}
    for c in candidates:
        extended = list(values) + [float(c)]
        out[float(c)] = abs(inconstancy(polyline_from_values(extended)).inconstancy - base)
    return out


def predict_next(values: Sequence[float], candidates: Sequence[float]) -> float:
    """Candidate whose addition changes the inconstancy least.

    Ties go to the smallest candidate. A candidate equal to the last value is
    allowed (it adds a flat segment).
    """
    if len(values) < 2:
        raise ValueError("predict_next needs at least 2 values")
    if len(candidates) == 0:
        raise ValueError("candidates must be non-empty")
    changes = inconstancy_changes(values, candidates)
    return min(changes, key=lambda c: (changes[c], c))
