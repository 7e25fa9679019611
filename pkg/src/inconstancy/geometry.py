"""Exact length, convex hull and inconstancy of plane polylines.

The inconstancy of a curve is ``2 * length / hull_perimeter``: the mean number
of points in which a random line meeting the curve cuts it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True, eq=False)
class Polyline:
    """Vertices of a piecewise-linear curve, stored as two float arrays."""

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape:
            raise ValueError("xs and ys must be 1-d arrays of equal length")
        if xs.size < 2:
            raise ValueError("a polyline needs at least 2 vertices")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError("polyline coordinates must be finite")
        same = (xs[1:] == xs[:-1]) & (ys[1:] == ys[:-1])
        if same.any():
            k = int(np.argmax(same))
            raise ValueError(f"vertices {k} and {k + 1} coincide")
        xs.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @property
    def vertices(self) -> list[Point2]:
        return [Point2(x, y) for x, y in zip(self.xs.tolist(), self.ys.tolist())]

    @property
    def n_segments(self) -> int:
        return self.xs.size - 1

    def __len__(self):
        return self.xs.size

    def transformed(self, angle=0.0, scale=1.0, shift=(0.0, 0.0)) -> Polyline:
        """Rotate by ``angle``, scale by ``scale`` > 0, then translate."""
        if not scale > 0:
            raise ValueError("scale must be positive")
        c, s = math.cos(angle), math.sin(angle)
        xs = scale * (c * self.xs - s * self.ys) + shift[0]
        ys = scale * (s * self.xs + c * self.ys) + shift[1]
        return Polyline(xs, ys)


@dataclass(frozen=True)
class ConvexHull:
    """Counter-clockwise hull vertices with collinear boundary points dropped.

    When the input is collinear the hull is the segment between the two
    extreme points and ``degenerate`` is set.
    """

    vertices: tuple[Point2, ...]
    degenerate: bool


@dataclass(frozen=True)
class CurveMetrics:
    length: float
    hull_perimeter: float
    inconstancy: float


def _check_values(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("need a non-empty 1-d list of values")
    if not np.all(np.isfinite(arr)):
        raise ValueError("values must be finite")
    return arr


def polyline_from_values(values: Sequence[float]) -> Polyline:
    """The curve through (0, 0), (1, a_1), ..., (n, a_n)."""
    arr = _check_values(values)
    ys = np.concatenate(([0.0], arr))
    return Polyline(np.arange(ys.size, dtype=float), ys)


def polyline_from_sequence(values: Sequence[float]) -> Polyline:
    """The curve through (k, u_k) for k = 0..N, with no origin prepended.

    For a sequence with u_0 = 0 this is ``polyline_from_values(values[1:])``.
    """
    arr = _check_values(values)
    return Polyline(np.arange(arr.size, dtype=float), arr)


def polyline_from_points(points: Iterable[tuple[float, float]]) -> Polyline:
    pts = np.asarray(list(points), dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must be (x, y) pairs")
    return Polyline(pts[:, 0], pts[:, 1])


def arc_length(curve: Polyline) -> float:
    return math.fsum(np.hypot(np.diff(curve.xs), np.diff(curve.ys)).tolist())


def _half_hull(xs, ys):
    # Exact sign of the cross product on raw doubles; collinear points popped.
    hx, hy = [], []
    for px, py in zip(xs, ys):
        n = len(hx)
        while n >= 2:
            ox, oy = hx[n - 2], hy[n - 2]
            if (hx[n - 1] - ox) * (py - oy) - (hy[n - 1] - oy) * (px - ox) <= 0.0:
                hx.pop()
                hy.pop()
                n -= 1
            else:
                break
        hx.append(px)
        hy.append(py)
    return list(zip(hx, hy))


def convex_hull(points) -> ConvexHull:
    """Monotone-chain convex hull, O(n log n).

    Accepts a :class:`Polyline` or any iterable of (x, y) pairs.
    """
    if isinstance(points, Polyline):
        xs, ys = points.xs, points.ys
    else:
        pts = np.asarray(list(points), dtype=float).reshape(-1, 2)
        xs, ys = pts[:, 0], pts[:, 1]
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        raise ValueError("points must be finite")
    order = np.lexsort((ys, xs))
    xs, ys = xs[order], ys[order]
    keep = np.ones(xs.size, dtype=bool)
    keep[1:] = (xs[1:] != xs[:-1]) | (ys[1:] != ys[:-1])
    xs, ys = xs[keep].tolist(), ys[keep].tolist()
    if len(xs) < 2:
        raise ValueError("convex hull needs at least 2 distinct points")
    lower = _half_hull(xs, ys)
    upper = _half_hull(xs[::-1], ys[::-1])
    ring = lower[:-1] + upper[:-1]
    if len(ring) <= 2:
        return ConvexHull(
            (Point2(xs[0], ys[0]), Point2(xs[-1], ys[-1])), degenerate=True
        )
    return ConvexHull(tuple(Point2(*p) for p in ring), degenerate=False)


def hull_perimeter(hull: ConvexHull) -> float:
    """Perimeter of the hull; twice the extreme-point distance if degenerate."""
    vs = hull.vertices
    if hull.degenerate:
        (x0, y0), (x1, y1) = vs
        return 2.0 * math.hypot(x1 - x0, y1 - y0)
    return math.fsum(
        math.hypot(vs[i - 1].x - vs[i].x, vs[i - 1].y - vs[i].y) for i in range(len(vs))
    )


def _monotone_along(curve: Polyline, hull: ConvexHull) -> bool:
    (x0, y0), (x1, y1) = hull.vertices
    proj = (curve.xs - x0) * (x1 - x0) + (curve.ys - y0) * (y1 - y0)
    steps = np.diff(proj)
    return bool(np.all(steps > 0) or np.all(steps < 0))


def inconstancy(curve: Polyline) -> CurveMetrics:
    hull = convex_hull(curve)
    perimeter = hull_perimeter(hull)
    if hull.degenerate and _monotone_along(curve, hull):
        # Straight curve: its length is the extreme distance, so I is exactly 1.
        length = perimeter / 2.0
    else:
        length = arc_length(curve)
    return CurveMetrics(length, perimeter, 2.0 * length / perimeter)


def sequence_inconstancy(values: Sequence[float]) -> float:
    """Inconstancy of the finite sequence u_0..u_N (curve through (k, u_k))."""
    return inconstancy(polyline_from_sequence(values)).inconstancy


def two_segment_inconstancy(a1: float, a2: float) -> float:
    """Closed-form inconstancy of the curve (0,0)-(1,a1)-(2,a2)."""
    ratio = math.sqrt(a2 * a2 + 4.0) / (
        math.sqrt(a1 * a1 + 1.0) + math.sqrt((a2 - a1) ** 2 + 1.0)
    )
    return 2.0 / (1.0 + ratio)
