"""Monte Carlo check of the Cauchy-Crofton formula.

Lines ``x cos(theta) + y sin(theta) = rho`` are drawn uniformly from the box
``theta in [0, pi)``, ``|rho - c(theta)| <= R`` where ``c`` is the projection
of the curve's bounding-box centre and ``R`` bounds the distance from that
centre to every vertex. The box contains every line meeting the curve, so
conditioning on a hit gives the uniform ``d rho d theta`` measure on the
lines meeting it, and ``hit fraction * 2 pi R`` estimates that set's measure
(the hull perimeter, for a connected curve).

Sampling is split into fixed-size chunks, each with its own child stream of
``numpy.random.SeedSequence(seed)``, so results depend only on the inputs
and the seed, not on how the chunks are scheduled.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyEstimateError
from .geometry import Polyline

CHUNK = 1 << 14


@dataclass(frozen=True)
class LineParam:
    """The line ``x cos(theta) + y sin(theta) = rho``; ``rho`` may be negative."""

    rho: float
    theta: float

    def __post_init__(self):
        if not 0.0 <= self.theta < math.pi:
            raise ValueError("theta must lie in [0, pi)")
        if not math.isfinite(self.rho):
            raise ValueError("rho must be finite")


@dataclass(frozen=True)
class McEstimate:
    mean_hits: float
    std_error: float
    n_lines_hitting: int
    n_lines_sampled: int
    hit_histogram: dict = field(default_factory=dict)
    box_measure: float = 0.0

    @property
    def omega_measure(self) -> float:
        """Estimated measure of the set of lines meeting the curve."""
        return self.box_measure * self.n_lines_hitting / self.n_lines_sampled


def _count_hits(signed: np.ndarray, closed: bool) -> np.ndarray:
    """Intersection points per row of signed vertex distances (lines x vertices).

    Strict sign changes are transversal crossings. Each maximal run of
    vertices lying on the line (a vertex hit or an overlapped segment) is one
    point. For a closed curve a run wrapping past the start is merged.
    """
    sign = np.sign(signed)
    crossings = np.count_nonzero(sign[:, 1:] * sign[:, :-1] < 0, axis=1)
    on = sign == 0
    runs = on[:, 0].astype(np.int64) + np.count_nonzero(on[:, 1:] & ~on[:, :-1], axis=1)
    if closed:
        runs -= (on[:, 0] & on[:, -1]).astype(np.int64)
        runs = np.maximum(runs, on.any(axis=1).astype(np.int64))
    return crossings + runs


def _is_closed(curve: Polyline) -> bool:
    return curve.xs[0] == curve.xs[-1] and curve.ys[0] == curve.ys[-1]


def intersect_count(line: LineParam, curve: Polyline) -> int:
    """Number of points of ``curve`` on ``line`` (an overlapped segment counts once)."""
    signed = curve.xs * math.cos(line.theta) + curve.ys * math.sin(line.theta) - line.rho
    return int(_count_hits(signed[None, :], _is_closed(curve))[0])


def _sampling_box(curve: Polyline):
    cx = 0.5 * (curve.xs.min() + curve.xs.max())
    cy = 0.5 * (curve.ys.min() + curve.ys.max())
    radius = float(np.max(np.hypot(curve.xs - cx, curve.ys - cy)))
    # Pad so vertices on the circumscribed circle are strictly inside.
    return cx, cy, radius * (1.0 + 1e-9)


def _run_chunk(curve, closed, cx, cy, radius, size, seq):
    rng = np.random.default_rng(seq)
    theta = rng.uniform(0.0, math.pi, size)
    offset = rng.uniform(-radius, radius, size)
    c, s = np.cos(theta), np.sin(theta)
    rel_x = curve.xs - cx
    rel_y = curve.ys - cy
    signed = np.outer(c, rel_x) + np.outer(s, rel_y) - offset[:, None]
    hits = _count_hits(signed, closed)
    hits = hits[hits > 0]
    return Counter(hits.tolist())


def estimate_crofton(
    curve: Polyline, n_samples: int, seed: int = 0, workers: int = 1
) -> McEstimate:
    """Mean number of intersections of random lines meeting ``curve``."""
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    cx, cy, radius = _sampling_box(curve)
    closed = _is_closed(curve)
    n_chunks = -(-n_samples // CHUNK)
    sizes = [CHUNK] * (n_chunks - 1) + [n_samples - CHUNK * (n_chunks - 1)]
    seqs = np.random.SeedSequence(seed).spawn(n_chunks)
    args = [(curve, closed, cx, cy, radius, sz, sq) for sz, sq in zip(sizes, seqs)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda a: _run_chunk(*a), args))
    else:
        parts = [_run_chunk(*a) for a in args]
    hist = Counter()
    for part in parts:
        hist.update(part)
    hist = dict(sorted(hist.items()))

    n_hit = sum(hist.values())
    if n_hit:
        ks = np.array(list(hist), dtype=float)
        ws = np.array(list(hist.values()), dtype=float)
        mean = float(ks @ ws) / n_hit
        if n_hit > 1:
            var = float(ws @ (ks - mean) ** 2) / (n_hit - 1)
            std_error = math.sqrt(var / n_hit)
        else:
            std_error = 0.0
    else:
        mean, std_error = math.nan, math.nan
    return McEstimate(
        mean_hits=mean,
        std_error=std_error,
        n_lines_hitting=n_hit,
        n_lines_sampled=n_samples,
        hit_histogram=hist,
        box_measure=2.0 * radius * math.pi,
    )


def empirical_pn(estimate: McEstimate) -> dict:
    """Probability that a hitting line meets the curve in exactly n points."""
    if estimate.n_lines_hitting == 0:
        raise EmptyEstimateError("no sampled line met the curve")
    return {n: c / estimate.n_lines_hitting for n, c in estimate.hit_histogram.items()}
