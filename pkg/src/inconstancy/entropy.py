"""Entropy and temperature of a plane curve.

Logarithms are natural throughout. ``beta`` is the inverse temperature;
``h_max`` is the largest entropy of a distribution p_n on n >= 1 whose mean
equals the inconstancy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .crofton import empirical_pn, estimate_crofton
from .geometry import CurveMetrics, inconstancy


@dataclass(frozen=True)
class EntropyReport:
    modified_entropy: float
    h_max: float
    beta: float
    empirical_entropy: float | None = None
    empirical_std_error: float | None = None

    @property
    def straight(self) -> bool:
        """True at the I = 1 boundary, where beta is infinite."""
        return math.isinf(self.beta)


def modified_entropy(metrics: CurveMetrics) -> float:
    """log I."""
    return math.log(metrics.inconstancy)


def max_entropy(
    metrics: CurveMetrics, empirical: float | None = None, std_error: float | None = None
) -> EntropyReport:
    two_l = 2.0 * metrics.length
    gap = two_l - metrics.hull_perimeter
    h = modified_entropy(metrics)
    if gap <= 0.0:
        # I = 1: a single intersection is forced, so the entropy is 0.
        return EntropyReport(max(h, 0.0), 0.0, math.inf, empirical, std_error)
    beta = math.log(two_l / gap)
    return EntropyReport(h, h + beta / math.expm1(beta), beta, empirical, std_error)


def empirical_entropy(pn: Mapping[int, float]) -> float:
    """Shannon entropy of p_n in nats; zero-mass bins contribute nothing."""
    probs = list(pn.values())
    if any(p < 0 for p in probs) or abs(math.fsum(probs) - 1.0) > 1e-9:
        raise ValueError("p_n must be a probability distribution")
    return 0.0 - math.fsum(p * math.log(p) for p in probs if p > 0)


def entropy_std_error(pn: Mapping[int, float], n: int) -> float:
    """Delta-method standard error of the plug-in entropy from n draws.

    Var(H) ~ (sum p log^2 p - H^2) / n.
    """
    if n < 1:
        raise ValueError("need at least one draw")
    h = empirical_entropy(pn)
    second = math.fsum(p * math.log(p) ** 2 for p in pn.values() if p > 0)
    return math.sqrt(max(second - h * h, 0.0) / n)


def curve_entropy(curve, n_samples: int | None = None, seed: int = 0) -> EntropyReport:
    """Entropy report for a polyline, with the Monte Carlo entropy if sampled."""
    metrics = inconstancy(curve)
    emp = err = None
    if n_samples:
        est = estimate_crofton(curve, n_samples, seed)
        pn = empirical_pn(est)
        emp = empirical_entropy(pn)
        err = entropy_std_error(pn, est.n_lines_hitting)
    return max_entropy(metrics, emp, err)
