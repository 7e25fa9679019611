"""Length-2 block frequencies and the inconstancy formulas built on them.

Exact frequencies for fixed points of primitive uniform morphisms come from
the pair morphism: its letters are the 2-blocks of the fixed point, and the
normalised left Perron vector of its incidence matrix gives their
frequencies.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import NotPrimitiveError
from .geometry import inconstancy, polyline_from_sequence
from .sequences import Morphism, SymbolSequence

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class BlockCounts:
    counts: dict
    total: int


@dataclass(frozen=True)
class BlockFrequencies:
    freqs: dict

    def __getitem__(self, block):
        return self.freqs.get(tuple(block), 0.0)


@dataclass(frozen=True)
class IncidenceMatrix:
    """``matrix[i, j]`` counts letter ``alphabet[j]`` in the image of ``alphabet[i]``."""

    matrix: np.ndarray
    alphabet: tuple


def _symbols(seq) -> tuple:
    return seq.symbols if isinstance(seq, SymbolSequence) else tuple(seq)


def count_blocks(seq) -> BlockCounts:
    """Counts of overlapping length-2 blocks ``(u_k, u_{k+1})``."""
    syms = _symbols(seq)
    if len(syms) < 2:
        raise ValueError("need at least 2 symbols to count blocks")
    counts = Counter(zip(syms, syms[1:]))
    return BlockCounts(dict(counts), len(syms) - 1)


def empirical_frequencies(seq) -> BlockFrequencies:
    bc = count_blocks(seq)
    return BlockFrequencies({b: c / bc.total for b, c in bc.counts.items()})


def finite_binary_inconstancy(values, h: float | None = None) -> float:
    """Inconstancy of a finite 0/h sequence u_0..u_N with u_0 = 0.

    Uses block counts and the lengths of the leading and trailing zero runs
    rather than a hull computation. An all-zero sequence is flat and gets 1.
    """
    if isinstance(values, SymbolSequence):
        values = values.to_values()
    u = np.asarray(values, dtype=float)
    if u.ndim != 1 or u.size < 2:
        raise ValueError("need a sequence u_0..u_N with N >= 1")
    if u[0] != 0.0:
        raise ValueError("u_0 must be 0")
    nonzero = u[u != 0.0]
    if nonzero.size == 0:
        return 1.0
    if h is None:
        h = float(nonzero[0])
    if not h > 0 or not np.all(nonzero == h):
        raise ValueError("sequence must take only the values 0 and h > 0")

    n = u.size - 1
    is_h = u == h
    alpha = int(np.argmax(is_h))
    zeros = np.flatnonzero(~is_h)
    beta = n - int(np.flatnonzero(is_h)[-1])

    same = int(np.count_nonzero(is_h[1:] == is_h[:-1]))
    diff = n - same
    length = same + math.sqrt(1.0 + h * h) * diff

    if beta > 0:
        perimeter = math.hypot(h, alpha) + n - alpha - beta + math.hypot(h, beta) + n
    else:
        gamma = int(zeros[-1])
        perimeter = math.hypot(h, alpha) + n - alpha + math.hypot(h, n - gamma) + gamma
    return 2.0 * length / perimeter


def asymptotic_inconstancy(
    freqs: BlockFrequencies | Mapping, values: Mapping | None = None
) -> float:
    """Limit inconstancy 1 + sum_{j<j'} (sqrt(1+(j'-j)^2) - 1)(F_jj' + F_j'j).

    ``values`` maps symbols to reals; omit it when the blocks are already
    pairs of reals (or of the binary symbols "0"/"1").
    """
    f = dict(freqs.freqs if isinstance(freqs, BlockFrequencies) else freqs)
    total = math.fsum(f.values())
    if abs(total - 1.0) > 1e-9 or any(v < 0 for v in f.values()):
        raise ValueError(f"frequencies must be non-negative and sum to 1 (sum={total})")
    if values is None:
        values = {s: float(s) for block in f for s in block}
    used = {s for block in f for s in block}
    if len({values[s] for s in used}) != len(used):
        raise ValueError("values must be injective")
    # Pool the two orders of each unordered pair of distinct values.
    pooled = Counter()
    for (a, b), fr in f.items():
        va, vb = values[a], values[b]
        if va != vb:
            pooled[(min(va, vb), max(va, vb))] += fr
    return 1.0 + math.fsum(
        (math.sqrt(1.0 + (hi - lo) ** 2) - 1.0) * fr for (lo, hi), fr in pooled.items()
    )


def incidence_matrix(m: Morphism) -> IncidenceMatrix:
    idx = {a: i for i, a in enumerate(m.alphabet)}
    mat = np.zeros((len(idx), len(idx)), dtype=np.int64)
    for a, w in m.images.items():
        for b in w:
            mat[idx[a], idx[b]] += 1
    return IncidenceMatrix(mat, m.alphabet)


def pair_morphism(m: Morphism, seed=None) -> Morphism:
    """Induced k-uniform morphism on the 2-blocks of the fixed point.

    The block (a, b) maps to the k adjacent pairs of sigma(a) + sigma(b)[0].
    Only blocks reachable from the initial block of the fixed point starting
    with ``seed`` are kept (default: first prolongable letter).
    """
    k = m.uniform_length
    if k is None:
        raise ValueError("pair morphism needs a uniform morphism")
    if k < 2:
        raise ValueError("pair morphism needs images of length >= 2")
    if seed is None:
        letters = m.prolongable_letters()
        if not letters:
            raise ValueError("morphism has no prolongable letter")
        seed = letters[0]
    start = tuple(m.images[seed][:2])

    def image(block):
        w = m.images[block[0]] + m.images[block[1]][:1]
        return tuple(zip(w, w[1:]))

    images = {}
    todo = [start]
    while todo:
        block = todo.pop()
        if block in images:
            continue
        images[block] = image(block)
        todo.extend(b for b in images[block] if b not in images)
    order = sorted(images, key=lambda b: tuple(map(str, b)))
    return Morphism({b: images[b] for b in order}, tuple(order))


def is_primitive(matrix: np.ndarray) -> bool:
    """True if some power of ``matrix`` is strictly positive.

    Squares a boolean pattern until the exponent passes Wielandt's bound
    (n-1)^2 + 1 <= n^2.
    """
    p = np.asarray(matrix) > 0
    n = p.shape[0]
    bound = (n - 1) ** 2 + 1
    power = 1
    while True:
        if p.all():
            return True
        if power >= bound:
            return False
        p = (p.astype(np.int64) @ p.astype(np.int64)) > 0
        power *= 2


def perron_vector(inc: IncidenceMatrix, tol=1e-12, max_iter=100_000) -> np.ndarray:
    """Normalised left Perron vector of a k-uniform incidence matrix."""
    mat = inc.matrix.astype(float)
    if not is_primitive(mat):
        raise NotPrimitiveError("incidence matrix is not primitive")
    k = mat.sum(axis=1)
    if not np.all(k == k[0]):
        raise ValueError("incidence matrix rows must have equal sums")
    k = k[0]
    v = np.full(mat.shape[0], 1.0 / mat.shape[0])
    for _ in range(max_iter):
        w = v @ mat
        residual = np.max(np.abs(w - k * v))
        v = w / w.sum()
        if residual < tol:
            break
    return v


def perron_frequencies(m: Morphism, tol=1e-12) -> dict:
    """Letter frequencies of the fixed point of a primitive uniform morphism."""
    if m.uniform_length is None:
        raise ValueError("perron_frequencies needs a uniform morphism")
    inc = incidence_matrix(m)
    v = perron_vector(inc, tol=tol)
    return dict(zip(inc.alphabet, v.tolist()))


def morphism_block_frequencies(m: Morphism, seed=None, coding=None) -> BlockFrequencies:
    """Exact 2-block frequencies of a (coded) fixed point via its pair morphism."""
    freqs = perron_frequencies(pair_morphism(m, seed))
    if coding is None:
        return BlockFrequencies(freqs)
    coded = Counter()
    for (a, b), fr in freqs.items():
        coded[(coding[a], coding[b])] += fr
    return BlockFrequencies(dict(coded))


def periodic_inconstancy(d: int) -> float:
    """Limit inconstancy of (0^d 1)^infinity."""
    if d < 1:
        raise ValueError("d must be at least 1")
    return (d - 1 + 2 * SQRT2) / (d + 1)


def sturmian_inconstancy(alpha: float) -> float:
    """Limit inconstancy 1 + 2(sqrt 2 - 1) alpha of a Sturmian word without ``11``.

    For slope above 1/2 pass ``1 - alpha``.
    """
    if not 0.0 < alpha < 0.5:
        raise ValueError("alpha must lie in (0, 1/2)")
    return 1.0 + 2.0 * (SQRT2 - 1.0) * alpha


def named_constants() -> dict:
    return {
        "random": (1 + SQRT2) / 2,
        "thue_morse": (1 + 2 * SQRT2) / 3,
        "rudin_shapiro": (1 + SQRT2) / 2,
        "paperfolding": (1 + SQRT2) / 2,
        "alternating": SQRT2,
    }


def prefix_inconstancy(seq: SymbolSequence | Sequence[float]) -> float:
    """Geometric inconstancy of a finite prefix u_0..u_N."""
    values = seq.to_values() if isinstance(seq, SymbolSequence) else seq
    return inconstancy(polyline_from_sequence(values)).inconstancy
