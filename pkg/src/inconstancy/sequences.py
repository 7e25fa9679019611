"""Generators for classical binary sequences and uniform-morphism fixed points.

Symbols are short strings (``"0"``, ``"1"``, ``"a"``...) or, for pair
morphisms, tuples of symbols. They are mapped to reals only when a sequence
is analysed, through its ``value_map``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

import numpy as np

Symbol = Hashable

BINARY_VALUES = {"0": 0.0, "1": 1.0}


@dataclass(frozen=True)
class SymbolSequence:
    """A finite prefix of a symbolic sequence over a finite alphabet."""

    symbols: tuple
    alphabet: tuple = ()
    value_map: Mapping[Symbol, float] | None = None

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        used = set(symbols)
        if self.alphabet:
            missing = used - set(self.alphabet)
            if missing:
                raise ValueError(f"symbols {sorted(map(str, missing))} not in alphabet")
        else:
            object.__setattr__(self, "alphabet", tuple(sorted(used, key=str)))
        if self.value_map is not None:
            vm = dict(self.value_map)
            missing = used - set(vm)
            if missing:
                raise ValueError(f"value_map lacks {sorted(map(str, missing))}")
            vals = [vm[s] for s in used]
            if len(set(vals)) != len(vals):
                raise ValueError("value_map must be injective on the used symbols")
            object.__setattr__(self, "value_map", vm)

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, k):
        return self.symbols[k]

    def __str__(self):
        return "".join(map(str, self.symbols))

    def to_values(self) -> np.ndarray:
        vm = self.value_map
        if vm is None:
            if set(self.symbols) <= set(BINARY_VALUES):
                vm = BINARY_VALUES
            else:
                raise ValueError("sequence has no value_map")
        return np.array([vm[s] for s in self.symbols], dtype=float)


def _binary(bits) -> SymbolSequence:
    syms = tuple(map("01".__getitem__, np.asarray(bits, dtype=np.int64).tolist()))
    return SymbolSequence(syms, ("0", "1"), BINARY_VALUES)


def _check_n(n):
    if n < 1:
        raise ValueError("n must be at least 1")


@dataclass(frozen=True)
class Morphism:
    """A substitution ``letter -> word`` on a finite alphabet."""

    images: Mapping[Symbol, tuple]
    alphabet: tuple = field(default=())

    def __post_init__(self):
        images = {a: tuple(w) for a, w in self.images.items()}
        alphabet = tuple(self.alphabet) or tuple(images)
        if set(alphabet) != set(images):
            raise ValueError("every alphabet letter needs exactly one image")
        for a, w in images.items():
            if not w:
                raise ValueError(f"image of {a!r} is empty")
            bad = [b for b in w if b not in images]
            if bad:
                raise ValueError(f"image of {a!r} uses letters outside the alphabet")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "alphabet", alphabet)

    @classmethod
    def parse(cls, spec: str) -> Morphism:
        """Parse ``"0:01,1:10"`` into a morphism on single-character letters."""
        images = {}
        for item in spec.split(","):
            letter, sep, word = item.strip().partition(":")
            if not sep or len(letter) != 1 or not word:
                raise ValueError(f"bad morphism item {item!r}; expected 'a:word'")
            if letter in images:
                raise ValueError(f"letter {letter!r} given twice")
            images[letter] = tuple(word)
        return cls(images)

    @property
    def uniform_length(self) -> int | None:
        lengths = {len(w) for w in self.images.values()}
        return lengths.pop() if len(lengths) == 1 else None

    def __call__(self, word):
        out = []
        for a in word:
            out.extend(self.images[a])
        return tuple(out)

    def prolongable_letters(self) -> list:
        return [a for a in self.alphabet if len(self.images[a]) >= 2 and self.images[a][0] == a]


THUE_MORSE = Morphism.parse("0:01,1:10")
PERIOD_DOUBLING = Morphism.parse("1:10,0:11")
# Letters track (value, index parity); coding a,b -> 0 and c,d -> 1.
RUDIN_SHAPIRO = Morphism.parse("a:ab,b:ad,c:cd,d:cb")
PAPERFOLDING = Morphism.parse("a:ab,b:cb,c:ad,d:cd")
RUDIN_SHAPIRO_DERIVED = Morphism.parse("a:ab,b:cd,c:ad,d:cb")
ABCD_CODING = {"a": "0", "b": "0", "c": "1", "d": "1"}


def periodic(pattern: Sequence[Symbol], n: int) -> SymbolSequence:
    """First ``n`` symbols of ``pattern`` repeated."""
    pattern = tuple(pattern)
    if not pattern:
        raise ValueError("pattern must be non-empty")
    if n < 0:
        raise ValueError("n must be non-negative")
    reps = -(-n // len(pattern))
    syms = (pattern * reps)[:n]
    vm = BINARY_VALUES if set(pattern) <= set(BINARY_VALUES) else None
    return SymbolSequence(syms, value_map=vm)


def thue_morse(n: int) -> SymbolSequence:
    """m_k = parity of the number of 1 bits of k."""
    _check_n(n)
    return _binary(np.bitwise_count(np.arange(n, dtype=np.uint64)) & 1)


def rudin_shapiro(n: int) -> SymbolSequence:
    """r_k = parity of the number of (overlapping) ``11`` blocks in binary k."""
    _check_n(n)
    k = np.arange(n, dtype=np.uint64)
    return _binary(np.bitwise_count(k & (k >> np.uint64(1))) & 1)


def rudin_shapiro_derived(n: int) -> SymbolSequence:
    """r'_k = (r_k + r_{k+1}) mod 2, whose ones mark the 01/10 blocks of r."""
    _check_n(n)
    r = rudin_shapiro(n + 1).to_values().astype(np.int64)
    return _binary((r[:-1] + r[1:]) & 1)


def paperfolding(n: int) -> SymbolSequence:
    """Regular paperfolding: z_{4k} = 0, z_{4k+2} = 1, z_{2k+1} = z_k."""
    _check_n(n)
    z = np.empty(n, dtype=np.int64)
    k = np.arange(n)
    # Strip trailing 1 bits: z_k = z_m where m = k >> t and m is even.
    m = k.copy()
    odd = (m & 1) == 1
    while odd.any():
        m[odd] >>= 1
        odd = (m & 1) == 1
    z[:] = (m >> 1) & 1
    return _binary(z)


def sturmian(alpha: float, rho: float = 0.0, n: int = 1) -> SymbolSequence:
    """Lower mechanical word u_k = floor((k+1)a + rho) - floor(k a + rho).

    Irrationality of ``alpha`` is not checked; a rational slope gives a
    periodic word.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    _check_n(n)
    k = np.arange(n + 1, dtype=float)
    f = np.floor(k * alpha + rho)
    return _binary(np.diff(f).astype(np.int64))


def fixed_point(m: Morphism, seed: Symbol, n: int) -> SymbolSequence:
    """First ``n`` letters of the fixed point of ``m`` starting with ``seed``."""
    if seed not in m.images:
        raise ValueError(f"seed {seed!r} is not in the alphabet")
    image = m.images[seed]
    if len(image) < 2 or image[0] != seed:
        raise ValueError(f"morphism is not prolongable on {seed!r}")
    _check_n(n)
    word = [seed]
    while len(word) < n:
        grown = []
        for a in word:
            grown.extend(m.images[a])
            if len(grown) >= n:
                break
        word = grown
    return SymbolSequence(tuple(word[:n]), m.alphabet)


def code(seq: SymbolSequence, coding: Mapping[Symbol, Symbol]) -> SymbolSequence:
    """Pointwise image of ``seq`` under ``coding``."""
    missing = set(seq.symbols) - set(coding)
    if missing:
        raise ValueError(f"coding lacks symbols {sorted(map(str, missing))}")
    syms = tuple(coding[s] for s in seq.symbols)
    vm = BINARY_VALUES if set(syms) <= set(BINARY_VALUES) else None
    return SymbolSequence(syms, value_map=vm)


def parse_coding(spec: str) -> dict:
    """Parse ``"a:0,b:0,c:1,d:1"``."""
    coding = {}
    for item in spec.split(","):
        src, sep, dst = item.strip().partition(":")
        if not sep or not src or not dst:
            raise ValueError(f"bad coding item {item!r}; expected 'a:b'")
        coding[src] = dst
    return coding


def random_binary(p: float, seed: int, n: int) -> SymbolSequence:
    """i.i.d. Bernoulli(p) bits from a seeded generator."""
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise ValueError("p must lie in [0, 1]")
    _check_n(n)
    rng = np.random.default_rng(seed)
    return _binary(rng.random(n) < p)
