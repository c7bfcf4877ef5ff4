"""Local hidden-variable counter-models.

Two pieces live here. The threshold model gives each photon pair a shared
hidden polarization ``lam``; each station passes its photon iff its axis is
within 45 degrees of ``lam``, without knowing anything about the other
station. Averaged over uniform ``lam`` the mismatch is the straight line
``theta / 90``.

The flip construction builds two series from a common base series by
inverting ``k`` chosen positions in each, and enumerates every choice to show
the mismatch between the two never exceeds ``2k/n``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .angles import canonicalize, relative_angle
from .quantum import TrialOutcome
from .series import as_series

MAX_ENUMERATION_LENGTH = 16

# Default 12-digit base series for the flip demonstration.
CLASSIC_BASE_SERIES = (0, 0, 1, 0, 1, 0, 1, 1, 0, 1, 1, 0)


@dataclass(frozen=True)
class HiddenPairState:
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "lam", canonicalize(self.lam))


def threshold_response(lam, axis):
    """Deterministic pass bit: 1 iff the axis lies strictly within 45 degrees of ``lam``.

    Exactly 45 degrees maps to 0.
    """
    bits = np.asarray(relative_angle(lam, axis)) < 45.0
    if np.ndim(bits) == 0:
        return int(bits)
    return bits.astype(np.uint8)


def sample_trial_lhv(pair: HiddenPairState, axis_a: float, axis_b: float) -> TrialOutcome:
    return TrialOutcome(threshold_response(pair.lam, axis_a), threshold_response(pair.lam, axis_b))


def sample_trials_lhv(lam, axis_a: float, axis_b: float) -> tuple[np.ndarray, np.ndarray]:
    lam = np.asarray(lam, dtype=float)
    return (np.atleast_1d(threshold_response(lam, axis_a)).astype(np.uint8),
            np.atleast_1d(threshold_response(lam, axis_b)).astype(np.uint8))


def analytic_mismatch_lhv_threshold(theta_rel):
    """Mismatch fraction of the threshold model averaged over uniform ``lam``."""
    r = relative_angle(theta_rel, 0.0)
    return r / 90.0


@dataclass(frozen=True)
class FlipConstruction:
    """A base series plus the positions flipped to make series a and series b."""

    base: tuple[int, ...]
    flips_a: frozenset[int]
    flips_b: frozenset[int]

    def __init__(self, base, flips_a, flips_b):
        base = tuple(int(v) for v in as_series(base, allow_empty=True))
        n = len(base)
        sets = []
        for name, flips in (("flips_a", flips_a), ("flips_b", flips_b)):
            flips = list(flips)
            if len(set(flips)) != len(flips):
                raise ValueError(f"{name} contains duplicate positions: {sorted(flips)}")
            bad = [p for p in flips if not 0 <= p < n]
            if bad:
                raise ValueError(f"{name} positions out of range for length {n}: {bad}")
            sets.append(frozenset(int(p) for p in flips))
        if len(sets[0]) != len(sets[1]):
            raise ValueError("flips_a and flips_b must have the same size")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "flips_a", sets[0])
        object.__setattr__(self, "flips_b", sets[1])

    @property
    def n(self) -> int:
        return len(self.base)

    @property
    def k(self) -> int:
        return len(self.flips_a)


def build_flip_series(construction: FlipConstruction) -> tuple[np.ndarray, np.ndarray]:
    base = np.array(construction.base, dtype=np.uint8)
    a = base.copy()
    b = base.copy()
    a[list(construction.flips_a)] ^= 1
    b[list(construction.flips_b)] ^= 1
    return a, b


@dataclass
class FlipDistribution:
    """Distribution of ``mismatch(a, b)`` over a collection of flip-set pairs.

    ``counts`` maps exact mismatch fractions to the number of pairs producing
    them. ``base_mismatches`` holds the distinct values of mismatch(base, a)
    and mismatch(base, b) seen, which must all equal ``k/n``.
    """

    n: int
    k: int
    pairs: int
    counts: dict[Fraction, int]
    base_mismatches: set[Fraction] = field(default_factory=set)

    @property
    def bound(self) -> Fraction:
        return Fraction(2 * self.k, self.n) if self.n else Fraction(0)

    @property
    def support(self) -> list[Fraction]:
        return sorted(self.counts)

    @property
    def max(self) -> Fraction:
        return max(self.counts)

    @property
    def min(self) -> Fraction:
        return min(self.counts)

    @property
    def bound_holds(self) -> bool:
        return all(v <= self.bound for v in self.counts)


def _flip_matrix(combos: np.ndarray, n: int) -> np.ndarray:
    flips = np.zeros((len(combos), n), dtype=np.uint8)
    if combos.size:
        np.put_along_axis(flips, combos, 1, axis=1)
    return flips


def _tabulate(base: np.ndarray, flips_a: np.ndarray, flips_b: np.ndarray,
              outer: bool) -> tuple[dict[Fraction, int], set[Fraction]]:
    """Build the actual a and b series and count mismatch(a, b) values."""
    n = base.size
    series_a = base ^ flips_a
    series_b = base ^ flips_b
    base_mm = {Fraction(int(c), n) for c in np.concatenate([
        (series_a != base).sum(axis=1), (series_b != base).sum(axis=1)])}
    if outer:
        # every a against every b
        diff = (series_a[:, None, :] != series_b[None, :, :]).sum(axis=2).ravel()
    else:
        diff = (series_a != series_b).sum(axis=1)
    values, counts = np.unique(diff, return_counts=True)
    return {Fraction(int(v), n): int(c) for v, c in zip(values, counts)}, base_mm


def enumerate_flip_mismatches(base, k: int) -> FlipDistribution:
    """Exact distribution of mismatch(a, b) over all C(n, k)² flip-set pairs."""
    base = as_series(base)
    n = base.size
    if n > MAX_ENUMERATION_LENGTH:
        raise ValueError(f"exhaustive enumeration limited to n <= {MAX_ENUMERATION_LENGTH}, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}], got {k}")
    combos = np.array(list(itertools.combinations(range(n), k)), dtype=np.intp)
    flips = _flip_matrix(combos, n)
    counts, base_mm = _tabulate(base, flips, flips, outer=True)
    return FlipDistribution(n, k, math.comb(n, k) ** 2, counts, base_mm)


def sample_flip_mismatches(base, k: int, samples: int, rng: np.random.Generator) -> FlipDistribution:
    """Empirical distribution of mismatch(a, b) from ``samples`` random flip-set pairs."""
    base = as_series(base)
    n = base.size
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}], got {k}")
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    combos_a = np.argsort(rng.random((samples, n)), axis=1)[:, :k]
    combos_b = np.argsort(rng.random((samples, n)), axis=1)[:, :k]
    counts, base_mm = _tabulate(base, _flip_matrix(combos_a, n), _flip_matrix(combos_b, n), outer=False)
    return FlipDistribution(n, k, samples, counts, base_mm)
