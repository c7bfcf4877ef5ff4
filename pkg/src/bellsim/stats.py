"""Mismatch statistics and the Bell-inequality gap E(2θ) - 2E(θ)."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .hidden import analytic_mismatch_lhv_threshold
from .quantum import analytic_mismatch_qm
from .series import as_series

# 3-sigma normal-approximation interval
CI_SIGMAS = 3.0
# slack for comparing exact expectations computed in floating point
EXACT_TOL = 1e-12


@dataclass(frozen=True)
class MismatchStats:
    """Mismatch counts between two detector series.

    ``e`` is the mismatch fraction and ``f = 1 - e`` the match fraction.
    ``n`` and ``mismatches`` are ``None`` for an exact expectation (built by
    :meth:`exact`), which carries a zero-width interval.
    """

    n: int | None
    mismatches: int | None
    e: float
    f: float
    ci_half_width: float

    @classmethod
    def from_counts(cls, mismatches: int, n: int) -> "MismatchStats":
        if n <= 0:
            raise ValueError("mismatch statistics need at least one trial")
        if not 0 <= mismatches <= n:
            raise ValueError(f"mismatches={mismatches} outside [0, {n}]")
        e = mismatches / n
        return cls(n, mismatches, e, 1.0 - e, CI_SIGMAS * math.sqrt(e * (1.0 - e) / n))

    @classmethod
    def exact(cls, e: float) -> "MismatchStats":
        e = float(e)
        if not 0.0 <= e <= 1.0:
            raise ValueError(f"mismatch probability {e} outside [0, 1]")
        return cls(None, None, e, 1.0 - e, 0.0)

    @property
    def is_exact(self) -> bool:
        return self.n is None


def mismatch_fraction(a, b) -> MismatchStats:
    """Fraction of positions where two equal-length detector series disagree."""
    a = as_series(a)
    b = as_series(b)
    if a.size != b.size:
        raise ValueError(f"series lengths differ: {a.size} != {b.size}")
    return MismatchStats.from_counts(int(np.count_nonzero(a != b)), int(a.size))


class Verdict(str, enum.Enum):
    SATISFIES = "satisfies_bell"
    VIOLATES = "violates_bell"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class BellGapReport:
    theta: float
    e_theta: MismatchStats
    e_2theta: MismatchStats
    gap: float
    ci_half_width: float
    verdict: Verdict


def bell_gap(theta: float, e_theta: MismatchStats, e_2theta: MismatchStats) -> BellGapReport:
    """Compare E(2θ) with 2E(θ).

    The gap's 3σ half-width combines both intervals (``var(e2 - 2 e1) =
    var(e2) + 4 var(e1)``). The inequality is violated when the gap exceeds
    that half-width, satisfied when the gap is not positive, and inconclusive
    when it is positive but within the interval.
    """
    gap = e_2theta.e - 2.0 * e_theta.e
    half = math.hypot(e_2theta.ci_half_width, 2.0 * e_theta.ci_half_width)
    if gap > half + EXACT_TOL:
        verdict = Verdict.VIOLATES
    elif gap <= EXACT_TOL:
        verdict = Verdict.SATISFIES
    else:
        verdict = Verdict.INCONCLUSIVE
    return BellGapReport(float(theta), e_theta, e_2theta, gap, half, verdict)


ANALYTIC_MODELS = {
    "qm": analytic_mismatch_qm,
    "lhv_threshold": analytic_mismatch_lhv_threshold,
}


def sweep_gap_analytic(model: str, theta_grid: Iterable[float]) -> list[BellGapReport]:
    """Bell gap from exact expectations for each θ in ``theta_grid`` (degrees, within [0, 45])."""
    try:
        mismatch = ANALYTIC_MODELS[model]
    except KeyError:
        raise ValueError(f"unknown model {model!r}; expected one of {sorted(ANALYTIC_MODELS)}") from None
    thetas = [float(t) for t in theta_grid]
    bad = [t for t in thetas if not 0.0 <= t <= 45.0]
    if bad:
        raise ValueError(f"gap sweep angles must lie in [0, 45] degrees: {bad}")
    return [
        bell_gap(t, MismatchStats.exact(mismatch(t)), MismatchStats.exact(mismatch(2.0 * t)))
        for t in thetas
    ]
