"""Four-stage polarizer experiment, θ sweeps, series demo and relativity example.

Stage geometry (A axis, B axis) for a rotation angle θ:

    stage 1: (0, 0)     both upright
    stage 2: (0, +θ)    B turned counterclockwise
    stage 3: (-θ, 0)    A turned clockwise, B restored
    stage 4: (-θ, +θ)   relative angle 2θ

Trial ``i`` of a stage draws its random numbers from a stateless stream keyed
by ``(seed, stage, θ)`` and indexed by ``i``, so results do not depend on how
the trials are split across worker threads.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from . import rng
from .angles import relative_angle
from .hidden import (
    CLASSIC_BASE_SERIES,
    FlipDistribution,
    analytic_mismatch_lhv_threshold,
    enumerate_flip_mismatches,
    sample_flip_mismatches,
    sample_trials_lhv,
)
from .quantum import analytic_mismatch_qm, sample_trials_qm
from .relativity import (
    C_EXACT,
    CausalRelation,
    InertialFrame,
    IntervalClass,
    Ordering,
    SignalLink,
    SpacetimeEvent,
    classify_causal_relation,
    classify_interval,
    delta_t_prime,
    lorentz_transform,
    reversal_threshold_beta,
    reverses_order,
)
from .stats import BellGapReport, MismatchStats, bell_gap, mismatch_fraction

MODELS = ("qm", "lhv_threshold")
STAGES = (1, 2, 3, 4)
DEFAULT_TRIALS = 100_000
CHUNK_SIZE = 8192

_MODEL_CODES = {"qm": 1, "lhv_threshold": 2}


class InvariantViolation(RuntimeError):
    """An internal consistency check failed (e.g. a probability outside [0, 1])."""


@dataclass(frozen=True)
class ExperimentConfig:
    model: str = "qm"
    theta: float = 30.0
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    phi_policy: str = "uniform"
    measure_a_first: bool = True

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        if isinstance(self.trials, bool) or not isinstance(self.trials, int) or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or not 0 <= self.seed <= rng.MAX_SEED:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        theta = float(self.theta)
        if not 0.0 <= theta <= 90.0:
            raise ValueError(f"theta must lie in [0, 90] degrees, got {theta}")
        object.__setattr__(self, "theta", theta)
        parse_phi_policy(self.phi_policy)
        if not isinstance(self.measure_a_first, bool):
            raise ValueError("measure_a_first must be a boolean")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path: str | os.PathLike) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("config file must hold a JSON object")
        return cls.from_dict(data)

    def replace(self, **changes) -> "ExperimentConfig":
        return ExperimentConfig(**{**asdict(self), **changes})


def parse_phi_policy(policy: str) -> float | None:
    """Return the fixed emission angle for ``fixed:<deg>``, or ``None`` for ``uniform``."""
    if policy == "uniform":
        return None
    if isinstance(policy, str) and policy.startswith("fixed:"):
        try:
            value = float(policy[len("fixed:"):])
        except ValueError:
            pass
        else:
            if math.isfinite(value):
                return value
    raise ValueError(f"phi policy must be 'uniform' or 'fixed:<degrees>', got {policy!r}")


def stage_axes(stage: int, theta: float) -> tuple[float, float]:
    if stage == 1:
        return 0.0, 0.0
    if stage == 2:
        return 0.0, theta
    if stage == 3:
        return -theta, 0.0
    if stage == 4:
        return -theta, theta
    raise ValueError(f"stage must be one of {STAGES}, got {stage!r}")


@dataclass
class StageResult:
    stage: int
    axis_a: float
    axis_b: float
    stats: MismatchStats
    series_a: np.ndarray = field(repr=False)
    series_b: np.ndarray = field(repr=False)

    @property
    def relative_angle(self) -> float:
        return relative_angle(self.axis_a, self.axis_b)


def _simulate_chunk(config: ExperimentConfig, key: int, axis_a: float, axis_b: float,
                    start: int, stop: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(start, stop, dtype=np.uint64)
    if config.model == "lhv_threshold":
        lam = 180.0 * rng.uniforms(key, idx, 0)
        return sample_trials_lhv(lam, axis_a, axis_b)
    fixed = parse_phi_policy(config.phi_policy)
    phi = 180.0 * rng.uniforms(key, idx, 0) if fixed is None else fixed
    return sample_trials_qm(phi, axis_a, axis_b, rng.uniforms(key, idx, 1), rng.uniforms(key, idx, 2),
                            config.measure_a_first)


def _check_stats(stats: MismatchStats) -> MismatchStats:
    if not (0.0 <= stats.e <= 1.0 and stats.e + stats.f == 1.0):
        raise InvariantViolation(f"inconsistent mismatch statistics: {stats}")
    return stats


def run_stage(config: ExperimentConfig, stage: int, workers: int = 1) -> StageResult:
    """Simulate ``config.trials`` photon pairs at the given stage geometry."""
    axis_a, axis_b = stage_axes(stage, config.theta)
    key = rng.stream_key(config.seed, stage, _MODEL_CODES[config.model], round(config.theta * 1e6))
    bounds = [(s, min(s + CHUNK_SIZE, config.trials)) for s in range(0, config.trials, CHUNK_SIZE)]

    def work(b):
        return _simulate_chunk(config, key, axis_a, axis_b, *b)

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, bounds))
    else:
        parts = [work(b) for b in bounds]
    series_a = np.concatenate([p[0] for p in parts])
    series_b = np.concatenate([p[1] for p in parts])
    stats = _check_stats(mismatch_fraction(series_a, series_b))
    return StageResult(stage, axis_a, axis_b, stats, series_a, series_b)


def theta_grid(start: float, end: float, step: float) -> list[float]:
    """Inclusive grid from ``start`` to ``end``; empty when ``start > end``."""
    if step <= 0:
        raise ValueError("theta step must be positive")
    if start > end:
        return []
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    return [round(start + i * step, 10) for i in range(count)]


BASE_COLUMNS = ["theta_deg", "e_mc", "ci3", "e_qm_analytic", "e_line_analytic", "n_trials"]
GAP_COLUMNS = ["e2_mc", "gap", "verdict"]


def _fmt(x: float) -> str:
    return f"{x:.9g}"


@dataclass
class SweepRow:
    theta: float
    stats: MismatchStats
    e_qm_analytic: float
    e_line_analytic: float
    gap: BellGapReport | None = None

    def csv_fields(self) -> list[str]:
        row = [_fmt(self.theta), _fmt(self.stats.e), _fmt(self.stats.ci_half_width),
               _fmt(self.e_qm_analytic), _fmt(self.e_line_analytic), str(self.stats.n)]
        if self.gap is not None:
            row += [_fmt(self.gap.e_2theta.e), _fmt(self.gap.gap), self.gap.verdict.value]
        return row


@dataclass
class SweepTable:
    gap_mode: bool
    rows: list[SweepRow]

    @property
    def columns(self) -> list[str]:
        return BASE_COLUMNS + (GAP_COLUMNS if self.gap_mode else [])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow(row.csv_fields())
        return buf.getvalue()


def run_sweep(template: ExperimentConfig, thetas: Iterable[float], out: str | os.PathLike | IO[str] | None = None,
              gap_mode: bool = False, workers: int = 1) -> SweepTable:
    """Monte Carlo mismatch at each θ next to both analytic curves.

    Each row's Monte Carlo value comes from stage 2 (relative angle θ). In
    gap mode stage 4 (relative angle 2θ) is run as well and the row carries
    a Bell-gap verdict; angles must then lie in [0, 45].
    """
    thetas = [float(t) for t in thetas]
    lo, hi = (0.0, 45.0) if gap_mode else (0.0, 90.0)
    bad = [t for t in thetas if not lo <= t <= hi]
    if bad:
        raise ValueError(f"sweep angles must lie in [{lo:g}, {hi:g}] degrees: {bad}")

    rows = []
    for t in thetas:
        cfg = template.replace(theta=t)
        stats = run_stage(cfg, 2, workers).stats
        gap = bell_gap(t, stats, run_stage(cfg, 4, workers).stats) if gap_mode else None
        e_qm = analytic_mismatch_qm(t)
        e_line = analytic_mismatch_lhv_threshold(t)
        if not (0.0 <= e_qm <= 1.0 and 0.0 <= e_line <= 1.0):
            raise InvariantViolation(f"analytic mismatch outside [0, 1] at theta={t}")
        rows.append(SweepRow(t, stats, e_qm, e_line, gap))
    table = SweepTable(gap_mode, rows)

    if out is not None:
        text = table.to_csv()
        if hasattr(out, "write"):
            out.write(text)
        else:
            Path(out).write_bytes(text.encode("utf-8"))
    return table


def run_series_demo(n: int = 12, k: int = 4, seed: int = 0, mode: str = "exhaustive",
                    samples: int = 100_000, base=None) -> FlipDistribution:
    """Mismatch between two independently flipped copies of a base series.

    ``base`` defaults to the classic 12-digit series when ``n == 12`` and to
    seeded random bits otherwise. Raises :class:`InvariantViolation` if any
    observed mismatch exceeds ``2k/n``.
    """
    if n < 1:
        raise ValueError(f"series length must be positive, got {n}")
    gen = np.random.default_rng(seed)
    if base is None:
        base = CLASSIC_BASE_SERIES if n == 12 else gen.integers(0, 2, size=n)
    if len(base) != n:
        raise ValueError(f"base series has length {len(base)}, expected {n}")
    if mode == "exhaustive":
        dist = enumerate_flip_mismatches(base, k)
    elif mode == "sampled":
        dist = sample_flip_mismatches(base, k, samples, gen)
    else:
        raise ValueError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")
    if not dist.bound_holds:
        raise InvariantViolation(f"flip mismatch exceeded the 2k/n bound: max={dist.max}")
    return dist


DEFAULT_EVENT1 = SpacetimeEvent(15.0, 50e-9, "event 1 (detector A)")
DEFAULT_EVENT2 = SpacetimeEvent(-15.3, 51e-9, "event 2 (detector B)")
DEFAULT_BETA = -0.6
DEFAULT_LINK_U = 1.1
DEFAULT_LINK_BETA = 0.98

BETA_GRID = tuple(round(b, 2) for b in np.arange(-0.99, 0.995, 0.01))


@dataclass
class RelativityScenario:
    event1: SpacetimeEvent = DEFAULT_EVENT1
    event2: SpacetimeEvent = DEFAULT_EVENT2
    beta: float = DEFAULT_BETA
    entangled: bool = True
    c: float = C_EXACT
    # optional signal link; delta_x defaults to the distance light covers in 1 s
    u_over_c: float | None = DEFAULT_LINK_U
    link_beta: float = DEFAULT_LINK_BETA
    link_delta_x: float | None = None


@dataclass
class RelativityReport:
    scenario: RelativityScenario
    primed1: SpacetimeEvent
    primed2: SpacetimeEvent
    interval: IntervalClass
    threshold: float | None
    relation_rest: CausalRelation
    ordering_rest: Ordering
    relation_moving: CausalRelation
    ordering_moving: Ordering
    reversing_betas: list[float]
    link: SignalLink | None = None
    link_gamma: float | None = None
    link_delta_t_prime: float | None = None

    def to_dict(self) -> dict:
        s = self.scenario
        d = {
            "c": s.c,
            "beta": s.beta,
            "entangled": s.entangled,
            "event1": {"x_m": s.event1.x, "t_ns": s.event1.t * 1e9, "t_prime_ns": self.primed1.t * 1e9,
                       "x_prime_m": self.primed1.x},
            "event2": {"x_m": s.event2.x, "t_ns": s.event2.t * 1e9, "t_prime_ns": self.primed2.t * 1e9,
                       "x_prime_m": self.primed2.x},
            "interval": self.interval.value,
            "reversal_threshold_beta": self.threshold,
            "rest_frame": {"relation": self.relation_rest.value, "ordering": self.ordering_rest.value},
            "moving_frame": {"relation": self.relation_moving.value, "ordering": self.ordering_moving.value},
            "reversing_betas_in_grid": len(self.reversing_betas),
        }
        if self.link is not None:
            d["signal_link"] = {
                "u_over_c": self.link.u_over_c, "beta": s.link_beta, "gamma": self.link_gamma,
                "delta_x_m": self.link.delta_x, "delta_t_s": self.link.delta_t,
                "delta_t_prime_s": self.link_delta_t_prime,
            }
        return d

    def to_text(self) -> str:
        s = self.scenario
        lines = [
            f"c = {s.c:.9g} m/s, moving frame beta = {s.beta:g}",
            f"{s.event1.label or 'event 1'}: x = {s.event1.x:g} m, t = {s.event1.t * 1e9:.6g} ns"
            f" -> t' = {self.primed1.t * 1e9:.6g} ns",
            f"{s.event2.label or 'event 2'}: x = {s.event2.x:g} m, t = {s.event2.t * 1e9:.6g} ns"
            f" -> t' = {self.primed2.t * 1e9:.6g} ns",
            f"interval: {self.interval.value}",
        ]
        if self.threshold is not None:
            lines.append(f"reversal threshold: beta = {self.threshold:.6g} (order flips when -beta/threshold > 1)")
        lines += [
            f"rest frame: {self.relation_rest.value}, {self.ordering_rest.value}",
            f"moving frame: {self.relation_moving.value}, {self.ordering_moving.value}",
            f"frames in beta grid [-0.99, 0.99] reversing the order: {len(self.reversing_betas)}",
        ]
        if self.link is not None:
            lines.append(
                f"signal u = {self.link.u_over_c:g}c over {self.link.delta_x:.6g} m, beta = {s.link_beta:g}"
                f" (gamma = {self.link_gamma:.4f}): dt = {self.link.delta_t:.4f} s, dt' = {self.link_delta_t_prime:.4f} s"
            )
        return "\n".join(lines)


def run_relativity_example(scenario: RelativityScenario | None = None,
                           out: str | os.PathLike | IO[str] | None = None) -> RelativityReport:
    """Both-frame coordinates, interval class, reversal threshold and causal verdicts."""
    s = scenario or RelativityScenario()
    c = s.c
    frame = InertialFrame(s.beta)
    e1, e2 = s.event1, s.event2
    threshold = None if e1.x == e2.x else reversal_threshold_beta(e1, e2, c)
    rel_rest, ord_rest = classify_causal_relation(e1, e2, s.entangled, InertialFrame(0.0), c)
    rel_moving, ord_moving = classify_causal_relation(e1, e2, s.entangled, frame, c)
    report = RelativityReport(
        s, lorentz_transform(e1, frame, c), lorentz_transform(e2, frame, c), classify_interval(e1, e2, c),
        threshold, rel_rest, ord_rest, rel_moving, ord_moving,
        [b for b in BETA_GRID if reverses_order(e1, e2, InertialFrame(b), c)],
    )
    if s.u_over_c is not None:
        link_frame = InertialFrame(s.link_beta)
        dx = c * 1.0 if s.link_delta_x is None else s.link_delta_x
        report.link = SignalLink.from_distance(s.u_over_c, dx, c)
        report.link_gamma = link_frame.gamma
        report.link_delta_t_prime = delta_t_prime(report.link, link_frame, c)

    if out is not None:
        text = json.dumps(report.to_dict(), indent=2) + "\n"
        if hasattr(out, "write"):
            out.write(text)
        else:
            Path(out).write_text(text, encoding="utf-8")
    return report
