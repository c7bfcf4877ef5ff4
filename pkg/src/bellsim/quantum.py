"""Collapse model of the two-photon polarization experiment.

Both photons leave the source with one shared polarization. The first
measurement passes its photon with the Malus probability and collapses the
pair onto the measuring axis (pass) or the axis perpendicular to it (block).
The second photon then meets its polarizer with that collapsed polarization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .angles import canonicalize, cos2, relative_angle, sin2


class AlreadyMeasuredError(RuntimeError):
    """Raised when a collapsed pair is handed to the sampler a second time."""


@dataclass
class PairState:
    """An emitted photon pair.

    ``collapsed`` stays ``None`` until the first measurement, then holds the
    polarization both photons share afterwards.
    """

    shared_polarization: float
    collapsed: float | None = None

    def __post_init__(self):
        self.shared_polarization = canonicalize(self.shared_polarization)
        if self.collapsed is not None:
            self.collapsed = canonicalize(self.collapsed)


class TrialOutcome(NamedTuple):
    bit_a: int
    bit_b: int

    @property
    def mismatch(self) -> bool:
        return self.bit_a != self.bit_b


def malus_pass_probability(photon_polarization, polarizer_axis):
    """Probability that a photon polarized at one angle passes a polarizer at another."""
    return cos2(relative_angle(photon_polarization, polarizer_axis))


def analytic_mismatch_qm(theta_rel):
    """Expected mismatch fraction sin²θ for polarizers at relative angle θ."""
    return sin2(relative_angle(theta_rel, 0.0))


def sample_trial_qm(pair: PairState, axis_a: float, axis_b: float,
                    measure_a_first: bool = True, rng=None) -> TrialOutcome:
    """Measure both photons of ``pair`` in sequence and return the detector bits.

    ``rng`` is anything with a ``random()`` method returning a float in
    [0, 1), e.g. :class:`numpy.random.Generator`. The pair is collapsed in
    place; passing it again raises :class:`AlreadyMeasuredError`.
    """
    if pair.collapsed is not None:
        raise AlreadyMeasuredError("photon pair has already been measured")
    if rng is None:
        rng = np.random.default_rng()
    first, second = (axis_a, axis_b) if measure_a_first else (axis_b, axis_a)

    bit_first = int(rng.random() < malus_pass_probability(pair.shared_polarization, first))
    pair.collapsed = canonicalize(first if bit_first else first + 90.0)
    bit_second = int(rng.random() < malus_pass_probability(pair.collapsed, second))

    if measure_a_first:
        return TrialOutcome(bit_first, bit_second)
    return TrialOutcome(bit_second, bit_first)


def sample_trials_qm(phi, axis_a: float, axis_b: float, u_first, u_second,
                     measure_a_first: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`sample_trial_qm` driven by supplied uniform variates.

    ``phi``, ``u_first`` and ``u_second`` are arrays of equal length (``phi``
    may be a scalar). Uses the same decision rule as the scalar sampler: a
    photon passes when its uniform is below the pass probability.
    """
    first, second = (axis_a, axis_b) if measure_a_first else (axis_b, axis_a)
    bit_first = np.asarray(u_first) < malus_pass_probability(phi, first)
    collapsed = np.where(bit_first, canonicalize(first), canonicalize(first + 90.0))
    bit_second = np.asarray(u_second) < malus_pass_probability(collapsed, second)

    bit_first = bit_first.astype(np.uint8)
    bit_second = bit_second.astype(np.uint8)
    if measure_a_first:
        return bit_first, bit_second
    return bit_second, bit_first


def joint_probabilities_qm(phi: float, axis_a: float, axis_b: float,
                           measure_a_first: bool = True) -> np.ndarray:
    """Exact outcome distribution ``[P(1,1), P(1,0), P(0,1), P(0,0)]``.

    Cells are indexed by ``(bit_a, bit_b)``.
    """
    first, second = (axis_a, axis_b) if measure_a_first else (axis_b, axis_a)
    p_first = malus_pass_probability(phi, first)
    keep = cos2(relative_angle(first, second))
    flip = sin2(relative_angle(first, second))

    # (first, second) cells: 11, 10, 01, 00
    p11 = p_first * keep
    p10 = p_first * flip
    p01 = (1.0 - p_first) * flip
    p00 = (1.0 - p_first) * keep
    if measure_a_first:
        return np.array([p11, p10, p01, p00])
    return np.array([p11, p01, p10, p00])
