import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellsim.quantum import (
    AlreadyMeasuredError,
    PairState,
    analytic_mismatch_qm,
    joint_probabilities_qm,
    malus_pass_probability,
    sample_trial_qm,
    sample_trials_qm,
)

deg = st.floats(min_value=-720, max_value=720, allow_nan=False)


@pytest.mark.parametrize("pol, axis, expected", [(0, 0, 1.0), (0, 90, 0.0), (0, 30, 0.75), (0, 180, 1.0)])
def test_malus_examples(pol, axis, expected):
    assert malus_pass_probability(pol, axis) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("theta, expected", [(30, 0.25), (60, 0.75), (0, 0.0), (45, 0.5), (90, 1.0)])
def test_analytic_mismatch(theta, expected):
    assert analytic_mismatch_qm(theta) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("phi, a, b, expected", [
    (0, 0, 0, (1, 0, 0, 0)),
    (0, 0, 30, (0.75, 0.25, 0, 0)),
    (45, 0, 90, (0, 0.5, 0.5, 0)),
])
def test_joint_probability_examples(phi, a, b, expected):
    assert joint_probabilities_qm(phi, a, b) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("phi, a, b", [(0, 0, 30), (45, 0, 90), (17, -25, 40)])
@pytest.mark.parametrize("a_first", [True, False])
def test_joint_probabilities_match_frequencies(phi, a, b, a_first):
    # brute-force frequency oracle over 1e6 samples
    n = 1_000_000
    gen = np.random.default_rng(2024)
    bits_a, bits_b = sample_trials_qm(phi, a, b, gen.random(n), gen.random(n), a_first)
    cells = np.array([np.mean((bits_a == x) & (bits_b == y)) for x, y in ((1, 1), (1, 0), (0, 1), (0, 0))])
    p = joint_probabilities_qm(phi, a, b, a_first)
    sigma = np.sqrt(p * (1 - p) / n)
    assert np.all(np.abs(cells - p) <= 4 * sigma + 1e-12)


@given(deg, deg, deg, st.booleans())
def test_joint_probabilities_are_a_distribution(phi, a, b, a_first):
    p = joint_probabilities_qm(phi, a, b, a_first)
    assert np.all((p >= 0) & (p <= 1))
    assert abs(p.sum() - 1.0) <= 1e-12
    assert abs(p[1] + p[2] - analytic_mismatch_qm(b - a)) <= 1e-12


@given(deg, deg)
def test_order_averaged_distribution_is_symmetric(a, b):
    # the midpoint rule over a full period integrates degree-2 trig polynomials exactly
    phis = np.arange(0.5, 180.0, 1.0)
    avg_a = np.mean([joint_probabilities_qm(p, a, b, True) for p in phis], axis=0)
    avg_b = np.mean([joint_probabilities_qm(p, a, b, False) for p in phis], axis=0)
    assert np.allclose(avg_a, avg_b, atol=1e-12)
    half_s2 = 0.5 * analytic_mismatch_qm(b - a)
    assert avg_a[1] == pytest.approx(half_s2, abs=1e-12)
    assert avg_a[2] == pytest.approx(half_s2, abs=1e-12)


def test_scalar_sampler_collapses_and_refuses_second_measurement():
    gen = np.random.default_rng(0)
    pair = PairState(shared_polarization=20.0)
    assert pair.collapsed is None
    out = sample_trial_qm(pair, 10.0, 50.0, True, gen)
    assert pair.collapsed == (10.0 if out.bit_a == 1 else 100.0)
    with pytest.raises(AlreadyMeasuredError):
        sample_trial_qm(pair, 10.0, 50.0, True, gen)


def test_scalar_sampler_b_first_collapses_on_b_axis():
    gen = np.random.default_rng(1)
    for _ in range(50):
        pair = PairState(33.0)
        out = sample_trial_qm(pair, 10.0, 50.0, False, gen)
        assert pair.collapsed == (50.0 if out.bit_b == 1 else 140.0)


class _Fixed:
    def __init__(self, values):
        self.values = list(values)

    def random(self):
        return self.values.pop(0)


@given(st.floats(0, 180), st.floats(0, 180), st.floats(0, 180), st.floats(0, 1, exclude_max=True),
       st.floats(0, 1, exclude_max=True), st.booleans())
def test_scalar_and_vector_samplers_agree(phi, a, b, u1, u2, a_first):
    scalar = sample_trial_qm(PairState(phi), a, b, a_first, _Fixed([u1, u2]))
    va, vb = sample_trials_qm(np.array([phi]), a, b, np.array([u1]), np.array([u2]), a_first)
    assert scalar == (int(va[0]), int(vb[0]))


def test_aligned_axes_never_mismatch():
    gen = np.random.default_rng(5)
    outs = [sample_trial_qm(PairState(gen.uniform(0, 180)), 25.0, 205.0, True, gen) for _ in range(2000)]
    assert all(o.bit_a == o.bit_b for o in outs)


def test_perpendicular_axes_always_mismatch():
    gen = np.random.default_rng(6)
    outs = [sample_trial_qm(PairState(gen.uniform(0, 180)), 0.0, 90.0, True, gen) for _ in range(2000)]
    assert all(o.bit_a != o.bit_b for o in outs)


@pytest.mark.parametrize("phi", [0.0, 37.0, 90.0])
def test_scalar_sampler_mismatch_at_30_degrees(phi):
    n = 100_000
    gen = np.random.default_rng(11)
    mism = sum(sample_trial_qm(PairState(phi), 0.0, 30.0, True, gen).mismatch for _ in range(n))
    assert abs(mism / n - 0.25) <= 3 * math.sqrt(0.25 * 0.75 / n)


@settings(deadline=None, max_examples=5)
@given(st.integers(0, 2**32))
def test_vector_mismatch_grid(seed):
    n = 100_000
    gen = np.random.default_rng(seed)
    for theta in range(10, 90, 10):
        a, b = sample_trials_qm(gen.uniform(0, 180, n), 0.0, float(theta), gen.random(n), gen.random(n))
        e = analytic_mismatch_qm(theta)
        # 4 sigma here: this runs 40 checks per test over arbitrary seeds
        assert abs(np.mean(a != b) - e) <= 4 * math.sqrt(e * (1 - e) / n)
