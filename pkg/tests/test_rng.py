import numpy as np
import pytest

from bellsim import rng


def test_uniforms_open_interval_and_moments():
    u = rng.uniforms(rng.stream_key(7, 1), np.arange(200_000), 0)
    assert u.min() > 0.0 and u.max() < 1.0
    assert abs(u.mean() - 0.5) < 3 * np.sqrt(1 / 12 / u.size) * 1.5
    assert abs(u.var() - 1 / 12) < 2e-3


def test_partition_independence():
    key = rng.stream_key(123, 4, 2)
    whole = rng.uniforms(key, np.arange(10_000), 2)
    parts = np.concatenate([rng.uniforms(key, np.arange(s, min(s + 937, 10_000)), 2)
                            for s in range(0, 10_000, 937)])
    assert np.array_equal(whole, parts)


def test_draws_and_keys_differ():
    idx = np.arange(1000)
    key = rng.stream_key(1, 2)
    assert not np.array_equal(rng.uniforms(key, idx, 0), rng.uniforms(key, idx, 1))
    assert rng.stream_key(1, 2) != rng.stream_key(1, 3) != rng.stream_key(2, 2)
    # draws for different streams are uncorrelated
    a = rng.uniforms(rng.stream_key(1, 2), np.arange(50_000), 0)
    b = rng.uniforms(rng.stream_key(1, 3), np.arange(50_000), 0)
    assert abs(np.corrcoef(a, b)[0, 1]) < 0.02


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_seed_range(seed):
    with pytest.raises(ValueError):
        rng.stream_key(seed)
