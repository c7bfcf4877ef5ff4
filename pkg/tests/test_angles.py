import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bellsim.angles import canonicalize, cos2, relative_angle, sin2

finite_deg = st.floats(min_value=-1e4, max_value=1e4, allow_nan=False)


@pytest.mark.parametrize("deg, expected", [(0, 0), (180, 0), (190, 10), (-10, 170), (-180, 0), (359.5, 179.5)])
def test_canonicalize(deg, expected):
    assert canonicalize(deg) == pytest.approx(expected, abs=1e-12)


def test_canonicalize_never_returns_180():
    assert canonicalize(-1e-20) == 0.0
    assert np.all(canonicalize(np.array([-1e-20, -1e-300])) == 0.0)


@given(finite_deg)
def test_axial_identity(d):
    # near 0 the two representatives may straddle the wrap point, so compare as axes
    assert relative_angle(canonicalize(d), canonicalize(d + 180.0)) <= 1e-9
    assert 0.0 <= canonicalize(d) < 180.0


@given(finite_deg, finite_deg)
def test_relative_angle_range_and_symmetry(a, b):
    r = relative_angle(a, b)
    assert 0.0 <= r <= 90.0
    assert r == pytest.approx(relative_angle(b, a), abs=1e-9)


@pytest.mark.parametrize("a, b, expected", [(0, 30, 30), (0, 90, 90), (0, 120, 60), (-30, 30, 60), (10, 190, 0)])
def test_relative_angle_examples(a, b, expected):
    assert relative_angle(a, b) == pytest.approx(expected, abs=1e-12)


def test_trig_exact_at_axes():
    assert cos2(0.0) == 1.0 and cos2(90.0) == 0.0
    assert sin2(0.0) == 0.0 and sin2(90.0) == 1.0


def test_double_angle_identity_on_grid():
    theta = np.arange(0.0, 90.0 + 1e-9, 0.5)
    assert np.allclose(sin2(2 * theta), 4 * sin2(theta) * cos2(theta), atol=1e-12, rtol=0)
    assert np.allclose(sin2(theta), np.sin(np.deg2rad(theta)) ** 2, atol=1e-12, rtol=0)
