"""Polarization-axis angles in degrees.

A polarizer axis is axial: an orientation of ``d`` and ``d + 180`` degrees
describe the same axis. Every function here accepts scalars or numpy arrays.
"""

from __future__ import annotations

import numpy as np


def _out(value, like):
    if np.ndim(like) == 0:
        return float(value)
    return value


def canonicalize(degrees):
    """Reduce an axis orientation to its representative in ``[0, 180)``."""
    d = np.mod(np.asarray(degrees, dtype=float), 180.0)
    # np.mod(-tiny, 180) rounds up to 180.0
    d = np.where(d >= 180.0, 0.0, d)
    return _out(d, degrees)


def relative_angle(a, b):
    """Smallest angle between two polarization axes, in ``[0, 90]``."""
    d = canonicalize(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))
    r = np.minimum(d, 180.0 - d)
    if np.ndim(a) == 0 and np.ndim(b) == 0:
        return float(r)
    return r


def cos2(degrees):
    """cos² of an angle in degrees, via the double-angle form.

    The double-angle form makes the axis-aligned cases exact:
    ``cos2(0) == 1.0`` and ``cos2(90) == 0.0``.
    """
    c = np.cos(np.deg2rad(2.0 * np.asarray(degrees, dtype=float)))
    return _out(0.5 * (1.0 + c), degrees)


def sin2(degrees):
    """sin² of an angle in degrees; exact at 0 and 90 like :func:`cos2`."""
    c = np.cos(np.deg2rad(2.0 * np.asarray(degrees, dtype=float)))
    return _out(0.5 * (1.0 - c), degrees)
