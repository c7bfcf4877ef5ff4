"""Stateless counter-based random numbers.

Every uniform variate is a pure function of ``(stream key, trial index,
draw index)``. Any partition of the trial range across workers therefore
reproduces the serial stream bit for bit.
"""

from __future__ import annotations

import hashlib
import struct

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_DRAW_STRIDE = np.uint64(0xD1B54A32D192ED03)

MAX_SEED = 2**64 - 1


def _mix64(z: np.ndarray) -> np.ndarray:
    # splitmix64 finalizer
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def stream_key(seed: int, *labels: int) -> int:
    """Derive a 64-bit stream key from a master seed and integer labels."""
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    payload = struct.pack("<Q", seed) + b"".join(struct.pack("<q", int(lab)) for lab in labels)
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


def uniforms(key: int, trials: np.ndarray, draw: int) -> np.ndarray:
    """Uniform variates in the open interval (0, 1), one per trial index.

    ``draw`` selects an independent variate for the same trial, so a trial
    that needs three numbers uses draws 0, 1 and 2.
    """
    idx = np.asarray(trials, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(key) + _mix64(idx * _GOLDEN + np.uint64(draw) * _DRAW_STRIDE + _GOLDEN)
        z = _mix64(z)
    # top 53 bits, offset by half an ulp so 0 is never produced
    return ((z >> np.uint64(11)).astype(np.float64) + 0.5) * (1.0 / 9007199254740992.0)
