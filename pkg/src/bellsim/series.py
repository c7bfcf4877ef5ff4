"""Validation for detector outcome series."""

from __future__ import annotations

import numpy as np


def as_series(bits, allow_empty: bool = False) -> np.ndarray:
    """Return ``bits`` as a 1-D ``uint8`` array, checking every entry is 0 or 1."""
    arr = np.asarray(bits)
    if arr.ndim != 1:
        raise ValueError(f"an outcome series must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        if not allow_empty:
            raise ValueError("outcome series is empty")
        return arr.astype(np.uint8)
    if arr.dtype == bool:
        return arr.astype(np.uint8)
    if not np.all((arr == 0) | (arr == 1)):
        raise ValueError("outcome series entries must be 0 or 1")
    return arr.astype(np.uint8)
