"""Input validation helpers shared across the package.

All public entry points normalise their inputs through these functions so
that downstream code can assume well-formed numpy arrays.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_sign_vector",
    "as_sign_matrix",
    "as_sides",
    "check_power_of_two",
]


def as_sign_vector(x, name: str = "vector") -> np.ndarray:
    """Coerce ``x`` to a 1-D integer array with entries in {+1, -1}."""
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must have at least one coordinate")
    arr = arr.astype(np.int64, copy=False)
    if not np.isin(arr, (-1, 1)).all():
        raise ValueError(f"{name} entries must be +1 or -1")
    return arr


def as_sign_matrix(X, name: str = "vectors") -> np.ndarray:
    """Coerce ``X`` to a 2-D (k, d) integer array with entries in {+1, -1}."""
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    k, d = arr.shape
    if k < 1 or d < 1:
        raise ValueError(f"{name} must be non-empty, got shape {arr.shape}")
    arr = arr.astype(np.int64, copy=False)
    if not np.isin(arr, (-1, 1)).all():
        raise ValueError(f"{name} entries must be +1 or -1")
    return arr


def as_sides(sides, size: int, name: str = "sides") -> np.ndarray:
    """Coerce a per-item cluster assignment to a 1-D array over {1, 2}."""
    arr = np.asarray(sides)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if arr.shape[0] != size:
        raise ValueError(f"{name} has length {arr.shape[0]}, expected {size}")
    arr = arr.astype(np.int64, copy=False)
    if not np.isin(arr, (1, 2)).all():
        raise ValueError(f"{name} labels must be 1 or 2")
    return arr


def check_power_of_two(value: int, name: str = "M") -> int:
    """Return ``value`` if it is a power of two >= 1, else raise ValueError."""
    v = int(value)
    if v < 1 or v & (v - 1):
        raise ValueError(f"{name} must be a power of 2, got {value}")
    return v
