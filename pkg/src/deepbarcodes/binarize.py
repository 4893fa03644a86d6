"""Feature binarization: min-max (consecutive-difference sign) and
zero-thresholding.

Both rules are per-row and exact: equal consecutive values and
exactly-zero activations map to 0, with no epsilon band.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import DimensionError
from .store import BarcodeMatrix, FeatureMatrix


class BinarizationMethod(enum.Enum):
    MIN_MAX = "minmax"
    ZERO_THRESHOLD = "zerothresh"


def binarize_minmax(row: np.ndarray) -> np.ndarray:
    """Bit n = 1 iff row[n] < row[n+1]; output length is len(row) - 1."""
    row = np.asarray(row)
    if row.ndim != 1 or row.shape[0] < 2:
        raise DimensionError("min-max binarization needs a 1-D vector of length >= 2")
    return (row[:-1] < row[1:]).astype(np.uint8)


def binarize_zero_threshold(row: np.ndarray) -> np.ndarray:
    """Bit n = 1 iff row[n] > 0; output length equals len(row)."""
    row = np.asarray(row)
    if row.ndim != 1 or row.shape[0] < 1:
        raise DimensionError("zero-threshold binarization needs a non-empty 1-D vector")
    return (row > 0).astype(np.uint8)


def binarize_matrix(m: FeatureMatrix, method: BinarizationMethod) -> BarcodeMatrix:
    """Binarize every row of a feature matrix.

    bits_per_row is cols-1 for MIN_MAX, cols for ZERO_THRESHOLD.
    """
    v = m.values
    if method is BinarizationMethod.MIN_MAX:
        bits = (v[:, :-1] < v[:, 1:]).astype(np.uint8)
    elif method is BinarizationMethod.ZERO_THRESHOLD:
        bits = (v > 0).astype(np.uint8)
    else:
        raise DimensionError(f"unknown binarization method {method!r}")
    return BarcodeMatrix.from_bits(bits)
