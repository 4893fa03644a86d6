"""Brute-force nearest-neighbor search over real-valued features under
L1 (city-block) or L2 (Euclidean) distance.

Distances accumulate in 64-bit precision even though features are stored
as float32; argmin determinism depends on it. Ties break by ascending
corpus index.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import ConfigError, DimensionError
from .store import FeatureMatrix


class DistanceMetric(enum.Enum):
    L1 = "l1"
    L2 = "l2"


def vector_distance(a: np.ndarray, b: np.ndarray, metric: DistanceMetric) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"vector lengths differ: {a.shape} vs {b.shape}")
    diff = a - b
    if metric is DistanceMetric.L1:
        return float(np.abs(diff).sum())
    return float(np.sqrt((diff * diff).sum()))


def _distances_to_rows(
    rows: np.ndarray, query: np.ndarray, metric: DistanceMetric
) -> np.ndarray:
    diff = rows.astype(np.float64) - query.astype(np.float64)
    if metric is DistanceMetric.L1:
        return np.abs(diff).sum(axis=1)
    return np.sqrt((diff * diff).sum(axis=1))


def nearest(
    corpus: FeatureMatrix,
    candidate_indices,
    query: np.ndarray,
    metric: DistanceMetric,
) -> tuple[int, float]:
    """Return (corpus index, distance) of the closest candidate.

    candidate_indices of None scans the whole corpus; otherwise only the
    listed rows compete. First minimal index wins ties, so candidates are
    scanned in ascending index order.
    """
    query = np.asarray(query)
    if query.ndim != 1 or query.shape[0] != corpus.cols:
        raise DimensionError(
            f"query length {query.shape} != corpus cols {corpus.cols}"
        )
    if candidate_indices is None:
        rows = corpus.values
        dist = _distances_to_rows(rows, query, metric)
        best = int(np.argmin(dist))
        return best, float(dist[best])

    cand = np.asarray(candidate_indices, dtype=np.int64)
    if cand.size == 0:
        raise ConfigError("candidate set is empty")
    if cand.min() < 0 or cand.max() >= corpus.rows:
        raise IndexError(
            f"candidate index out of range [0, {corpus.rows}): "
            f"{cand.min()}..{cand.max()}"
        )
    cand = np.sort(cand)
    dist = _distances_to_rows(corpus.values[cand], query, metric)
    pos = int(np.argmin(dist))
    return int(cand[pos]), float(dist[pos])
