"""Exact top-N nearest-barcode search under Hamming (XOR popcount) distance.

The scan is exhaustive over packed bytes; pad bits are guaranteed zero
by the store invariants so they never contribute to a distance. Ties are
always broken by ascending corpus index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError
from .store import BarcodeMatrix


@dataclass(frozen=True)
class TopNResult:
    """Ordered candidate list: distances non-decreasing, ties by index."""

    indices: np.ndarray
    distances: np.ndarray


@dataclass(frozen=True)
class HammingIndex:
    corpus: BarcodeMatrix

    @property
    def row_count(self) -> int:
        return self.corpus.rows

    @property
    def bits_per_row(self) -> int:
        return self.corpus.bits_per_row


def hamming_distance(a: np.ndarray, b: np.ndarray) -> int:
    """Popcount of XOR between two unpacked 0/1 bit vectors."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape != b.shape:
        raise DimensionError(f"bit lengths differ: {a.shape} vs {b.shape}")
    return int((a != b).sum())


def build_index(corpus: BarcodeMatrix) -> HammingIndex:
    if corpus.rows < 1:
        raise ConfigError("cannot build an index over an empty corpus")
    return HammingIndex(corpus=corpus)


def _query_distances(index: HammingIndex, packed_query: np.ndarray) -> np.ndarray:
    xor = np.bitwise_xor(index.corpus.packed, packed_query)
    return np.bitwise_count(xor).sum(axis=1, dtype=np.int64)


def _pack_query(index: HammingIndex, query: np.ndarray) -> np.ndarray:
    query = np.asarray(query, dtype=np.uint8)
    if query.ndim != 1 or query.shape[0] != index.bits_per_row:
        raise DimensionError(
            f"query has {query.shape} bits, corpus rows have {index.bits_per_row}"
        )
    return np.packbits(query, bitorder="little")


def top_n(index: HammingIndex, query: np.ndarray, n: int) -> TopNResult:
    """Return the n nearest corpus rows ordered by (distance, index).

    A query with more candidates requested than corpus rows returns all
    rows. Selection uses a composite (distance, index) key so the cut at
    rank n is deterministic.
    """
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    dist = _query_distances(index, _pack_query(index, query))
    return _select_top_n(dist, n)


def top_n_packed(index: HammingIndex, packed_query: np.ndarray, n: int) -> TopNResult:
    """top_n for a query that is already packed (internal fast path)."""
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    return _select_top_n(_query_distances(index, packed_query), n)


def _select_top_n(dist: np.ndarray, n: int) -> TopNResult:
    rows = dist.shape[0]
    n = min(n, rows)
    # composite key: distance in the high bits, index in the low 32
    key = (dist << np.int64(32)) | np.arange(rows, dtype=np.int64)
    if n < rows:
        key = np.partition(key, n - 1)[:n]
    key.sort()
    return TopNResult(
        indices=(key & np.int64(0xFFFFFFFF)).astype(np.int64),
        distances=(key >> np.int64(32)).astype(np.int64),
    )
