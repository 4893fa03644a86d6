"""On-disk and in-memory representation of feature matrices, barcode
matrices and label vectors.

Binary layouts (all little-endian):

    feature file:  magic "DFT1", rows u32, cols u32, rows*cols float32 row-major
    barcode file:  magic "DBC1", rows u32, bits_per_row u32,
                   rows * ceil(bits_per_row/8) bytes, LSB-first, zero-padded
    label file:    plain text, one non-negative base-10 integer per line
"""

from __future__ import annotations

import os
import struct
import tempfile
from dataclasses import dataclass

import numpy as np

from .errors import DataError, DimensionError, FormatError

FEATURE_MAGIC = b"DFT1"
BARCODE_MAGIC = b"DBC1"

_HEADER = struct.Struct("<4sII")


@dataclass(frozen=True)
class FeatureMatrix:
    """Dense matrix of real-valued descriptors, one row per image/patch.

    Stored as float32; never mutated after construction.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float32)
        if v.ndim != 2:
            raise DimensionError(f"feature matrix must be 2-D, got {v.ndim}-D")
        if v.shape[0] < 1:
            raise DataError("feature matrix needs at least one row")
        if v.shape[1] < 2:
            raise DataError(
                f"feature matrix needs at least 2 columns, got {v.shape[1]}"
            )
        bad = ~np.isfinite(v)
        if bad.any():
            r, c = np.argwhere(bad)[0]
            raise DataError(f"non-finite value at ({r},{c})")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    def __eq__(self, other):
        if not isinstance(other, FeatureMatrix):
            return NotImplemented
        return self.values.shape == other.values.shape and bool(
            (self.values.view(np.uint32) == other.values.view(np.uint32)).all()
        )


@dataclass(frozen=True)
class BarcodeMatrix:
    """Bit-packed binary descriptors.

    Bit i of a row lives in byte i//8 at bit position i%8 (LSB-first).
    Pad bits in the final byte of each row are always zero.
    """

    packed: np.ndarray
    bits_per_row: int

    def __post_init__(self):
        p = np.ascontiguousarray(self.packed, dtype=np.uint8)
        if p.ndim != 2:
            raise DimensionError(f"packed payload must be 2-D, got {p.ndim}-D")
        if self.bits_per_row < 1:
            raise DataError(f"bits_per_row must be >= 1, got {self.bits_per_row}")
        want = (self.bits_per_row + 7) // 8
        if p.shape[1] != want:
            raise DimensionError(
                f"expected {want} bytes per row for {self.bits_per_row} bits, "
                f"got {p.shape[1]}"
            )
        pad = 8 * want - self.bits_per_row
        if pad and (p[:, -1] >> (8 - pad)).any():
            raise FormatError("nonzero pad bits in final byte")
        p.setflags(write=False)
        object.__setattr__(self, "packed", p)

    @classmethod
    def from_bits(cls, bits: np.ndarray) -> "BarcodeMatrix":
        """Pack a (rows, bits_per_row) 0/1 array, LSB-first."""
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 2:
            raise DimensionError("bit array must be 2-D")
        packed = np.packbits(bits, axis=1, bitorder="little")
        return cls(packed=packed, bits_per_row=bits.shape[1])

    def unpack(self) -> np.ndarray:
        """Return the (rows, bits_per_row) 0/1 array."""
        bits = np.unpackbits(self.packed, axis=1, bitorder="little")
        return bits[:, : self.bits_per_row]

    @property
    def rows(self) -> int:
        return self.packed.shape[0]

    def __eq__(self, other):
        if not isinstance(other, BarcodeMatrix):
            return NotImplemented
        return (
            self.bits_per_row == other.bits_per_row
            and self.packed.shape == other.packed.shape
            and bool((self.packed == other.packed).all())
        )


@dataclass(frozen=True)
class LabelVector:
    """Per-row class ids, aligned by index with a feature/barcode matrix."""

    labels: np.ndarray

    def __post_init__(self):
        lab = np.ascontiguousarray(self.labels, dtype=np.int64)
        if lab.ndim != 1:
            raise DimensionError("labels must be 1-D")
        if lab.size and lab.min() < 0:
            raise DataError(f"negative class id {lab.min()}")
        lab.setflags(write=False)
        object.__setattr__(self, "labels", lab)

    def __len__(self) -> int:
        return self.labels.size

    def __eq__(self, other):
        if not isinstance(other, LabelVector):
            return NotImplemented
        return len(self) == len(other) and bool((self.labels == other.labels).all())


def _atomic_write(path, data: bytes):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_header(raw: bytes, magic: bytes, path) -> tuple[int, int]:
    if len(raw) < _HEADER.size or raw[:4] != magic:
        raise FormatError(f"{path}: bad magic, expected {magic.decode()}")
    _, a, b = _HEADER.unpack_from(raw)
    return a, b


def save_features(m: FeatureMatrix, path) -> None:
    header = _HEADER.pack(FEATURE_MAGIC, m.rows, m.cols)
    _atomic_write(path, header + m.values.tobytes())


def load_features(path) -> FeatureMatrix:
    with open(path, "rb") as fh:
        raw = fh.read()
    rows, cols = _read_header(raw, FEATURE_MAGIC, path)
    payload = raw[_HEADER.size :]
    if len(payload) != rows * cols * 4:
        raise FormatError(
            f"{path}: payload is {len(payload)} bytes, header declares "
            f"{rows}x{cols} float32 ({rows * cols * 4} bytes)"
        )
    values = np.frombuffer(payload, dtype="<f4").reshape(rows, cols)
    return FeatureMatrix(values=values)


def save_barcodes(b: BarcodeMatrix, path) -> None:
    header = _HEADER.pack(BARCODE_MAGIC, b.rows, b.bits_per_row)
    _atomic_write(path, header + b.packed.tobytes())


def load_barcodes(path) -> BarcodeMatrix:
    with open(path, "rb") as fh:
        raw = fh.read()
    rows, bits = _read_header(raw, BARCODE_MAGIC, path)
    nbytes = (bits + 7) // 8
    payload = raw[_HEADER.size :]
    if len(payload) != rows * nbytes:
        raise FormatError(
            f"{path}: payload is {len(payload)} bytes, header declares "
            f"{rows} rows of {nbytes} bytes"
        )
    packed = np.frombuffer(payload, dtype=np.uint8).reshape(rows, nbytes)
    return BarcodeMatrix(packed=packed, bits_per_row=bits)


def save_labels(v: LabelVector, path) -> None:
    _atomic_write(path, "".join(f"{x}\n" for x in v.labels).encode("ascii"))


def load_labels(path) -> LabelVector:
    out = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s:
                continue
            try:
                val = int(s, 10)
            except ValueError:
                raise FormatError(f"{path}: line {lineno}: not an integer: {s!r}")
            if val < 0:
                raise DataError(f"{path}: line {lineno}: negative class id {val}")
            out.append(val)
    return LabelVector(labels=np.asarray(out, dtype=np.int64))
