import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deepbarcodes import (
    BarcodeMatrix,
    DataError,
    FeatureMatrix,
    FormatError,
    LabelVector,
    load_barcodes,
    load_features,
    load_labels,
    save_barcodes,
    save_features,
    save_labels,
)
from deepbarcodes.store import BARCODE_MAGIC, FEATURE_MAGIC


def test_feature_roundtrip_basic(tmp_path):
    m = FeatureMatrix(values=np.array([[1, 2, 3], [4, 5, 6]], dtype=np.float32))
    path = tmp_path / "m.dft"
    save_features(m, path)
    assert load_features(path) == m


def test_feature_file_size(tmp_path):
    m = FeatureMatrix(values=np.zeros((2, 3), dtype=np.float32))
    path = tmp_path / "m.dft"
    save_features(m, path)
    assert path.stat().st_size == 12 + 24


def test_feature_roundtrip_is_bit_exact(tmp_path):
    m = FeatureMatrix(values=np.array([[0.1, 0.2], [0.3, 0.4]], dtype=np.float32))
    path = tmp_path / "m.dft"
    save_features(m, path)
    loaded = load_features(path)
    assert (loaded.values.view(np.uint32) == m.values.view(np.uint32)).all()


def test_feature_bad_magic(tmp_path):
    path = tmp_path / "m.dft"
    path.write_bytes(b"NOPE" + b"\x00" * 8)
    with pytest.raises(FormatError, match="magic"):
        load_features(path)


def test_feature_truncated_payload(tmp_path):
    import struct

    path = tmp_path / "m.dft"
    path.write_bytes(struct.pack("<4sII", FEATURE_MAGIC, 2, 3) + b"\x00" * 20)
    with pytest.raises(FormatError, match="payload"):
        load_features(path)


def test_feature_rejects_nan_with_position(tmp_path):
    import struct

    vals = np.array([[1, 2, np.nan], [4, 5, 6]], dtype="<f4")
    path = tmp_path / "m.dft"
    path.write_bytes(struct.pack("<4sII", FEATURE_MAGIC, 2, 3) + vals.tobytes())
    with pytest.raises(DataError, match=r"\(0,2\)"):
        load_features(path)


def test_feature_rejects_single_column():
    with pytest.raises(DataError):
        FeatureMatrix(values=np.zeros((1, 1), dtype=np.float32))


def test_labels_roundtrip(tmp_path):
    path = tmp_path / "l.labels"
    path.write_text("0\n5\n23\n")
    assert list(load_labels(path).labels) == [0, 5, 23]


def test_labels_parse_error_names_line(tmp_path):
    path = tmp_path / "l.labels"
    path.write_text("x\n")
    with pytest.raises(FormatError, match="line 1"):
        load_labels(path)


def test_labels_negative_rejected(tmp_path):
    path = tmp_path / "l.labels"
    path.write_text("-1\n")
    with pytest.raises(DataError):
        load_labels(path)


def test_barcode_packing_is_lsb_first():
    b = BarcodeMatrix.from_bits(np.array([[1, 0, 1]], dtype=np.uint8))
    assert b.packed[0, 0] == 0b00000101
    assert b.bits_per_row == 3


def test_barcode_pad_bit_rejected(tmp_path):
    import struct

    path = tmp_path / "b.dbc"
    path.write_bytes(struct.pack("<4sII", BARCODE_MAGIC, 1, 3) + bytes([0b10000101]))
    with pytest.raises(FormatError, match="pad"):
        load_barcodes(path)


def test_barcode_roundtrip_wide(tmp_path):
    rng = np.random.default_rng(7)
    bits = rng.integers(0, 2, (2, 4095), dtype=np.uint8)
    b = BarcodeMatrix.from_bits(bits)
    path = tmp_path / "b.dbc"
    save_barcodes(b, path)
    loaded = load_barcodes(path)
    assert loaded == b
    assert (loaded.unpack() == bits).all()


@settings(max_examples=50, deadline=None)
@given(
    rows=st.integers(1, 8),
    cols=st.integers(2, 40),
    seed=st.integers(0, 2**31),
)
def test_feature_roundtrip_property(tmp_path_factory, rows, cols, seed):
    rng = np.random.default_rng(seed)
    m = FeatureMatrix(
        values=rng.normal(size=(rows, cols)).astype(np.float32)
    )
    path = tmp_path_factory.mktemp("ft") / "m.dft"
    save_features(m, path)
    assert load_features(path) == m


@settings(max_examples=50, deadline=None)
@given(
    rows=st.integers(1, 8),
    bits=st.integers(1, 100),
    seed=st.integers(0, 2**31),
)
def test_barcode_pack_unpack_property(tmp_path_factory, rows, bits, seed):
    rng = np.random.default_rng(seed)
    raw = rng.integers(0, 2, (rows, bits), dtype=np.uint8)
    b = BarcodeMatrix.from_bits(raw)
    assert (b.unpack() == raw).all()
    path = tmp_path_factory.mktemp("bc") / "b.dbc"
    save_barcodes(b, path)
    assert load_barcodes(path) == b


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 10**6), min_size=0, max_size=40))
def test_labels_roundtrip_property(tmp_path_factory, labels):
    v = LabelVector(labels=np.asarray(labels, dtype=np.int64))
    path = tmp_path_factory.mktemp("lb") / "l.labels"
    save_labels(v, path)
    assert load_labels(path) == v
