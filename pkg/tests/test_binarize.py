import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from deepbarcodes import (
    BinarizationMethod,
    DimensionError,
    FeatureMatrix,
    binarize_matrix,
    binarize_minmax,
    binarize_zero_threshold,
)

finite_floats = st.floats(-1e6, 1e6, allow_nan=False, width=32)


def test_minmax_basic():
    assert list(binarize_minmax(np.array([2.0, 3.5, 3.5, 1.0]))) == [1, 0, 0]


def test_minmax_constant_vector():
    assert list(binarize_minmax(np.array([7.0, 7.0, 7.0]))) == [0, 0]


def test_minmax_increasing_4096():
    out = binarize_minmax(np.arange(4096, dtype=np.float32))
    assert out.shape == (4095,)
    assert out.all()


def test_minmax_rejects_short_vector():
    with pytest.raises(DimensionError):
        binarize_minmax(np.array([1.0]))


def test_zero_threshold_basic():
    assert list(binarize_zero_threshold(np.array([-1.0, 0.0, 0.5]))) == [0, 0, 1]


def test_zero_threshold_all_negative():
    assert not binarize_zero_threshold(-np.arange(1, 10, dtype=float)).any()


def test_zero_threshold_relu_style():
    row = np.array([0.0, 3.0, 0.0, 0.0, 1e-30, 2.0])
    assert list(binarize_zero_threshold(row)) == [0, 1, 0, 0, 1, 1]


def test_matrix_minmax():
    m = FeatureMatrix(values=np.array([[1, 2, 0], [0, -1, 3]], dtype=np.float32))
    b = binarize_matrix(m, BinarizationMethod.MIN_MAX)
    assert b.bits_per_row == 2
    assert b.unpack().tolist() == [[1, 0], [0, 1]]


def test_matrix_zero_threshold():
    m = FeatureMatrix(values=np.array([[1, 2, 0], [0, -1, 3]], dtype=np.float32))
    b = binarize_matrix(m, BinarizationMethod.ZERO_THRESHOLD)
    assert b.bits_per_row == 3
    assert b.unpack().tolist() == [[1, 1, 0], [0, 0, 1]]


def test_matrix_output_shape_contract():
    rng = np.random.default_rng(3)
    m = FeatureMatrix(values=rng.normal(size=(10, 4096)).astype(np.float32))
    assert binarize_matrix(m, BinarizationMethod.MIN_MAX).bits_per_row == 4095
    assert binarize_matrix(m, BinarizationMethod.ZERO_THRESHOLD).bits_per_row == 4096


def test_matrix_rows_match_per_row_functions():
    rng = np.random.default_rng(4)
    m = FeatureMatrix(values=rng.normal(size=(5, 17)).astype(np.float32))
    mm = binarize_matrix(m, BinarizationMethod.MIN_MAX).unpack()
    zt = binarize_matrix(m, BinarizationMethod.ZERO_THRESHOLD).unpack()
    for i in range(5):
        assert (mm[i] == binarize_minmax(m.values[i])).all()
        assert (zt[i] == binarize_zero_threshold(m.values[i])).all()


# integer-valued rows keep consecutive differences large enough that the
# affine map cannot create or destroy a strict inequality through rounding
@settings(max_examples=200, deadline=None)
@given(
    row=arrays(
        np.float64,
        st.integers(2, 64),
        elements=st.integers(-1000, 1000).map(float),
    ),
    a=st.floats(1e-3, 1e3),
    b=st.floats(-1e3, 1e3),
)
def test_minmax_invariant_under_increasing_affine(row, a, b):
    assert (binarize_minmax(a * row + b) == binarize_minmax(row)).all()


@settings(max_examples=200, deadline=None)
@given(
    row=arrays(np.float64, st.integers(1, 64), elements=finite_floats),
    a=st.floats(1e-3, 1e3),
)
def test_zero_threshold_invariant_under_positive_scaling(row, a):
    assert (binarize_zero_threshold(a * row) == binarize_zero_threshold(row)).all()


def test_zero_threshold_not_shift_invariant():
    row = np.array([-1.0, 2.0])
    assert list(binarize_zero_threshold(row)) == [0, 1]
    assert list(binarize_zero_threshold(row + 10.0)) == [1, 1]


def test_determinism():
    rng = np.random.default_rng(5)
    row = rng.normal(size=100)
    assert (binarize_minmax(row) == binarize_minmax(row.copy())).all()
    assert (
        binarize_zero_threshold(row) == binarize_zero_threshold(row.copy())
    ).all()
