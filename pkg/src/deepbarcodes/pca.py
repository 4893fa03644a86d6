"""Principal-component fitting and projection for feature compression.

The model is fit on training features only; test features are centered
with the training mean. Projections keep eigen-scaled variance (no
whitening).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DimensionError, FormatError
from .store import FeatureMatrix, _atomic_write

PCA_MAGIC = b"DPC1"

_PCA_HEADER = struct.Struct("<4sII")


@dataclass(frozen=True)
class PcaModel:
    """Training mean plus orthonormal projection basis.

    basis columns are sorted by descending eigenvalue and sign-normalized
    so each column's largest-magnitude entry is positive.

    total_variance is the trace of the training covariance; it is not part
    of the persisted format, so models loaded from disk fall back to the
    sum of the retained eigenvalues (exact whenever k covers the full rank).
    """

    mean: np.ndarray
    basis: np.ndarray
    eigenvalues: np.ndarray
    total_variance: float = field(default=0.0)

    @property
    def input_dim(self) -> int:
        return self.mean.shape[0]

    @property
    def n_components(self) -> int:
        return self.basis.shape[1]


def _sign_normalize(basis: np.ndarray) -> np.ndarray:
    flips = np.sign(basis[np.abs(basis).argmax(axis=0), np.arange(basis.shape[1])])
    flips[flips == 0] = 1.0
    return basis * flips


def pca_fit(train: FeatureMatrix, k: int) -> PcaModel:
    """Fit the top-k principal components of the mean-centered training set.

    Uses SVD of the centered matrix; eigenvalues follow the sample
    covariance convention (divide by rows-1, single row gives 0).
    """
    n, d = train.rows, train.cols
    if not 1 <= k <= min(d, n):
        raise ConfigError(f"k={k} out of range [1, {min(d, n)}]")
    x = train.values.astype(np.float64)
    mean = x.mean(axis=0)
    xc = x - mean
    _, s, vt = np.linalg.svd(xc, full_matrices=False)
    denom = max(n - 1, 1)
    eig = (s * s) / denom
    eig = np.clip(eig, 0.0, None)
    basis = _sign_normalize(vt[:k].T.copy())
    total = float(xc.var(axis=0, ddof=1).sum()) if n > 1 else 0.0
    return PcaModel(
        mean=mean, basis=basis, eigenvalues=eig[:k].copy(), total_variance=total
    )


def pca_transform(model: PcaModel, m: FeatureMatrix) -> FeatureMatrix:
    """Project features onto the model basis after centering with the
    training mean."""
    if m.cols != model.input_dim:
        raise DimensionError(
            f"feature dim {m.cols} != model input dim {model.input_dim}"
        )
    proj = (m.values.astype(np.float64) - model.mean) @ model.basis
    return FeatureMatrix(values=proj.astype(np.float32))


def explained_variance_ratio(model: PcaModel) -> np.ndarray:
    """Fraction of total training variance captured per component."""
    total = model.total_variance if model.total_variance > 0 else model.eigenvalues.sum()
    if total <= 0:
        return np.zeros_like(model.eigenvalues)
    return model.eigenvalues / total


def save_pca_model(model: PcaModel, path) -> None:
    d, k = model.input_dim, model.n_components
    header = _PCA_HEADER.pack(PCA_MAGIC, d, k)
    body = (
        model.mean.astype("<f4").tobytes()
        + np.asfortranarray(model.basis.astype("<f4")).tobytes(order="F")
        + model.eigenvalues.astype("<f4").tobytes()
    )
    _atomic_write(path, header + body)


def load_pca_model(path) -> PcaModel:
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _PCA_HEADER.size or raw[:4] != PCA_MAGIC:
        raise FormatError(f"{path}: bad magic, expected {PCA_MAGIC.decode()}")
    _, d, k = _PCA_HEADER.unpack_from(raw)
    want = _PCA_HEADER.size + 4 * (d + d * k + k)
    if len(raw) != want:
        raise FormatError(f"{path}: expected {want} bytes, got {len(raw)}")
    off = _PCA_HEADER.size
    mean = np.frombuffer(raw, dtype="<f4", count=d, offset=off).astype(np.float64)
    off += 4 * d
    basis = (
        np.frombuffer(raw, dtype="<f4", count=d * k, offset=off)
        .reshape(d, k, order="F")
        .astype(np.float64)
    )
    off += 4 * d * k
    eig = np.frombuffer(raw, dtype="<f4", count=k, offset=off).astype(np.float64)
    return PcaModel(
        mean=mean, basis=basis, eigenvalues=eig, total_variance=float(eig.sum())
    )
