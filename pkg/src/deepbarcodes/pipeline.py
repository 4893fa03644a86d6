"""Search orchestration for the three experiment families.

Modes:
    REAL_VALUED           single-stage scan over full features (L1/L2)
    REDUCED_REAL          PCA-project both sides, then single-stage scan
    BARCODE_ONLY          binarize both sides, best Hamming match
    TWO_STAGE             Hamming top-N prefilter, rerank on full features
    REDUCED_BARCODE       PCA-project, min-max binarize, Hamming top-N,
                          rerank on FULL features under L1
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .binarize import BinarizationMethod, binarize_matrix
from .errors import ConfigError, DimensionError
from .hamming import TopNResult, build_index, top_n_packed
from .pca import pca_fit, pca_transform
from .realvalue import DistanceMetric, nearest
from .store import FeatureMatrix


class SearchMode(enum.Enum):
    REAL_VALUED = "realvalued"
    REDUCED_REAL = "reducedreal"
    BARCODE_ONLY = "barcodeonly"
    TWO_STAGE = "twostage"
    REDUCED_BARCODE = "reducedbarcode"


_REDUCED_MODES = {SearchMode.REDUCED_REAL, SearchMode.REDUCED_BARCODE}
_TWO_STAGE_MODES = {SearchMode.TWO_STAGE, SearchMode.REDUCED_BARCODE}
_BARCODE_MODES = {SearchMode.BARCODE_ONLY, SearchMode.TWO_STAGE}


@dataclass(frozen=True)
class SearchConfig:
    mode: SearchMode
    metric: Optional[DistanceMetric] = None
    method: Optional[BinarizationMethod] = None
    n_candidates: Optional[int] = None
    n_pca: Optional[int] = None

    def validate(self) -> None:
        if self.mode in _TWO_STAGE_MODES:
            if self.n_candidates is None or self.n_candidates < 1:
                raise ConfigError(
                    f"mode {self.mode.value} needs n_candidates >= 1, "
                    f"got {self.n_candidates}"
                )
        if (self.n_pca is not None) != (self.mode in _REDUCED_MODES):
            raise ConfigError(
                f"n_pca must be given exactly when mode is reduced; "
                f"mode={self.mode.value}, n_pca={self.n_pca}"
            )
        if self.mode in _BARCODE_MODES and self.method is None:
            raise ConfigError(f"mode {self.mode.value} needs a binarization method")
        if self.mode is SearchMode.REDUCED_BARCODE:
            # the reduced-barcode pipeline is only validated for min-max
            # binarization with an L1 rerank
            if self.method not in (None, BinarizationMethod.MIN_MAX):
                raise ConfigError(
                    "reducedbarcode mode only supports min-max binarization"
                )
            if self.metric not in (None, DistanceMetric.L1):
                raise ConfigError("reducedbarcode mode reranks under L1 only")
        needs_metric = {
            SearchMode.REAL_VALUED,
            SearchMode.REDUCED_REAL,
            SearchMode.TWO_STAGE,
        }
        if self.mode in needs_metric and self.metric is None:
            raise ConfigError(f"mode {self.mode.value} needs a distance metric")


@dataclass(frozen=True)
class RetrievalResult:
    """Outcome for one query: stage-1 candidates (two-stage modes only),
    final best training row, and its distance.

    final_distance is in stage-2 metric units for rerank modes, in the
    single-stage metric otherwise (Hamming bit count for BARCODE_ONLY).
    """

    final_index: int
    final_distance: float
    stage1: Optional[TopNResult] = None


def run_search(
    train_features: FeatureMatrix,
    test_features: FeatureMatrix,
    config: SearchConfig,
) -> list[RetrievalResult]:
    """Run one retrieval experiment; one RetrievalResult per test row."""
    config.validate()
    if train_features.cols != test_features.cols:
        raise DimensionError(
            f"train cols {train_features.cols} != test cols {test_features.cols}"
        )

    mode = config.mode
    if mode is SearchMode.REAL_VALUED:
        return _single_stage(train_features, test_features, config.metric)

    if mode is SearchMode.REDUCED_REAL:
        model = pca_fit(train_features, config.n_pca)
        return _single_stage(
            pca_transform(model, train_features),
            pca_transform(model, test_features),
            config.metric,
        )

    if mode is SearchMode.BARCODE_ONLY:
        index = build_index(binarize_matrix(train_features, config.method))
        test_bc = binarize_matrix(test_features, config.method)
        out = []
        for i in range(test_bc.rows):
            hit = top_n_packed(index, test_bc.packed[i], 1)
            out.append(
                RetrievalResult(
                    final_index=int(hit.indices[0]),
                    final_distance=float(hit.distances[0]),
                )
            )
        return out

    if mode is SearchMode.TWO_STAGE:
        train_stage1, test_stage1 = train_features, test_features
        method = config.method
        rerank_metric = config.metric
    else:  # REDUCED_BARCODE
        model = pca_fit(train_features, config.n_pca)
        train_stage1 = pca_transform(model, train_features)
        test_stage1 = pca_transform(model, test_features)
        method = BinarizationMethod.MIN_MAX
        rerank_metric = DistanceMetric.L1

    index = build_index(binarize_matrix(train_stage1, method))
    test_bc = binarize_matrix(test_stage1, method)
    out = []
    for i in range(test_bc.rows):
        stage1 = top_n_packed(index, test_bc.packed[i], config.n_candidates)
        idx, dist = nearest(
            train_features, stage1.indices, test_features.values[i], rerank_metric
        )
        out.append(
            RetrievalResult(final_index=idx, final_distance=dist, stage1=stage1)
        )
    return out


def _single_stage(train, test, metric) -> list[RetrievalResult]:
    out = []
    for i in range(test.rows):
        idx, dist = nearest(train, None, test.values[i], metric)
        out.append(RetrievalResult(final_index=idx, final_distance=dist))
    return out
