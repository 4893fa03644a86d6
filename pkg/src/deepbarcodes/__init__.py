"""deepbarcodes: binary barcodes and two-stage Hamming/rerank retrieval
for real-valued embedding vectors."""

from .binarize import (
    BinarizationMethod,
    binarize_matrix,
    binarize_minmax,
    binarize_zero_threshold,
)
from .errors import (
    ConfigError,
    DataError,
    DeepBarcodeError,
    DimensionError,
    FormatError,
)
from .hamming import HammingIndex, TopNResult, build_index, hamming_distance, top_n
from .metrics import EvaluationReport, evaluate, labels_from_results
from .pca import (
    PcaModel,
    explained_variance_ratio,
    load_pca_model,
    pca_fit,
    pca_transform,
    save_pca_model,
)
from .pipeline import RetrievalResult, SearchConfig, SearchMode, run_search
from .realvalue import DistanceMetric, nearest, vector_distance
from .store import (
    BarcodeMatrix,
    FeatureMatrix,
    LabelVector,
    load_barcodes,
    load_features,
    load_labels,
    save_barcodes,
    save_features,
    save_labels,
)
from .synth import SyntheticSpec, generate

__version__ = "0.1.0"
