"""Retrieval accuracy measures.

Three numbers per run: patch-to-scan accuracy (fraction of queries whose
retrieved match has the correct class), whole-scan accuracy (mean over
classes of the within-class hit rate), and their product. Classes are
defined by the ground-truth labels; the fixed 24-way divisor of the
original benchmark generalizes to the number of distinct classes present.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError
from .store import LabelVector


@dataclass(frozen=True)
class EvaluationReport:
    eta_p: float
    eta_w: float
    eta_total: float
    per_class_hits: dict[int, tuple[int, int]]
    n_tot: int

    def to_kv(self) -> str:
        """Line-oriented key=value rendering (machine readable)."""
        lines = [
            f"eta_p={self.eta_p:.12g}",
            f"eta_w={self.eta_w:.12g}",
            f"eta_total={self.eta_total:.12g}",
            f"n_tot={self.n_tot}",
        ]
        for cls in sorted(self.per_class_hits):
            hits, size = self.per_class_hits[cls]
            lines.append(f"per_class.{cls}={hits}/{size}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [
            f"queries:              {self.n_tot}",
            f"patch-to-scan (eta_p): {100 * self.eta_p:6.2f}%",
            f"whole-scan   (eta_w): {100 * self.eta_w:6.2f}%",
            f"total     (eta_tot.): {100 * self.eta_total:6.2f}%",
            "",
            "per-class hit rates:",
        ]
        for cls in sorted(self.per_class_hits):
            hits, size = self.per_class_hits[cls]
            lines.append(f"  class {cls:>4}: {hits:>5}/{size:<5} ({hits / size:.4f})")
        return "\n".join(lines) + "\n"


def evaluate(true_labels: LabelVector, retrieved_labels: LabelVector) -> EvaluationReport:
    t = true_labels.labels
    r = retrieved_labels.labels
    if t.size != r.size:
        raise DimensionError(f"label lengths differ: {t.size} vs {r.size}")
    if t.size == 0:
        raise ConfigError("cannot evaluate an empty query set")

    correct = t == r
    per_class: dict[int, tuple[int, int]] = {}
    for cls in np.unique(t):
        in_cls = t == cls
        per_class[int(cls)] = (int(correct[in_cls].sum()), int(in_cls.sum()))

    eta_p = float(correct.sum()) / t.size
    eta_w = float(np.mean([h / s for h, s in per_class.values()]))
    return EvaluationReport(
        eta_p=eta_p,
        eta_w=eta_w,
        eta_total=eta_p * eta_w,
        per_class_hits=per_class,
        n_tot=int(t.size),
    )


def labels_from_results(results, train_labels: LabelVector) -> LabelVector:
    """Look up the training label of each query's final match."""
    finals = np.asarray([r.final_index for r in results], dtype=np.int64)
    if finals.size and (finals.min() < 0 or finals.max() >= len(train_labels)):
        raise IndexError(
            f"final index out of range [0, {len(train_labels)}): "
            f"{finals.min()}..{finals.max()}"
        )
    return LabelVector(labels=train_labels.labels[finals])
