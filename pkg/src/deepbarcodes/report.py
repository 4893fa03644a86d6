"""Run outputs: delimited results file, evaluation reports, run manifest,
and the figures rendered alongside them."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .metrics import EvaluationReport
from .pipeline import RetrievalResult, SearchConfig

RESULTS_HEADER = "# query_row train_row distance"


def write_results(results: list[RetrievalResult], path) -> None:
    """One line per query: query row, final train row, final distance."""
    lines = [RESULTS_HEADER]
    for i, r in enumerate(results):
        lines.append(f"{i} {r.final_index} {r.final_distance:.9g}")
    Path(path).write_text("\n".join(lines) + "\n")


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def config_to_dict(config: SearchConfig) -> dict:
    return {
        "mode": config.mode.value,
        "metric": config.metric.value if config.metric else None,
        "method": config.method.value if config.method else None,
        "n_candidates": config.n_candidates,
        "n_pca": config.n_pca,
    }


def write_manifest(
    path, config: SearchConfig, inputs: dict[str, str], outputs: dict[str, str],
    timings: dict[str, float],
) -> None:
    manifest = {
        "config": config_to_dict(config),
        "inputs": {
            name: {"path": str(p), "sha256": sha256_file(p)}
            for name, p in inputs.items()
        },
        "outputs": {name: str(p) for name, p in outputs.items()},
        "timings_seconds": timings,
    }
    Path(path).write_text(json.dumps(manifest, indent=2) + "\n")


def render_figures(
    results: list[RetrievalResult], report: EvaluationReport, out_dir
) -> list[Path]:
    """Render the per-class accuracy bars and final-distance histogram."""
    out_dir = Path(out_dir)
    written = []

    classes = sorted(report.per_class_hits)
    rates = [report.per_class_hits[c][0] / report.per_class_hits[c][1] for c in classes]
    fig, ax = plt.subplots(figsize=(max(6, 0.3 * len(classes)), 4))
    ax.bar([str(c) for c in classes], rates, color="#4878b0")
    ax.axhline(report.eta_p, color="#d1615d", ls="--", lw=1,
               label=f"overall = {report.eta_p:.3f}")
    ax.set_xlabel("class")
    ax.set_ylabel("hit rate")
    ax.set_ylim(0, 1.05)
    ax.legend(frameon=False)
    fig.tight_layout()
    p = out_dir / "per_class_accuracy.png"
    fig.savefig(p, dpi=120)
    plt.close(fig)
    written.append(p)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist([r.final_distance for r in results], bins=40, color="#4878b0")
    ax.set_xlabel("final match distance")
    ax.set_ylabel("queries")
    fig.tight_layout()
    p = out_dir / "distance_histogram.png"
    fig.savefig(p, dpi=120)
    plt.close(fig)
    written.append(p)

    return written
