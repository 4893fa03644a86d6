"""Command-line front door.

Subcommands: synth, binarize, pca fit/transform, search.
Exit codes: 0 success, 1 data/I-O error, 2 usage/configuration error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import metrics, pipeline, report, store
from .binarize import BinarizationMethod, binarize_matrix
from .errors import ConfigError, DeepBarcodeError
from .pca import load_pca_model, pca_fit, pca_transform, save_pca_model
from .realvalue import DistanceMetric
from .synth import SyntheticSpec, generate


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deepbarcodes",
        description="Binary barcodes and two-stage Hamming/rerank retrieval",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a labeled synthetic dataset")
    p.add_argument("--classes", type=int, default=24)
    p.add_argument("--per-class", type=int, default=50)
    p.add_argument("--test-per-class", type=int, default=5)
    p.add_argument("--dim", type=int, default=64)
    p.add_argument("--separation", type=float, default=10.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("binarize", help="convert a feature file to barcodes")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--method", choices=["minmax", "zerothresh"], required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("pca", help="fit or apply a PCA model")
    pca_sub = p.add_subparsers(dest="pca_command", required=True)
    pf = pca_sub.add_parser("fit")
    pf.add_argument("--in", dest="infile", required=True)
    pf.add_argument("--k", "--n-pca", dest="k", type=int, required=True)
    pf.add_argument("--out", required=True)
    pt = pca_sub.add_parser("transform")
    pt.add_argument("--model", required=True)
    pt.add_argument("--in", dest="infile", required=True)
    pt.add_argument("--out", required=True)

    p = sub.add_parser("search", help="run a retrieval experiment")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--train-labels", required=True)
    p.add_argument("--test-labels", required=True)
    p.add_argument(
        "--mode",
        choices=[m.value for m in pipeline.SearchMode],
        required=True,
    )
    p.add_argument("--metric", choices=["l1", "l2"])
    p.add_argument("--method", choices=["minmax", "zerothresh"])
    p.add_argument("--n", type=int, help="stage-1 candidate count")
    p.add_argument("--n-pca", type=int, help="principal components to keep")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--no-figures", action="store_true")
    return parser


def _cmd_synth(args) -> int:
    spec = SyntheticSpec(
        classes=args.classes,
        per_class=args.per_class,
        dim=args.dim,
        separation=args.separation,
        seed=args.seed,
        test_per_class=args.test_per_class,
    )
    train, train_labels, test, test_labels = generate(spec)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    store.save_features(train, out / "train.dft")
    store.save_labels(train_labels, out / "train.labels")
    store.save_features(test, out / "test.dft")
    store.save_labels(test_labels, out / "test.labels")
    print(f"wrote {train.rows} train + {test.rows} test rows, dim {train.cols}")
    return 0


def _cmd_binarize(args) -> int:
    m = store.load_features(args.infile)
    barcodes = binarize_matrix(m, BinarizationMethod(args.method))
    store.save_barcodes(barcodes, args.out)
    print(f"rows={barcodes.rows} bits_per_row={barcodes.bits_per_row}")
    return 0


def _cmd_pca(args) -> int:
    if args.pca_command == "fit":
        model = pca_fit(store.load_features(args.infile), args.k)
        save_pca_model(model, args.out)
        print(f"fit model: d={model.input_dim} k={model.n_components}")
    else:
        model = load_pca_model(args.model)
        reduced = pca_transform(model, store.load_features(args.infile))
        store.save_features(reduced, args.out)
        print(f"transformed: rows={reduced.rows} cols={reduced.cols}")
    return 0


def _cmd_search(args) -> int:
    config = pipeline.SearchConfig(
        mode=pipeline.SearchMode(args.mode),
        metric=DistanceMetric(args.metric) if args.metric else None,
        method=BinarizationMethod(args.method) if args.method else None,
        n_candidates=args.n,
        n_pca=args.n_pca,
    )
    config.validate()

    t0 = time.perf_counter()
    train = store.load_features(args.train)
    test = store.load_features(args.test)
    train_labels = store.load_labels(args.train_labels)
    test_labels = store.load_labels(args.test_labels)
    if len(train_labels) != train.rows:
        raise ConfigError(
            f"{len(train_labels)} train labels for {train.rows} train rows"
        )
    if len(test_labels) != test.rows:
        raise ConfigError(f"{len(test_labels)} test labels for {test.rows} test rows")
    t_load = time.perf_counter() - t0

    t0 = time.perf_counter()
    results = pipeline.run_search(train, test, config)
    t_search = time.perf_counter() - t0

    retrieved = metrics.labels_from_results(results, train_labels)
    evaluation = metrics.evaluate(test_labels, retrieved)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    results_path = out / "results.txt"
    report.write_results(results, results_path)
    (out / "report.kv").write_text(evaluation.to_kv())
    (out / "report.txt").write_text(evaluation.to_text())

    outputs = {
        "results": results_path,
        "report_kv": out / "report.kv",
        "report_text": out / "report.txt",
    }
    if not args.no_figures:
        for fig_path in report.render_figures(results, evaluation, out):
            outputs[fig_path.stem] = fig_path
    report.write_manifest(
        out / "manifest.json",
        config,
        inputs={
            "train": args.train,
            "test": args.test,
            "train_labels": args.train_labels,
            "test_labels": args.test_labels,
        },
        outputs=outputs,
        timings={"load": t_load, "search": t_search},
    )
    print(
        f"eta_p={evaluation.eta_p:.4f} eta_w={evaluation.eta_w:.4f} "
        f"eta_total={evaluation.eta_total:.4f}"
    )
    return 0


_COMMANDS = {
    "synth": _cmd_synth,
    "binarize": _cmd_binarize,
    "pca": _cmd_pca,
    "search": _cmd_search,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DeepBarcodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
