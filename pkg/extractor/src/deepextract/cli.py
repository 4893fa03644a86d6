"""CLI wrapper around the feature extractor."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .extract import NETWORKS, ExtractorConfig, extract


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="deepextract",
        description="Dump deepest fully-connected CNN activations to a "
        "DFT1 feature file with a label sidecar",
    )
    parser.add_argument("--network", choices=sorted(NETWORKS), required=True)
    parser.add_argument("--input", required=True, help="directory of image files")
    parser.add_argument("--output", required=True, help="DFT1 feature file to write")
    parser.add_argument(
        "--no-pretrained",
        action="store_true",
        help="use seeded random weights instead of the published ones "
        "(deterministic, for offline testing)",
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--batch-size", type=int, default=8)
    args = parser.parse_args(argv)

    config = ExtractorConfig(
        network=args.network,
        input_dir=Path(args.input),
        output=Path(args.output),
        pretrained=not args.no_pretrained,
        seed=args.seed,
        batch_size=args.batch_size,
    )
    try:
        written, skipped = extract(config)
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {written} rows to {config.output} ({skipped} skipped)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
