"""Extract 4096-dim fully-connected activations from pretrained CNNs.

For AlexNet, VGG-16 and VGG-19 the deepest 4096-unit layer is the second
fully-connected layer of the classifier head; activations are taken after
its ReLU (post-nonlinearity, so exact zeros exist). Images are processed
in lexicographic order of their relative paths, so reruns produce
byte-identical output.

Output is the DFT1 feature format consumed by the retrieval tooling
(magic "DFT1", rows u32 LE, cols u32 LE, float32 LE row-major) plus a
plain-text label sidecar with one class id per line. Class ids are
assigned from the sorted set of immediate parent directory names.
"""

from __future__ import annotations

import struct
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch
from PIL import Image
from torchvision import models, transforms

FEATURE_DIM = 4096
IMAGE_SUFFIXES = {".jpg", ".jpeg", ".png", ".bmp", ".tif", ".tiff"}

NETWORKS = {
    "alexnet": (models.alexnet, models.AlexNet_Weights.IMAGENET1K_V1),
    "vgg16": (models.vgg16, models.VGG16_Weights.IMAGENET1K_V1),
    "vgg19": (models.vgg19, models.VGG19_Weights.IMAGENET1K_V1),
}

# canonical ImageNet preprocessing published with the pretrained weights
PREPROCESS = transforms.Compose(
    [
        transforms.Resize(256),
        transforms.CenterCrop(224),
        transforms.ToTensor(),
        transforms.Normalize(
            mean=[0.485, 0.456, 0.406], std=[0.229, 0.224, 0.225]
        ),
    ]
)


@dataclass(frozen=True)
class ExtractorConfig:
    network: str
    input_dir: Path
    output: Path
    pretrained: bool = True
    seed: int = 0
    batch_size: int = 8


def build_model(network: str, pretrained: bool, seed: int) -> torch.nn.Module:
    """Assemble the network truncated after the second FC layer's ReLU.

    With pretrained=False the weights are randomly initialized from a
    fixed torch seed; output is still deterministic, just not meaningful
    as image features (used where the published weights are unreachable).
    """
    if network not in NETWORKS:
        raise ValueError(f"unknown network {network!r}, expected one of {sorted(NETWORKS)}")
    ctor, weights = NETWORKS[network]
    if pretrained:
        base = ctor(weights=weights)
    else:
        torch.manual_seed(seed)
        base = ctor(weights=None)
    # drop the final 1000-way classification layer; the head now ends at
    # the 4096-unit layer (dropout layers are identity in eval mode)
    head = torch.nn.Sequential(*list(base.classifier.children())[:-1])
    model = torch.nn.Sequential(
        base.features, base.avgpool, torch.nn.Flatten(1), head
    )
    model.eval()
    return model


def list_images(input_dir: Path) -> list[Path]:
    return sorted(
        (p for p in input_dir.rglob("*")
         if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES),
        key=lambda p: p.relative_to(input_dir).as_posix(),
    )


def write_feature_file(features: np.ndarray, path: Path) -> None:
    rows, cols = features.shape
    header = struct.pack("<4sII", b"DFT1", rows, cols)
    path.write_bytes(header + features.astype("<f4").tobytes())


def extract(config: ExtractorConfig) -> tuple[int, int]:
    """Run all images through the network; returns (written, skipped)."""
    paths = list_images(config.input_dir)
    if not paths:
        raise RuntimeError(f"no image files under {config.input_dir}")

    model = build_model(config.network, config.pretrained, config.seed)

    rows: list[np.ndarray] = []
    kept: list[Path] = []
    skipped: list[tuple[Path, str]] = []
    batch: list[torch.Tensor] = []
    batch_paths: list[Path] = []

    def flush():
        if not batch:
            return
        with torch.no_grad():
            out = model(torch.stack(batch)).numpy()
        rows.extend(out.astype(np.float32))
        kept.extend(batch_paths)
        batch.clear()
        batch_paths.clear()

    for path in paths:
        try:
            with Image.open(path) as img:
                tensor = PREPROCESS(img.convert("RGB"))
        except Exception as exc:
            print(f"warning: skipping {path}: {exc}", file=sys.stderr)
            skipped.append((path, str(exc)))
            continue
        batch.append(tensor)
        batch_paths.append(path)
        if len(batch) >= config.batch_size:
            flush()
    flush()

    if not kept:
        raise RuntimeError("no image could be read; nothing to write")

    features = np.stack(rows)
    assert features.shape[1] == FEATURE_DIM
    write_feature_file(features, config.output)

    class_names = sorted({p.parent.relative_to(config.input_dir).as_posix()
                          for p in kept})
    class_ids = {name: i for i, name in enumerate(class_names)}
    labels = [class_ids[p.parent.relative_to(config.input_dir).as_posix()]
              for p in kept]
    label_path = config.output.with_suffix(config.output.suffix + ".labels")
    label_path.write_text("".join(f"{x}\n" for x in labels))

    if skipped:
        skip_log = config.output.with_suffix(config.output.suffix + ".skipped")
        skip_log.write_text(
            "".join(f"{p}\t{reason}\n" for p, reason in skipped)
        )
    return len(kept), len(skipped)
