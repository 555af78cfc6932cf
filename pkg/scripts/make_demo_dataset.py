#!/usr/bin/env python3
"""Build a small self-contained demo dataset from procedural sprites.

Writes sprites, synthesized clips with control maps, one matted foreground
entry, and the merged manifest under the chosen root. Everything is seeded,
so rerunning with the same arguments reproduces the tree byte for byte.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np
from PIL import Image

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from alphamotion.dataset import (
    DatasetManifest,
    Sprite,
    generate_synthetic,
    ingest_foreground,
    write_manifest,
)
from alphamotion.frames import RgbaFrame
from alphamotion.io import save_frame_png


def disc_sprite(size: int, color: tuple[float, float, float]) -> RgbaFrame:
    data = np.zeros((size, size, 4), dtype=np.float32)
    yy, xx = np.mgrid[0:size, 0:size]
    radius = np.hypot(yy - (size - 1) / 2, xx - (size - 1) / 2)
    alpha = (radius < size / 2 - 1.5).astype(np.float32)
    data[:, :, :3] = np.asarray(color, dtype=np.float32) * alpha[:, :, None]
    data[:, :, 3] = alpha
    return RgbaFrame(data)


def write_sprites(directory: Path, seed: int) -> list[Sprite]:
    directory.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    names = ("ember", "orb", "shard", "wisp")
    sprites = []
    for name in names:
        size = int(rng.integers(24, 48))
        color = tuple(float(c) for c in rng.random(3))
        sprite = disc_sprite(size, color)
        save_frame_png(sprite, directory / f"{name}.png")
        sprites.append(Sprite(class_name=name, frame=sprite))
    return sprites


def write_foreground_sequence(base: Path, count: int = 6, step: int = 3) -> tuple[Path, Path]:
    rgb_dir, mask_dir = base / "rgb", base / "mask"
    rgb_dir.mkdir(parents=True, exist_ok=True)
    mask_dir.mkdir(parents=True, exist_ok=True)
    for k in range(count):
        rgb = np.full((64, 64, 4), [0.1, 0.1, 0.15, 1.0], dtype=np.float32)
        mask = np.zeros((64, 64), dtype=np.float32)
        x0 = 6 + k * step
        rgb[24:38, x0 : x0 + 14, :3] = [0.9, 0.6, 0.2]
        mask[24:38, x0 : x0 + 14] = 1.0
        save_frame_png(RgbaFrame(rgb), rgb_dir / f"frame_{k:04d}.png")
        Image.fromarray((mask * 255).astype(np.uint8), mode="L").save(
            mask_dir / f"frame_{k:04d}.png"
        )
    return rgb_dir, mask_dir


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="demo_dataset", help="output root directory")
    parser.add_argument("--count", type=int, default=8, help="synthetic entries to generate")
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    root = Path(args.out)
    sprites = write_sprites(root / "sprites", args.seed)
    entries = generate_synthetic(
        sprites, count=args.count, seed=args.seed, root=root, canvas=(128, 128), frame_count=8
    )
    rgb_dir, mask_dir = write_foreground_sequence(root / "_foreground_src")
    fg_entry = ingest_foreground(rgb_dir, mask_dir, root, threshold=1.0, entry_id="demo_fg")
    if fg_entry is not None:
        entries.append(fg_entry)
    manifest = DatasetManifest(entries=tuple(entries), extra={"seed": args.seed})
    write_manifest(manifest, root / "manifest.jsonl")
    print(f"wrote {len(entries)} entries under {root} ({manifest.counts})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
