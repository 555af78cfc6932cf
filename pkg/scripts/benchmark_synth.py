#!/usr/bin/env python3
"""Time clip synthesis and the forward-noise variance sweep.

Reports per-clip synthesis cost at the default 256x256x16 settings and the
wall time for one full variance check over a 1000-step schedule, the two
paths with runtime budgets.
"""

from __future__ import annotations

import argparse
import sys
import tempfile
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from alphamotion.dataset import Sprite, generate_synthetic
from alphamotion.frames import RgbaFrame
from alphamotion.videomath import forward_noise, make_schedule


def bench_synthesis(count: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    sprites = []
    for i in range(4):
        size = int(rng.integers(24, 48))
        data = np.zeros((size, size, 4), dtype=np.float32)
        yy, xx = np.mgrid[0:size, 0:size]
        alpha = (np.hypot(yy - size / 2, xx - size / 2) < size / 2 - 1).astype(np.float32)
        data[:, :, :3] = rng.random(3).astype(np.float32) * alpha[:, :, None]
        data[:, :, 3] = alpha
        sprites.append(Sprite(class_name=f"bench_{i}", frame=RgbaFrame(data)))
    with tempfile.TemporaryDirectory() as tmp:
        start = time.perf_counter()
        entries = generate_synthetic(sprites, count=count, seed=seed, root=tmp)
        elapsed = time.perf_counter() - start
    print(
        f"synthesis: {len(entries)} clips (256x256, 16 frames) in {elapsed:.2f}s "
        f"({elapsed / max(len(entries), 1) * 1000:.0f} ms/clip)"
    )


def bench_variance_sweep() -> None:
    schedule = make_schedule(1000, 1e-4, 0.02)
    rng = np.random.default_rng(0)
    shape = (1, 4, 16, 125, 125)
    z0 = rng.standard_normal(shape).astype(np.float32)
    eps = rng.standard_normal(shape).astype(np.float32)
    start = time.perf_counter()
    worst = 0.0
    for t in range(1, schedule.timesteps + 1):
        v = float(np.var(forward_noise(z0, t, eps, schedule)))
        worst = max(worst, abs(v - 1.0))
    elapsed = time.perf_counter() - start
    print(
        f"variance sweep: 1000 steps over {np.prod(shape):,} elements in "
        f"{elapsed:.2f}s, worst |var-1| = {worst:.5f}"
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=100, help="clips to synthesize")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    bench_synthesis(args.count, args.seed)
    bench_variance_sweep()
    return 0


if __name__ == "__main__":
    sys.exit(main())
