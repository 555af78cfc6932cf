"""Shared fixtures: procedural sprites, clip fixtures, acceptance reporting."""

from __future__ import annotations

import numpy as np
import pytest

from alphamotion.frames import RgbaClip, RgbaFrame
from alphamotion.io import save_clip, save_frame_png
from PIL import Image

# Populated by tests/test_acceptance.py; printed after the run so the
# per-criterion lines survive pytest's output capture.
ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        suffix = f" ({detail})" if detail and not ok else ""
        terminalreporter.write_line(f"  {status} {name}{suffix}")


def disc_sprite(size: int, color=(0.9, 0.3, 0.1), hard: bool = True) -> RgbaFrame:
    """Opaque disc on transparency; hard edge by default."""
    data = np.zeros((size, size, 4), dtype=np.float32)
    yy, xx = np.mgrid[0:size, 0:size]
    r = np.hypot(yy - (size - 1) / 2, xx - (size - 1) / 2)
    limit = size / 2 - 1.5
    if hard:
        alpha = (r < limit).astype(np.float32)
    else:
        alpha = np.clip((limit - r) / 4.0 + 0.5, 0.0, 1.0).astype(np.float32)
    data[:, :, 0] = color[0]
    data[:, :, 1] = color[1]
    data[:, :, 2] = color[2]
    data[:, :, 3] = alpha
    data[:, :, :3] *= (alpha > 0)[:, :, None]
    return RgbaFrame(data)


def square_sprite(size: int, color=(0.2, 0.6, 0.9), margin: int = 4) -> RgbaFrame:
    data = np.zeros((size, size, 4), dtype=np.float32)
    data[margin : size - margin, margin : size - margin] = [*color, 1.0]
    return RgbaFrame(data)


@pytest.fixture(scope="session")
def sprite_dir(tmp_path_factory):
    """Directory of mixed sprite PNGs for CLI and dataset runs."""
    root = tmp_path_factory.mktemp("sprites")
    rng = np.random.default_rng(99)
    for i in range(6):
        size = int(rng.integers(20, 44))
        color = tuple(float(c) for c in rng.random(3))
        sprite = disc_sprite(size, color) if i % 2 == 0 else square_sprite(size, color)
        save_frame_png(sprite, root / f"sprite_{i}.png")
    return root


def moving_square_frames(
    count: int, size: int = 64, step: int = 3, square: int = 10
) -> tuple[list[RgbaFrame], list[np.ndarray]]:
    """RGB frames plus masks of a square translating `step` px/frame along x."""
    rgbs, masks = [], []
    for k in range(count):
        rgb = np.zeros((size, size, 4), dtype=np.float32)
        rgb[:, :, :3] = 0.05
        rgb[:, :, 3] = 1.0
        mask = np.zeros((size, size), dtype=np.float32)
        x0 = 4 + k * step
        rgb[20 : 20 + square, x0 : x0 + square, :3] = [0.8, 0.7, 0.2]
        mask[20 : 20 + square, x0 : x0 + square] = 1.0
        rgbs.append(RgbaFrame(rgb))
        masks.append(mask)
    return rgbs, masks


def write_foreground_fixture(base, count: int = 5, step: int = 3):
    """On-disk rgb/ and mask/ frame directories; returns the two paths."""
    rgb_dir = base / "rgb"
    mask_dir = base / "mask"
    rgb_dir.mkdir(parents=True)
    mask_dir.mkdir(parents=True)
    rgbs, masks = moving_square_frames(count, step=step)
    for i, (frame, mask) in enumerate(zip(rgbs, masks)):
        save_frame_png(frame, rgb_dir / f"frame_{i:04d}.png")
        Image.fromarray((mask * 255).astype(np.uint8), mode="L").save(
            mask_dir / f"frame_{i:04d}.png"
        )
    return rgb_dir, mask_dir


def make_clip(frame_count: int = 4, size: int = 48, step: int = 2) -> RgbaClip:
    """Small moving-disc clip used by dataset and io tests."""
    sprite = disc_sprite(16)
    frames = []
    for k in range(frame_count):
        canvas = np.zeros((size, size, 4), dtype=np.float32)
        x0 = 2 + k * step
        canvas[16:32, x0 : x0 + 16] = sprite.data
        frames.append(RgbaFrame(canvas))
    return RgbaClip(frames=tuple(frames), fps=8.0)


def write_clip_fixture(base, name: str = "clip_a", frame_count: int = 4):
    directory = base / name
    save_clip(make_clip(frame_count), directory)
    return directory
