"""PNG and clip-directory persistence.

Clips live on disk as zero-padded PNG sequences (frame_0000.png ...) next to
a one-line JSON sidecar named `meta` holding fps, frame_count, width, height.
Quantization to 8 bits happens only here; everything upstream is float.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import ClipFormatError
from .frames import RgbaClip, RgbaFrame

FRAME_PATTERN = "frame_{:04d}.png"
META_NAME = "meta"


def to_uint8(data: np.ndarray) -> np.ndarray:
    return np.clip(np.round(np.asarray(data, dtype=np.float64) * 255.0), 0, 255).astype(np.uint8)


def from_uint8(data: np.ndarray) -> np.ndarray:
    return np.asarray(data, dtype=np.float32) / 255.0


def frame_to_png_bytes(frame: RgbaFrame) -> bytes:
    import io as _io

    buf = _io.BytesIO()
    Image.fromarray(to_uint8(frame.data), mode="RGBA").save(buf, format="PNG")
    return buf.getvalue()


def frame_from_png_bytes(blob: bytes) -> RgbaFrame:
    import io as _io

    with Image.open(_io.BytesIO(blob)) as img:
        arr = np.asarray(img.convert("RGBA"))
    return RgbaFrame(from_uint8(arr))


def save_frame_png(frame: RgbaFrame, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(frame_to_png_bytes(frame))


def load_frame_png(path: str | Path) -> RgbaFrame:
    return frame_from_png_bytes(Path(path).read_bytes())


def load_mask_png(path: str | Path) -> np.ndarray:
    """Load a single-channel mask PNG as float32 in [0, 1]."""
    with Image.open(path) as img:
        arr = np.asarray(img.convert("L"))
    return from_uint8(arr)


def clip_meta_line(clip: RgbaClip) -> str:
    """The exact sidecar line for a clip; shared so archives match the disk layout."""
    meta = {
        "fps": clip.fps,
        "frame_count": clip.frame_count,
        "width": clip.width,
        "height": clip.height,
    }
    return json.dumps(meta) + "\n"


def save_clip(clip: RgbaClip, directory: str | Path) -> Path:
    """Write frame_0000.png ... plus the `meta` sidecar; returns the directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for i, frame in enumerate(clip.frames):
        save_frame_png(frame, directory / FRAME_PATTERN.format(i))
    (directory / META_NAME).write_text(clip_meta_line(clip), encoding="utf-8")
    return directory


def load_clip(directory: str | Path) -> RgbaClip:
    """Load a PNG sequence directory; raises ClipFormatError on inconsistency."""
    directory = Path(directory)
    meta_path = directory / META_NAME
    if not meta_path.is_file():
        raise ClipFormatError(f"missing sidecar {meta_path}")
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ClipFormatError(f"malformed sidecar {meta_path}: {exc}") from exc
    try:
        count = int(meta["frame_count"])
        fps = float(meta["fps"])
        width = int(meta["width"])
        height = int(meta["height"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ClipFormatError(f"sidecar {meta_path} missing fields: {exc}") from exc

    frames = []
    for i in range(count):
        frame_path = directory / FRAME_PATTERN.format(i)
        if not frame_path.is_file():
            raise ClipFormatError(f"missing frame {frame_path}")
        frames.append(load_frame_png(frame_path))
    try:
        clip = RgbaClip(frames=tuple(frames), fps=fps)
    except ValueError as exc:
        raise ClipFormatError(f"inconsistent clip in {directory}: {exc}") from exc
    if clip.width != width or clip.height != height:
        raise ClipFormatError(
            f"{directory}: sidecar says {width}x{height}, frames are "
            f"{clip.width}x{clip.height}"
        )
    return clip
