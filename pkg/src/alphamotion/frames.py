"""RGBA raster model: frames, clips, compositing, masking, and edge scoring.

Frames store straight (non-premultiplied) alpha as float32 in [0, 1].
Operations that mix color across alpha boundaries convert to premultiplied
internally so transparent pixels never bleed color.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SizeMismatchError

# A hard transparent-to-opaque step between adjacent pixels measures 1.0 on
# the smoothing-normalized 3x3 gradient below; semi-transparent pixels whose
# gradient exceeds half a hard step count as jagged boundary.
HARD_EDGE_THRESHOLD = 0.5


def _as_rgba_array(data: np.ndarray) -> np.ndarray:
    arr = np.asarray(data, dtype=np.float32)
    if arr.ndim != 3 or arr.shape[2] != 4:
        raise ValueError(f"expected (h, w, 4) array, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"frame dimensions must be positive, got {arr.shape[:2]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("frame contains non-finite values")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise ValueError("channel values must lie in [0, 1]")
    return arr


@dataclass(frozen=True)
class RgbaFrame:
    """One straight-alpha raster, shape (height, width, 4), values in [0, 1]."""

    data: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_rgba_array(self.data)
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def rgb(self) -> np.ndarray:
        return self.data[:, :, :3]

    @property
    def alpha(self) -> np.ndarray:
        return self.data[:, :, 3]

    def premultiplied(self) -> np.ndarray:
        """Return (h, w, 4) float64 with rgb scaled by alpha."""
        out = self.data.astype(np.float64)
        out[:, :, :3] *= out[:, :, 3:4]
        return out

    @classmethod
    def from_premultiplied(cls, premult: np.ndarray, eps: float = 1e-8) -> "RgbaFrame":
        alpha = premult[:, :, 3:4]
        rgb = np.where(alpha > eps, premult[:, :, :3] / np.maximum(alpha, eps), 0.0)
        out = np.concatenate([rgb, alpha], axis=2)
        return cls(np.clip(out, 0.0, 1.0).astype(np.float32))

    @classmethod
    def solid(cls, width: int, height: int, rgba: tuple[float, float, float, float]) -> "RgbaFrame":
        data = np.empty((height, width, 4), dtype=np.float32)
        data[:] = rgba
        return cls(data)

    @classmethod
    def transparent(cls, width: int, height: int) -> "RgbaFrame":
        return cls(np.zeros((height, width, 4), dtype=np.float32))


@dataclass(frozen=True)
class RgbaClip:
    """Fixed-rate sequence of same-sized frames."""

    frames: tuple[RgbaFrame, ...]
    fps: float = 8.0

    def __post_init__(self) -> None:
        frames = tuple(self.frames)
        if len(frames) < 1:
            raise ValueError("clip needs at least one frame")
        if self.fps <= 0:
            raise ValueError(f"fps must be positive, got {self.fps}")
        w, h = frames[0].width, frames[0].height
        for i, f in enumerate(frames):
            if f.width != w or f.height != h:
                raise SizeMismatchError(
                    f"frame {i} is {f.width}x{f.height}, expected {w}x{h}"
                )
        object.__setattr__(self, "frames", frames)

    @property
    def frame_count(self) -> int:
        return len(self.frames)

    @property
    def width(self) -> int:
        return self.frames[0].width

    @property
    def height(self) -> int:
        return self.frames[0].height


def _require_same_size(a: RgbaFrame, b_shape: tuple[int, int], what: str) -> None:
    if (a.height, a.width) != b_shape:
        raise SizeMismatchError(
            f"{what}: {a.width}x{a.height} vs {b_shape[1]}x{b_shape[0]}"
        )


def composite_over(fg: RgbaFrame, bg: RgbaFrame) -> RgbaFrame:
    """Porter-Duff OVER of fg on bg, both straight alpha.

    out_a = fg_a + bg_a * (1 - fg_a); color blends in premultiplied space and
    is defined as 0 where out_a = 0.
    """
    _require_same_size(fg, (bg.height, bg.width), "composite_over size mismatch")
    fp = fg.premultiplied()
    bp = bg.premultiplied()
    out = fp + bp * (1.0 - fp[:, :, 3:4])
    return RgbaFrame.from_premultiplied(out)


def apply_mask(rgb: RgbaFrame, mask: np.ndarray) -> RgbaFrame:
    """Replace the alpha channel with a single-channel mask in [0, 1]."""
    mask = np.asarray(mask, dtype=np.float32)
    if mask.ndim != 2:
        raise ValueError(f"mask must be 2-D, got shape {mask.shape}")
    _require_same_size(rgb, mask.shape, "apply_mask size mismatch")
    if mask.min() < 0.0 or mask.max() > 1.0:
        raise ValueError("mask values must lie in [0, 1]")
    out = rgb.data.copy()
    out[:, :, 3] = mask
    return RgbaFrame(out)


def _alpha_gradient_magnitude(alpha: np.ndarray) -> np.ndarray:
    """3x3 Sobel gradient magnitude, scaled so a hard unit step measures 1.0."""
    padded = np.pad(alpha.astype(np.float64), 1, mode="edge")
    n = padded[:-2, 1:-1]
    s = padded[2:, 1:-1]
    w = padded[1:-1, :-2]
    e = padded[1:-1, 2:]
    nw = padded[:-2, :-2]
    ne = padded[:-2, 2:]
    sw = padded[2:, :-2]
    se = padded[2:, 2:]
    gx = (ne + 2.0 * e + se) - (nw + 2.0 * w + sw)
    gy = (sw + 2.0 * s + se) - (nw + 2.0 * n + ne)
    return np.hypot(gx, gy) / 4.0


def edge_quality(frame: RgbaFrame) -> float:
    """Score the smoothness of the alpha boundary in [0, 1].

    1 - (fraction of semi-transparent pixels whose 3x3 alpha gradient exceeds
    the hard-step threshold). A frame with no semi-transparent pixels scores
    1.0 by definition.
    """
    alpha = frame.alpha
    semi = (alpha > 0.0) & (alpha < 1.0)
    total = int(semi.sum())
    if total == 0:
        return 1.0
    grad = _alpha_gradient_magnitude(alpha)
    hard = int((grad[semi] > HARD_EDGE_THRESHOLD).sum())
    return 1.0 - hard / total


def alpha_centroid(frame: RgbaFrame) -> tuple[float, float]:
    """Alpha-weighted centroid (x, y); raises on fully transparent frames."""
    alpha = frame.alpha.astype(np.float64)
    mass = alpha.sum()
    if mass <= 0.0:
        raise ValueError("centroid undefined for a fully transparent frame")
    ys, xs = np.mgrid[0 : frame.height, 0 : frame.width]
    return float((alpha * xs).sum() / mass), float((alpha * ys).sum() / mass)
