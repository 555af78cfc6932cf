"""Parametric motion: trajectory specs, affine transforms, and alpha-aware warping.

Conventions: image coordinates have x growing right and y growing down, so
compass N is -y. Pixel centers sit at integer coordinates; the canvas center
is ((w-1)/2, (h-1)/2). Translation accumulates linearly per frame, scale
geometrically, rotation linearly in degrees. Frame 0 is always the identity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import PlacementError
from .frames import RgbaClip, RgbaFrame, alpha_centroid

HEADINGS = ("E", "NE", "N", "NW", "W", "SW", "S", "SE")

_DIAG = math.sqrt(0.5)
HEADING_VECTORS: dict[str, tuple[float, float]] = {
    "E": (1.0, 0.0),
    "NE": (_DIAG, -_DIAG),
    "N": (0.0, -1.0),
    "NW": (-_DIAG, -_DIAG),
    "W": (-1.0, 0.0),
    "SW": (-_DIAG, _DIAG),
    "S": (0.0, 1.0),
    "SE": (_DIAG, _DIAG),
}

SCALE_MODES = ("grow", "stable", "shrink")


def snap_heading(angle_deg: float) -> str:
    """Snap a counterclockwise-from-East angle to the nearest of 8 headings.

    Exact midpoints (22.5 deg off) resolve to whichever candidate heading has
    the smaller canonical angle measured counterclockwise from East.
    """
    angle = angle_deg % 360.0
    lo = math.floor(angle / 45.0)
    hi = lo + 1
    d_lo = angle - lo * 45.0
    d_hi = hi * 45.0 - angle
    if d_lo < d_hi:
        idx = lo
    elif d_hi < d_lo:
        idx = hi
    else:
        idx = min(lo % 8, hi % 8)
    return HEADINGS[idx % 8]


def heading_angle(direction: str) -> float:
    """Canonical counterclockwise-from-East angle of a heading, in degrees."""
    return HEADINGS.index(direction) * 45.0


@dataclass(frozen=True)
class MotionSpec:
    """Parametric trajectory for one clip.

    direction None means no translation (velocity must then be 0). scale_rate
    is the per-frame multiplicative factor and must agree with scale_mode:
    >1 for grow, =1 for stable, <1 for shrink.
    """

    direction: str | None = None
    velocity: float = 0.0
    scale_mode: str = "stable"
    scale_rate: float = 1.0
    rotation_rate: float = 0.0
    frame_count: int = 16

    def __post_init__(self) -> None:
        if self.direction is not None and self.direction not in HEADINGS:
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.velocity < 0:
            raise ValueError(f"velocity must be >= 0, got {self.velocity}")
        if self.direction is None and self.velocity != 0:
            raise ValueError("direction None requires velocity 0")
        if self.scale_mode not in SCALE_MODES:
            raise ValueError(f"unknown scale_mode {self.scale_mode!r}")
        if self.scale_rate <= 0:
            raise ValueError(f"scale_rate must be > 0, got {self.scale_rate}")
        if self.scale_mode == "grow" and not self.scale_rate > 1:
            raise ValueError("grow requires scale_rate > 1")
        if self.scale_mode == "stable" and self.scale_rate != 1:
            raise ValueError("stable requires scale_rate = 1")
        if self.scale_mode == "shrink" and not self.scale_rate < 1:
            raise ValueError("shrink requires scale_rate < 1")
        if not isinstance(self.frame_count, int) or self.frame_count < 1:
            raise ValueError(f"frame_count must be an integer >= 1, got {self.frame_count}")

    def to_record(self) -> dict:
        return {
            "direction": self.direction,
            "velocity": self.velocity,
            "scale_mode": self.scale_mode,
            "scale_rate": self.scale_rate,
            "rotation_rate": self.rotation_rate,
            "frame_count": self.frame_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_record(cls, record: dict) -> "MotionSpec":
        known = {"direction", "velocity", "scale_mode", "scale_rate", "rotation_rate", "frame_count"}
        unknown = set(record) - known
        if unknown:
            raise ValueError(f"unknown motion spec fields: {sorted(unknown)}")
        return cls(
            direction=record.get("direction"),
            velocity=float(record.get("velocity", 0.0)),
            scale_mode=record.get("scale_mode", "stable"),
            scale_rate=float(record.get("scale_rate", 1.0)),
            rotation_rate=float(record.get("rotation_rate", 0.0)),
            frame_count=int(record.get("frame_count", 16)),
        )

    @classmethod
    def from_json(cls, text: str) -> "MotionSpec":
        record = json.loads(text)
        if not isinstance(record, dict):
            raise ValueError("motion spec record must be a JSON object")
        return cls.from_record(record)


@dataclass(frozen=True)
class AffineTransform:
    """2x3 matrix mapping output pixel coordinates to source coordinates."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.shape != (2, 3):
            raise ValueError(f"affine matrix must be 2x3, got {m.shape}")
        if abs(np.linalg.det(m[:, :2])) <= 1e-9:
            raise ValueError("affine linear part is not invertible")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "AffineTransform":
        return cls(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))

    def apply(self, points: np.ndarray) -> np.ndarray:
        """Map (n, 2) output-space points to source-space points."""
        pts = np.asarray(points, dtype=np.float64)
        return pts @ self.matrix[:, :2].T + self.matrix[:, 2]

    def integer_translation(self) -> tuple[int, int] | None:
        """The (dx, dy) source offset if this is a pure integer translation."""
        m = self.matrix
        if np.max(np.abs(m[:, :2] - np.eye(2))) > 1e-12:
            return None
        tx, ty = m[0, 2], m[1, 2]
        rx, ry = round(tx), round(ty)
        if abs(tx - rx) > 1e-9 or abs(ty - ry) > 1e-9:
            return None
        return int(rx), int(ry)


def trajectory(spec: MotionSpec, frame_index: int, canvas: tuple[int, int]) -> AffineTransform:
    """Inverse-mapping transform for frame k of a spec on a (w, h) canvas.

    Forward motion composes, about the canvas center: rotation by
    k*rotation_rate degrees, uniform scale by scale_rate**k, then translation
    by k*velocity along the heading. The returned matrix is the inverse map.
    """
    if not 0 <= frame_index < spec.frame_count:
        raise IndexError(
            f"frame index {frame_index} out of range for {spec.frame_count} frames"
        )
    w, h = canvas
    cx, cy = (w - 1) / 2.0, (h - 1) / 2.0
    k = frame_index

    theta = math.radians(k * spec.rotation_rate)
    scale = spec.scale_rate**k
    if spec.direction is None:
        tx = ty = 0.0
    else:
        ux, uy = HEADING_VECTORS[spec.direction]
        tx, ty = k * spec.velocity * ux, k * spec.velocity * uy

    # Positive rates turn content visually counterclockwise (toward -y);
    # the inverse map therefore rotates output coordinates the other way.
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    inv = np.array([[cos_t, -sin_t], [sin_t, cos_t]]) / scale
    offset = np.array([cx, cy]) - inv @ np.array([cx + tx, cy + ty])
    return AffineTransform(np.column_stack([inv, offset]))


def warp(frame: RgbaFrame, transform: AffineTransform) -> RgbaFrame:
    """Resample a frame through an inverse-mapping affine transform.

    Bilinear interpolation runs on premultiplied channels; samples outside the
    source contribute full transparency. Pure integer translations take a
    shift path so they stay bit-exact.
    """
    h, w = frame.height, frame.width
    shift = transform.integer_translation()
    if shift is not None:
        return _shift_frame(frame, shift)

    m = transform.matrix
    ys, xs = np.mgrid[0:h, 0:w]
    sx = m[0, 0] * xs + m[0, 1] * ys + m[0, 2]
    sy = m[1, 0] * xs + m[1, 1] * ys + m[1, 2]

    x0 = np.floor(sx).astype(np.int64)
    y0 = np.floor(sy).astype(np.int64)
    fx = sx - x0
    fy = sy - y0

    premult = frame.premultiplied().reshape(-1, 4)

    def corner(yy: np.ndarray, xx: np.ndarray, weight: np.ndarray) -> np.ndarray:
        # Out-of-source samples are fully transparent: zeroing the weight is
        # exactly equivalent to gathering a zero pixel.
        valid = (xx >= 0) & (xx < w) & (yy >= 0) & (yy < h)
        idx = np.clip(yy, 0, h - 1) * w + np.clip(xx, 0, w - 1)
        vals = premult.take(idx.ravel(), axis=0).reshape(h, w, 4)
        return vals * (weight * valid)[:, :, None]

    x1, y1 = x0 + 1, y0 + 1
    acc = corner(y0, x0, (1.0 - fx) * (1.0 - fy))
    acc += corner(y0, x1, fx * (1.0 - fy))
    acc += corner(y1, x0, (1.0 - fx) * fy)
    acc += corner(y1, x1, fx * fy)
    return RgbaFrame.from_premultiplied(acc)


def _shift_frame(frame: RgbaFrame, source_offset: tuple[int, int]) -> RgbaFrame:
    """out[y, x] = src[y + dy, x + dx], transparent outside the source."""
    dx, dy = source_offset
    h, w = frame.height, frame.width
    out = np.zeros((h, w, 4), dtype=np.float32)
    src_x0, src_x1 = max(0, dx), min(w, w + dx)
    src_y0, src_y1 = max(0, dy), min(h, h + dy)
    if src_x0 < src_x1 and src_y0 < src_y1:
        out[src_y0 - dy : src_y1 - dy, src_x0 - dx : src_x1 - dx] = frame.data[
            src_y0:src_y1, src_x0:src_x1
        ]
    return RgbaFrame(out)


def place_centered(sprite: RgbaFrame, canvas: tuple[int, int]) -> RgbaFrame:
    """Sprite on a transparent canvas, top-left at ((w-sw)//2, (h-sh)//2)."""
    w, h = canvas
    if sprite.width > w or sprite.height > h:
        raise PlacementError(
            f"sprite {sprite.width}x{sprite.height} does not fit canvas {w}x{h}"
        )
    out = np.zeros((h, w, 4), dtype=np.float32)
    ox = (w - sprite.width) // 2
    oy = (h - sprite.height) // 2
    out[oy : oy + sprite.height, ox : ox + sprite.width] = sprite.data
    return RgbaFrame(out)


def synthesize_clip(
    sprite: RgbaFrame,
    spec: MotionSpec,
    canvas: tuple[int, int] = (256, 256),
    fps: float = 8.0,
) -> RgbaClip:
    """Animate a sprite along a motion spec; frame 0 is the centered placement."""
    base = place_centered(sprite, canvas)
    frames = [warp(base, trajectory(spec, k, canvas)) for k in range(spec.frame_count)]
    return RgbaClip(frames=tuple(frames), fps=fps)


def motion_magnitude(clip: RgbaClip) -> float:
    """Mean per-frame displacement of the alpha-weighted centroid, px/frame."""
    if clip.frame_count < 2:
        raise ValueError("motion magnitude needs at least 2 frames")
    centroids = [alpha_centroid(f) for f in clip.frames]
    steps = [
        math.hypot(bx - ax, by - ay)
        for (ax, ay), (bx, by) in zip(centroids, centroids[1:])
    ]
    return float(sum(steps) / len(steps))
