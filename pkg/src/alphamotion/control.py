"""Raster control maps: encode a motion spec as an arrow glyph, and decode back.

The glyph color carries the scale mode (green grow, blue stable, red shrink),
the arrow heading carries the direction, and the arrow length carries the
velocity through a clamped linear map. Rendering is binary coverage with no
anti-aliasing so every glyph pixel is the pure mode color and round trips
survive 8-bit quantization.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .errors import ControlDecodeError
from .frames import RgbaFrame
from .motion import HEADING_VECTORS, MotionSpec, snap_heading

MIN_CANVAS = 64
PX_PER_VELOCITY = 8.0
MIN_ARROW_LENGTH = 12.0
MAX_ARROW_FRACTION = 0.45
HEAD_LENGTH_FRACTION = 0.3
# Keeps the head visibly wider than the 1.5 px shaft at the 12 px minimum.
HEAD_HALFWIDTH_FRACTION = 0.25
DISC_RADIUS_FRACTION = 0.08

MODE_COLORS = {
    "grow": (0.0, 1.0, 0.0),
    "stable": (0.0, 0.0, 1.0),
    "shrink": (1.0, 0.0, 0.0),
}
_CHANNEL_MODES = ("shrink", "grow", "stable")  # dominant r / g / b

# Principal-axis eigenvalue ratio separating the disc glyph from arrows; the
# shortest arrow (12 px) already measures far above this.
_DISC_ECCENTRICITY = 2.0


@dataclass(frozen=True)
class ControlMap:
    """Rendered control raster plus the digest of the spec that produced it."""

    image: RgbaFrame
    spec_hash: str


@dataclass(frozen=True)
class DecodedControl:
    """The motion parameters recoverable from a control raster."""

    direction: str | None
    velocity: float
    scale_mode: str


def spec_digest(spec: MotionSpec) -> str:
    return hashlib.sha256(spec.to_json().encode("utf-8")).hexdigest()


def arrow_length(velocity: float, canvas: tuple[int, int]) -> float:
    """Clamped linear velocity-to-length map; part of the file format."""
    w, h = canvas
    return float(
        np.clip(velocity * PX_PER_VELOCITY, MIN_ARROW_LENGTH, MAX_ARROW_FRACTION * min(w, h))
    )


def length_to_velocity(length: float) -> float:
    """Inverse of the linear segment of arrow_length."""
    return length / PX_PER_VELOCITY


def render_control(spec: MotionSpec, canvas: tuple[int, int] = (256, 256)) -> ControlMap:
    """Render the control raster for a spec on a white opaque canvas."""
    w, h = canvas
    if w < MIN_CANVAS or h < MIN_CANVAS:
        raise ValueError(f"canvas must be at least {MIN_CANVAS}x{MIN_CANVAS}, got {w}x{h}")

    cx, cy = (w - 1) / 2.0, (h - 1) / 2.0
    ys, xs = np.mgrid[0:h, 0:w]
    rx = xs - cx
    ry = ys - cy

    if spec.direction is None:
        radius = DISC_RADIUS_FRACTION * min(w, h)
        glyph = rx * rx + ry * ry <= radius * radius
    else:
        ux, uy = HEADING_VECTORS[spec.direction]
        nx, ny = -uy, ux
        proj = rx * ux + ry * uy
        perp = np.abs(rx * nx + ry * ny)
        length = arrow_length(spec.velocity, canvas)
        head_len = HEAD_LENGTH_FRACTION * length
        shaft_halfwidth = max(1.5, 0.05 * length)
        shaft = (proj >= 0.0) & (proj <= length - head_len) & (perp <= shaft_halfwidth)
        taper = (length - proj) / head_len
        head = (proj >= length - head_len) & (proj <= length) & (
            perp <= HEAD_HALFWIDTH_FRACTION * length * taper
        )
        glyph = shaft | head

    data = np.ones((h, w, 4), dtype=np.float32)
    data[glyph, :3] = MODE_COLORS[spec.scale_mode]
    return ControlMap(image=RgbaFrame(data), spec_hash=spec_digest(spec))


def decode_control(control: ControlMap | RgbaFrame) -> DecodedControl:
    """Recover direction, velocity estimate, and scale mode from a control raster.

    Velocity is exact only on the linear segment of the length map; lengths at
    the clamp bounds decode to the clamp's linear preimage.
    """
    image = control.image if isinstance(control, ControlMap) else control
    rgb = image.rgb.astype(np.float64)
    glyph = np.any(np.abs(rgb - 1.0) > 1e-3, axis=2)
    if not glyph.any():
        raise ControlDecodeError("no glyph pixels found")

    mean_rgb = rgb[glyph].mean(axis=0)
    order = np.argsort(mean_rgb)
    if mean_rgb[order[2]] - mean_rgb[order[1]] < 1e-6:
        raise ControlDecodeError("ambiguous glyph hue, no dominant channel")
    scale_mode = _CHANNEL_MODES[order[2]]

    ys, xs = np.nonzero(glyph)
    px = xs.astype(np.float64)
    py = ys.astype(np.float64)
    px -= px.mean()
    py -= py.mean()
    cov = np.cov(np.stack([px, py]))
    evals, evecs = np.linalg.eigh(cov)
    if evals[1] < _DISC_ECCENTRICITY * max(evals[0], 1e-12):
        return DecodedControl(direction=None, velocity=0.0, scale_mode=scale_mode)

    axis = evecs[:, 1]
    along = px * axis[0] + py * axis[1]
    across = np.abs(px * axis[1] - py * axis[0])
    # A half-pixel slab at each longitudinal extreme isolates one pixel
    # column. The outermost rendered head column is under 0.75 px wide on any
    # grid parity, while the blunt tail keeps the full shaft width, so the
    # narrower extreme marks the tip.
    lead = across[along >= along.max() - 0.5]
    trail = across[along <= along.min() + 0.5]
    if float(lead.max()) > float(trail.max()):
        axis = -axis
        along = -along

    angle = math.degrees(math.atan2(-axis[1], axis[0]))
    direction = snap_heading(angle)
    extent = float(along.max() - along.min()) + 1.0  # pixel footprint
    return DecodedControl(
        direction=direction,
        velocity=length_to_velocity(extent),
        scale_mode=scale_mode,
    )
