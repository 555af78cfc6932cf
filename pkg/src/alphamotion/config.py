"""Run configuration dataclasses and their file round trip."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

MAX_CANVAS_SIDE = 1024
MAX_FRAME_COUNT = 64
MAX_SPRITE_BYTES = 8 * 1024 * 1024


@dataclass(frozen=True)
class SpecDistribution:
    """Sampling ranges for randomly drawn motion specs.

    Velocities default to the span that stays invertible through the control
    map length clamp on a 256 canvas.
    """

    velocity_range: tuple[float, float] = (1.0, 8.0)
    direction_none_prob: float = 0.125
    grow_rate_range: tuple[float, float] = (1.01, 1.05)
    shrink_rate_range: tuple[float, float] = (0.95, 0.99)
    rotation_prob: float = 0.25
    rotation_rate_range: tuple[float, float] = (-5.0, 5.0)

    def __post_init__(self) -> None:
        lo, hi = self.velocity_range
        if not 0 <= lo <= hi:
            raise ValueError(f"bad velocity_range {self.velocity_range}")
        if not 0 <= self.direction_none_prob <= 1:
            raise ValueError(f"bad direction_none_prob {self.direction_none_prob}")
        if not 0 <= self.rotation_prob <= 1:
            raise ValueError(f"bad rotation_prob {self.rotation_prob}")
        g_lo, g_hi = self.grow_rate_range
        if not 1 < g_lo <= g_hi:
            raise ValueError(f"grow rates must exceed 1, got {self.grow_rate_range}")
        s_lo, s_hi = self.shrink_rate_range
        if not 0 < s_lo <= s_hi < 1:
            raise ValueError(f"shrink rates must sit in (0, 1), got {self.shrink_rate_range}")


@dataclass(frozen=True)
class RunConfig:
    """Operator-facing knobs shared by the CLI subcommands."""

    seed: int = 0
    canvas: tuple[int, int] = (256, 256)
    frame_count: int = 16
    fps: float = 8.0
    motion_threshold: float = 1.0
    output_root: str = "dataset"
    distribution: SpecDistribution = field(default_factory=SpecDistribution)

    def __post_init__(self) -> None:
        w, h = self.canvas
        if not (0 < w <= MAX_CANVAS_SIDE and 0 < h <= MAX_CANVAS_SIDE):
            raise ValueError(f"canvas {w}x{h} outside (0, {MAX_CANVAS_SIDE}]")
        if not 1 <= self.frame_count <= MAX_FRAME_COUNT:
            raise ValueError(f"frame_count {self.frame_count} outside [1, {MAX_FRAME_COUNT}]")
        if self.fps <= 0:
            raise ValueError(f"fps must be positive, got {self.fps}")
        if self.motion_threshold < 0:
            raise ValueError(f"motion_threshold must be >= 0, got {self.motion_threshold}")

    def to_record(self) -> dict:
        record = asdict(self)
        record["canvas"] = list(self.canvas)
        record["distribution"] = {
            k: list(v) if isinstance(v, tuple) else v
            for k, v in asdict(self.distribution).items()
        }
        return record

    @classmethod
    def from_record(cls, record: dict) -> "RunConfig":
        record = dict(record)
        known = {f.name for f in fields(cls)}
        unknown = set(record) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        if "canvas" in record:
            record["canvas"] = tuple(record["canvas"])
        if "distribution" in record and not isinstance(record["distribution"], SpecDistribution):
            dist = {
                k: tuple(v) if isinstance(v, list) else v
                for k, v in record["distribution"].items()
            }
            record["distribution"] = SpecDistribution(**dist)
        return cls(**record)

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        record = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(record, dict):
            raise ValueError(f"config file {path} must hold a JSON object")
        return cls.from_record(record)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_record(), indent=2) + "\n", encoding="utf-8")
