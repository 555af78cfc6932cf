"""Dataset assembly: source ingestion, seeded synthesis, and manifest files.

A dataset root holds one directory per entry (frame_0000.png ..., `meta`,
optionally control.png + control.spec) plus a line-delimited JSON manifest.
Generation is clock-free and splits the seed per entry, so identical inputs
always produce byte-identical trees.
"""

from __future__ import annotations

import json
import logging
import os
import random
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .captions import CaptionRecord, compose_caption, ingested_caption
from .config import SpecDistribution
from .control import render_control
from .errors import ClipFormatError, ManifestFormatError, PlacementError
from .frames import RgbaClip, RgbaFrame, apply_mask, edge_quality
from .io import load_clip, load_frame_png, load_mask_png, save_clip, save_frame_png
from .motion import HEADINGS, MotionSpec, motion_magnitude, synthesize_clip

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MANIFEST_NAME = "manifest.jsonl"
CONTROL_IMAGE_NAME = "control.png"
CONTROL_SPEC_NAME = "control.spec"

# Generated entries carry a fixed timestamp so repeated runs stay
# byte-identical; ingestion of external material uses the wall clock.
SYNTHETIC_CREATED_AT = "1970-01-01T00:00:00+00:00"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class Sprite:
    """A named transparent still used as synthesis input."""

    class_name: str
    frame: RgbaFrame


@dataclass(frozen=True)
class DatasetEntry:
    id: str
    source: str
    clip_path: str
    caption: CaptionRecord
    edge_score: float
    motion_score: float
    created_at: str
    control_path: str | None = None

    def __post_init__(self) -> None:
        if self.source == "synthetic" and self.control_path is None:
            raise ValueError(f"synthetic entry {self.id} must carry a control map")
        if not 0.0 <= self.edge_score <= 1.0:
            raise ValueError(f"edge_score {self.edge_score} outside [0, 1]")
        if self.motion_score < 0.0:
            raise ValueError(f"motion_score {self.motion_score} must be >= 0")

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "source": self.source,
            "clip_path": self.clip_path,
            "control_path": self.control_path,
            "caption": self.caption.to_record(),
            "edge_score": self.edge_score,
            "motion_score": self.motion_score,
            "created_at": self.created_at,
        }

    @classmethod
    def from_record(cls, record: dict) -> "DatasetEntry":
        return cls(
            id=record["id"],
            source=record["source"],
            clip_path=record["clip_path"],
            control_path=record.get("control_path"),
            caption=CaptionRecord.from_record(record["caption"]),
            edge_score=float(record["edge_score"]),
            motion_score=float(record["motion_score"]),
            created_at=record["created_at"],
        )


@dataclass(frozen=True)
class DatasetManifest:
    entries: tuple[DatasetEntry, ...] = ()
    schema_version: int = SCHEMA_VERSION
    extra: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        ids = [e.id for e in entries]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate entry ids: {dupes}")
        object.__setattr__(self, "entries", entries)

    @property
    def counts(self) -> dict[str, int]:
        counts = {"game_effect": 0, "foreground": 0, "synthetic": 0, "iterated": 0}
        for entry in self.entries:
            counts[entry.source] += 1
        return counts

    def extend(self, new_entries: list[DatasetEntry]) -> "DatasetManifest":
        return DatasetManifest(
            entries=self.entries + tuple(new_entries),
            schema_version=self.schema_version,
            extra=self.extra,
        )


def write_manifest(manifest: DatasetManifest, path: str | Path) -> None:
    """One header line (schema_version, counts) then one JSON line per entry."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = {
        "schema_version": manifest.schema_version,
        "counts": manifest.counts,
        "extra": manifest.extra,
    }
    lines = [json.dumps(header, sort_keys=True, separators=(",", ":"))]
    lines += [
        json.dumps(e.to_record(), sort_keys=True, separators=(",", ":"))
        for e in manifest.entries
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_manifest(path: str | Path) -> DatasetManifest:
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        lines = [line for line in fh.read().splitlines() if line.strip()]
    if not lines:
        raise ManifestFormatError(f"{path}: empty manifest file")
    try:
        header = json.loads(lines[0])
        records = [json.loads(line) for line in lines[1:]]
    except json.JSONDecodeError as exc:
        raise ManifestFormatError(f"{path}: malformed line: {exc}") from exc
    version = header.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ManifestFormatError(
            f"{path}: schema_version {version} unsupported, expected {SCHEMA_VERSION}"
        )
    try:
        entries = tuple(DatasetEntry.from_record(r) for r in records)
        manifest = DatasetManifest(
            entries=entries, schema_version=version, extra=header.get("extra", {})
        )
    except (KeyError, ValueError) as exc:
        raise ManifestFormatError(f"{path}: bad entry record: {exc}") from exc
    if header.get("counts") != manifest.counts:
        raise ManifestFormatError(
            f"{path}: header counts {header.get('counts')} disagree with "
            f"entry tally {manifest.counts}"
        )
    return manifest


def _clip_scores(clip: RgbaClip) -> tuple[float, float]:
    edge = float(sum(edge_quality(f) for f in clip.frames) / clip.frame_count)
    motion = motion_magnitude(clip)
    return edge, motion


def _rel_to_root(path: Path, root: Path) -> str:
    return os.path.relpath(path, root).replace(os.sep, "/")


def ingest_game_effect(source_dir: str | Path, root: str | Path) -> list[DatasetEntry]:
    """Index a directory of curated effect clips; invalid clips are skipped."""
    source_dir = Path(source_dir)
    root = Path(root)
    if not source_dir.is_dir():
        raise IOError(f"not a readable directory: {source_dir}")
    entries = []
    for clip_dir in sorted(p for p in source_dir.iterdir() if p.is_dir()):
        try:
            clip = load_clip(clip_dir)
            edge, motion = _clip_scores(clip)
        except (ClipFormatError, ValueError) as exc:
            logger.warning("skipping %s: %s", clip_dir, exc)
            continue
        entries.append(
            DatasetEntry(
                id=clip_dir.name,
                source="game_effect",
                clip_path=_rel_to_root(clip_dir, root),
                caption=ingested_caption(clip_dir.name, "game_effect"),
                edge_score=edge,
                motion_score=motion,
                created_at=_now(),
            )
        )
    return entries


def _load_sequence(directory: Path, loader, what: str) -> list:
    files = sorted(directory.glob("*.png"))
    if not files:
        raise IOError(f"no PNG frames in {what} directory {directory}")
    return [loader(p) for p in files]


def ingest_foreground(
    rgb_dir: str | Path,
    mask_dir: str | Path,
    root: str | Path,
    threshold: float = 1.0,
    fps: float = 8.0,
    entry_id: str | None = None,
) -> DatasetEntry | None:
    """Matte an RGB sequence with its masks; keep it only if it really moves.

    Returns None when the alpha-centroid displacement falls below the
    threshold (the clip is filtered, not an error).
    """
    rgb_dir = Path(rgb_dir)
    mask_dir = Path(mask_dir)
    root = Path(root)
    rgb_frames = _load_sequence(rgb_dir, load_frame_png, "rgb")
    masks = _load_sequence(mask_dir, load_mask_png, "mask")
    if len(rgb_frames) != len(masks):
        raise ValueError(
            f"frame-count mismatch: {len(rgb_frames)} rgb vs {len(masks)} masks"
        )
    matted = [apply_mask(f, m) for f, m in zip(rgb_frames, masks)]
    clip = RgbaClip(frames=tuple(matted), fps=fps)
    edge, motion = _clip_scores(clip)
    if motion < threshold:
        logger.info("filtered %s: motion %.3f below threshold %.3f", rgb_dir, motion, threshold)
        return None
    entry_id = entry_id or rgb_dir.name
    clip_dir = root / entry_id
    save_clip(clip, clip_dir)
    return DatasetEntry(
        id=entry_id,
        source="foreground",
        clip_path=_rel_to_root(clip_dir, root),
        caption=ingested_caption(entry_id, "foreground"),
        edge_score=edge,
        motion_score=motion,
        created_at=_now(),
    )


def draw_motion_spec(rng: random.Random, dist: SpecDistribution, frame_count: int) -> MotionSpec:
    """Sample one spec; the draw order is part of the determinism contract."""
    if rng.random() < dist.direction_none_prob:
        direction, velocity = None, 0.0
    else:
        direction = rng.choice(HEADINGS)
        velocity = rng.uniform(*dist.velocity_range)
    scale_mode = rng.choice(("grow", "stable", "shrink"))
    if scale_mode == "grow":
        scale_rate = rng.uniform(*dist.grow_rate_range)
    elif scale_mode == "shrink":
        scale_rate = rng.uniform(*dist.shrink_rate_range)
    else:
        scale_rate = 1.0
    rotation_rate = 0.0
    if rng.random() < dist.rotation_prob:
        rotation_rate = rng.uniform(*dist.rotation_rate_range)
    return MotionSpec(
        direction=direction,
        velocity=velocity,
        scale_mode=scale_mode,
        scale_rate=scale_rate,
        rotation_rate=rotation_rate,
        frame_count=frame_count,
    )


def generate_synthetic(
    sprites: list[Sprite],
    count: int,
    seed: int,
    root: str | Path,
    dist: SpecDistribution | None = None,
    canvas: tuple[int, int] = (256, 256),
    frame_count: int = 16,
    fps: float = 8.0,
) -> list[DatasetEntry]:
    """Synthesize `count` moving-sprite entries under `root`, fully seeded.

    Entry i draws from seed XOR i, so any subset can be regenerated in
    parallel. Sprites that cannot be animated are skipped with a logged
    reason; the returned list then falls short of `count`.
    """
    if not sprites:
        raise ValueError("need at least one sprite")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    dist = dist or SpecDistribution()
    root = Path(root)
    entries = []
    for i in range(count):
        rng = random.Random(seed ^ i)
        sprite = sprites[rng.randrange(len(sprites))]
        spec = draw_motion_spec(rng, dist, frame_count)
        entry_id = f"synthetic_{i:05d}"
        try:
            clip = synthesize_clip(sprite.frame, spec, canvas=canvas, fps=fps)
            edge, motion = _clip_scores(clip)
        except (PlacementError, ValueError) as exc:
            logger.warning("skipping %s (%s): %s", entry_id, sprite.class_name, exc)
            continue
        clip_dir = root / entry_id
        save_clip(clip, clip_dir)
        control = render_control(spec, canvas=canvas)
        save_frame_png(control.image, clip_dir / CONTROL_IMAGE_NAME)
        (clip_dir / CONTROL_SPEC_NAME).write_text(spec.to_json() + "\n", encoding="utf-8")
        entries.append(
            DatasetEntry(
                id=entry_id,
                source="synthetic",
                clip_path=_rel_to_root(clip_dir, root),
                control_path=_rel_to_root(clip_dir / CONTROL_IMAGE_NAME, root),
                caption=compose_caption(sprite.class_name, spec, "synthetic"),
                edge_score=edge,
                motion_score=motion,
                created_at=SYNTHETIC_CREATED_AT,
            )
        )
    if len(entries) < count:
        logger.warning("generated %d of %d requested entries", len(entries), count)
    return entries


def read_caption_file(path: str | Path) -> dict[str, str]:
    """Line-delimited JSON records {"id": ..., "caption": ...} -> mapping."""
    captions: dict[str, str] = {}
    with Path(path).open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                captions[record["id"]] = record["caption"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}:{line_no}: bad caption record: {exc}") from exc
    return captions


def import_curated(
    clips_dir: str | Path, captions_path: str | Path, root: str | Path
) -> list[DatasetEntry]:
    """Index manually curated clips as the feedback source; both triggers apply."""
    clips_dir = Path(clips_dir)
    root = Path(root)
    if not clips_dir.is_dir():
        raise IOError(f"not a readable directory: {clips_dir}")
    captions = read_caption_file(captions_path)
    entries = []
    for clip_dir in sorted(p for p in clips_dir.iterdir() if p.is_dir()):
        text = captions.get(clip_dir.name)
        if text is None:
            logger.warning("skipping %s: no caption for this clip id", clip_dir)
            continue
        try:
            clip = load_clip(clip_dir)
            edge, motion = _clip_scores(clip)
            caption = ingested_caption(text, "iterated")
        except (ClipFormatError, ValueError) as exc:
            logger.warning("skipping %s: %s", clip_dir, exc)
            continue
        entries.append(
            DatasetEntry(
                id=clip_dir.name,
                source="iterated",
                clip_path=_rel_to_root(clip_dir, root),
                caption=caption,
                edge_score=edge,
                motion_score=motion,
                created_at=_now(),
            )
        )
    return entries
