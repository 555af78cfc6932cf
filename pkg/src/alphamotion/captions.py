"""Caption assembly and per-source quality trigger tokens.

Each training source carries the trigger tokens for the quality axes it is
trusted on: synthetic clips have clean edges, extracted foregrounds have real
motion, and curated sources have both. Inference prompts combine both tokens.
"""

from __future__ import annotations

from dataclasses import dataclass

from .motion import MotionSpec

EDGE_TRIGGER = "<edge_hq>"
MOTION_TRIGGER = "<motion_hq>"

SOURCES = ("game_effect", "foreground", "synthetic", "iterated")

SOURCE_TRIGGERS: dict[str, tuple[str, ...]] = {
    "game_effect": (EDGE_TRIGGER, MOTION_TRIGGER),
    "foreground": (MOTION_TRIGGER,),
    "synthetic": (EDGE_TRIGGER,),
    "iterated": (EDGE_TRIGGER, MOTION_TRIGGER),
}

DIRECTION_WORDS = {
    "E": "right",
    "NE": "up and to the right",
    "N": "up",
    "NW": "up and to the left",
    "W": "left",
    "SW": "down and to the left",
    "S": "down",
    "SE": "down and to the right",
}

SCALE_PHRASES = {
    "grow": "growing larger",
    "stable": "at constant size",
    "shrink": "shrinking",
}

ROTATION_PHRASE = "rotating"


@dataclass(frozen=True)
class CaptionRecord:
    class_name: str
    motion_phrase: str
    triggers: tuple[str, ...]
    source: str
    full_text: str

    def __post_init__(self) -> None:
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")
        for part in (self.class_name, self.motion_phrase, *self.triggers):
            if part and self.full_text.count(part) != 1:
                raise ValueError(f"caption must contain {part!r} exactly once")

    def to_record(self) -> dict:
        return {
            "class_name": self.class_name,
            "motion_phrase": self.motion_phrase,
            "triggers": list(self.triggers),
            "source": self.source,
            "full_text": self.full_text,
        }

    @classmethod
    def from_record(cls, record: dict) -> "CaptionRecord":
        return cls(
            class_name=record["class_name"],
            motion_phrase=record["motion_phrase"],
            triggers=tuple(record["triggers"]),
            source=record["source"],
            full_text=record["full_text"],
        )


def motion_phrase(spec: MotionSpec) -> str:
    """Fixed-template description of a spec's motion."""
    parts = []
    if spec.direction is not None:
        parts.append(f"moving {DIRECTION_WORDS[spec.direction]}")
    parts.append(SCALE_PHRASES[spec.scale_mode])
    if spec.rotation_rate != 0:
        parts.append(ROTATION_PHRASE)
    return ", ".join(parts)


def compose_caption(class_name: str, spec: MotionSpec, source: str) -> CaptionRecord:
    """Build the caption record for one dataset entry."""
    if not class_name:
        raise ValueError("class_name must be non-empty")
    if source not in SOURCES:
        raise ValueError(f"unknown source {source!r}, expected one of {SOURCES}")
    phrase = motion_phrase(spec)
    triggers = SOURCE_TRIGGERS[source]
    full_text = f"{class_name} {phrase}, {' '.join(triggers)}"
    return CaptionRecord(
        class_name=class_name,
        motion_phrase=phrase,
        triggers=triggers,
        source=source,
        full_text=full_text,
    )


def ingested_caption(text: str, source: str) -> CaptionRecord:
    """Caption for a clip with no known motion spec: free text plus the
    source's triggers appended (never duplicated)."""
    if not text:
        raise ValueError("caption text must be non-empty")
    if source not in SOURCES:
        raise ValueError(f"unknown source {source!r}, expected one of {SOURCES}")
    full_text = text
    for token in SOURCE_TRIGGERS[source]:
        if token not in full_text:
            full_text = f"{full_text} {token}"
    return CaptionRecord(
        class_name=text,
        motion_phrase="",
        triggers=SOURCE_TRIGGERS[source],
        source=source,
        full_text=full_text,
    )


def inference_prompt(base: str) -> str:
    """Append both quality triggers, each exactly once, edge first."""
    text = base
    for token in (EDGE_TRIGGER, MOTION_TRIGGER):
        if token not in text:
            text = f"{text} {token}" if text else token
    return text
