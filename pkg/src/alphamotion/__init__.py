"""Transparent-clip motion synthesis and dataset tooling."""

from .captions import (
    EDGE_TRIGGER,
    MOTION_TRIGGER,
    SOURCES,
    CaptionRecord,
    compose_caption,
    inference_prompt,
    ingested_caption,
    motion_phrase,
)
from .config import RunConfig, SpecDistribution
from .control import (
    ControlMap,
    DecodedControl,
    arrow_length,
    decode_control,
    length_to_velocity,
    render_control,
    spec_digest,
)
from .dataset import (
    DatasetEntry,
    DatasetManifest,
    Sprite,
    draw_motion_spec,
    generate_synthetic,
    import_curated,
    ingest_foreground,
    ingest_game_effect,
    read_manifest,
    write_manifest,
)
from .errors import (
    ClipFormatError,
    ControlDecodeError,
    ManifestFormatError,
    PlacementError,
    SizeMismatchError,
)
from .frames import (
    RgbaClip,
    RgbaFrame,
    alpha_centroid,
    apply_mask,
    composite_over,
    edge_quality,
)
from .io import load_clip, load_frame_png, load_mask_png, save_clip, save_frame_png
from .motion import (
    HEADINGS,
    AffineTransform,
    MotionSpec,
    heading_angle,
    motion_magnitude,
    place_centered,
    snap_heading,
    synthesize_clip,
    trajectory,
    warp,
)
from .validate import CheckResult, run_checks
from .videomath import (
    AttentionParams,
    NoiseSchedule,
    attention_weights,
    deflate_spatial,
    deflate_temporal,
    forward_noise,
    inflate_spatial,
    inflate_temporal,
    make_schedule,
    sinusoidal_position_encoding,
    temporal_attention,
    training_loss,
)

__version__ = "0.1.0"

__all__ = [
    "AffineTransform",
    "AttentionParams",
    "CaptionRecord",
    "CheckResult",
    "ClipFormatError",
    "ControlDecodeError",
    "ControlMap",
    "DatasetEntry",
    "DatasetManifest",
    "DecodedControl",
    "EDGE_TRIGGER",
    "HEADINGS",
    "MOTION_TRIGGER",
    "ManifestFormatError",
    "MotionSpec",
    "NoiseSchedule",
    "PlacementError",
    "RgbaClip",
    "RgbaFrame",
    "RunConfig",
    "SOURCES",
    "SizeMismatchError",
    "SpecDistribution",
    "Sprite",
    "alpha_centroid",
    "apply_mask",
    "arrow_length",
    "attention_weights",
    "composite_over",
    "compose_caption",
    "decode_control",
    "deflate_spatial",
    "deflate_temporal",
    "draw_motion_spec",
    "edge_quality",
    "forward_noise",
    "generate_synthetic",
    "heading_angle",
    "import_curated",
    "inference_prompt",
    "inflate_spatial",
    "inflate_temporal",
    "ingest_foreground",
    "ingest_game_effect",
    "ingested_caption",
    "length_to_velocity",
    "load_clip",
    "load_frame_png",
    "load_mask_png",
    "make_schedule",
    "motion_magnitude",
    "motion_phrase",
    "place_centered",
    "read_manifest",
    "render_control",
    "run_checks",
    "save_clip",
    "save_frame_png",
    "sinusoidal_position_encoding",
    "snap_heading",
    "spec_digest",
    "synthesize_clip",
    "temporal_attention",
    "training_loss",
    "trajectory",
    "warp",
    "write_manifest",
]
