"""Stateless HTTP facade over clip synthesis and control rendering.

Every response is byte-identical to the corresponding library call, so the
service can be tested by digest comparison. Archives are written with
stored (uncompressed) entries and a fixed timestamp to keep them
deterministic across runs and platforms.

Request bodies are JSON; sprites travel as base64-encoded PNG under
`sprite_png_b64`. Error mapping: 400 malformed or invalid input, 413 inputs
over the configured limits, 422 sprite larger than the canvas.
"""

from __future__ import annotations

import base64
import binascii
import io
import json
import zipfile

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import Response

from .captions import compose_caption
from .config import MAX_CANVAS_SIDE, MAX_FRAME_COUNT, MAX_SPRITE_BYTES
from .control import render_control, spec_digest
from .errors import PlacementError
from .frames import RgbaClip, RgbaFrame
from .io import (
    FRAME_PATTERN,
    META_NAME,
    clip_meta_line,
    frame_from_png_bytes,
    frame_to_png_bytes,
)
from .motion import MotionSpec, synthesize_clip

# Fixed member timestamp (the zip epoch); wall-clock stamps would break
# byte-for-byte response determinism.
_ZIP_EPOCH = (1980, 1, 1, 0, 0, 0)

DEFAULT_CANVAS = (256, 256)
DEFAULT_FRAME_COUNT = 16


def zip_archive(members: list[tuple[str, bytes]]) -> bytes:
    """Deterministic stored-entry zip; member order is preserved."""
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w", compression=zipfile.ZIP_STORED) as zf:
        for name, data in members:
            info = zipfile.ZipInfo(name, date_time=_ZIP_EPOCH)
            info.external_attr = 0o644 << 16
            zf.writestr(info, data)
    return buf.getvalue()


def clip_members(clip: RgbaClip, prefix: str = "") -> list[tuple[str, bytes]]:
    """Archive members mirroring the on-disk clip layout (frames + sidecar)."""
    members = [
        (prefix + FRAME_PATTERN.format(i), frame_to_png_bytes(frame))
        for i, frame in enumerate(clip.frames)
    ]
    members.append((prefix + META_NAME, clip_meta_line(clip).encode("utf-8")))
    return members


def _fail(status: int, message: str) -> HTTPException:
    return HTTPException(status_code=status, detail=message)


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except (json.JSONDecodeError, UnicodeDecodeError):
        raise _fail(400, "request body is not valid JSON")
    if not isinstance(body, dict):
        raise _fail(400, "request body must be a JSON object")
    return body


def _parse_canvas(body: dict, max_side: int) -> tuple[int, int]:
    raw = body.get("canvas", list(DEFAULT_CANVAS))
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw)
    ):
        raise _fail(400, "canvas must be a [width, height] pair of integers")
    w, h = int(raw[0]), int(raw[1])
    if w < 1 or h < 1:
        raise _fail(400, f"canvas must be positive, got {w}x{h}")
    if w > max_side or h > max_side:
        raise _fail(413, f"canvas {w}x{h} exceeds limit {max_side}x{max_side}")
    return w, h


def _parse_spec(body: dict, max_frames: int) -> MotionSpec:
    record = body.get("spec")
    if not isinstance(record, dict):
        raise _fail(400, "spec must be a JSON object")
    record = dict(record)
    if "frame_count" not in record:
        record["frame_count"] = body.get("frame_count", DEFAULT_FRAME_COUNT)
    frames = record["frame_count"]
    if isinstance(frames, int) and frames > max_frames:
        raise _fail(413, f"frame_count {frames} exceeds limit {max_frames}")
    try:
        return MotionSpec.from_record(record)
    except (ValueError, TypeError) as exc:
        raise _fail(400, f"invalid spec: {exc}")


def _parse_sprite(body: dict, max_bytes: int) -> RgbaFrame:
    encoded = body.get("sprite_png_b64")
    if not isinstance(encoded, str) or not encoded:
        raise _fail(400, "sprite_png_b64 must be a non-empty base64 string")
    try:
        raw = base64.b64decode(encoded, validate=True)
    except (binascii.Error, ValueError):
        raise _fail(400, "sprite_png_b64 is not valid base64")
    if len(raw) > max_bytes:
        raise _fail(413, f"sprite is {len(raw)} bytes, limit {max_bytes}")
    try:
        return frame_from_png_bytes(raw)
    except (OSError, ValueError) as exc:
        raise _fail(400, f"sprite is not a decodable RGBA PNG: {exc}")


def _synthesize(sprite: RgbaFrame, spec: MotionSpec, canvas: tuple[int, int]) -> RgbaClip:
    try:
        return synthesize_clip(sprite, spec, canvas=canvas)
    except PlacementError as exc:
        raise _fail(422, str(exc))
    except ValueError as exc:
        raise _fail(400, str(exc))


def create_app(
    max_canvas_side: int = MAX_CANVAS_SIDE,
    max_frame_count: int = MAX_FRAME_COUNT,
    max_sprite_bytes: int = MAX_SPRITE_BYTES,
) -> FastAPI:
    app = FastAPI(title="alphamotion preview service", docs_url=None, redoc_url=None)

    @app.get("/v1/health")
    async def health() -> dict:
        return {"status": "ok"}

    @app.post("/v1/preview")
    async def preview(request: Request) -> Response:
        body = await _json_body(request)
        canvas = _parse_canvas(body, max_canvas_side)
        spec = _parse_spec(body, max_frame_count)
        sprite = _parse_sprite(body, max_sprite_bytes)
        clip = _synthesize(sprite, spec, canvas)
        digest = spec_digest(spec)[:12]
        return Response(
            content=zip_archive(clip_members(clip)),
            media_type="application/zip",
            headers={"Content-Disposition": f'attachment; filename="preview_{digest}.zip"'},
        )

    @app.post("/v1/control-map")
    async def control_map(request: Request) -> Response:
        body = await _json_body(request)
        canvas = _parse_canvas(body, max_canvas_side)
        spec = _parse_spec(body, max_frame_count)
        try:
            control = render_control(spec, canvas=canvas)
        except ValueError as exc:
            raise _fail(400, str(exc))
        digest = spec_digest(spec)[:12]
        return Response(
            content=frame_to_png_bytes(control.image),
            media_type="image/png",
            headers={"Content-Disposition": f'attachment; filename="control_{digest}.png"'},
        )

    @app.post("/v1/export")
    async def export(request: Request) -> Response:
        body = await _json_body(request)
        canvas = _parse_canvas(body, max_canvas_side)
        spec = _parse_spec(body, max_frame_count)
        sprite = _parse_sprite(body, max_sprite_bytes)
        class_name = body.get("class_name")
        if not isinstance(class_name, str) or not class_name.strip():
            raise _fail(400, "class_name must be a non-empty string")
        digest = spec_digest(spec)
        entry_id = body.get("id", f"export_{digest[:12]}")
        if not isinstance(entry_id, str) or not entry_id or "/" in entry_id:
            raise _fail(400, "id must be a non-empty string without path separators")
        clip = _synthesize(sprite, spec, canvas)
        try:
            control = render_control(spec, canvas=canvas)
        except ValueError as exc:
            raise _fail(400, str(exc))
        caption = compose_caption(class_name.strip(), spec, "iterated")
        members = clip_members(clip, prefix=f"{entry_id}/")
        members.append((f"{entry_id}/control.png", frame_to_png_bytes(control.image)))
        members.append((f"{entry_id}/control.spec", (spec.to_json() + "\n").encode("utf-8")))
        caption_line = json.dumps(
            {"caption": caption.full_text, "id": entry_id}, sort_keys=True
        )
        members.append(("captions.jsonl", (caption_line + "\n").encode("utf-8")))
        return Response(
            content=zip_archive(members),
            media_type="application/zip",
            headers={"Content-Disposition": f'attachment; filename="{entry_id}.zip"'},
        )

    return app
