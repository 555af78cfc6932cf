"""Named runtime invariant checks behind the `validate` CLI subcommand.

Each check is self-contained and pits an implementation against an
independent brute-force evaluation, so a regression in either side shows up
as a named failure rather than a silent drift.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import captions as cap
from .control import decode_control, render_control
from .frames import RgbaFrame, composite_over
from .motion import AffineTransform, MotionSpec, warp
from .videomath import (
    AttentionParams,
    NoiseSchedule,
    deflate_spatial,
    deflate_temporal,
    forward_noise,
    inflate_spatial,
    inflate_temporal,
    make_schedule,
    temporal_attention,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _result(name: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(name=name, passed=passed, detail="" if passed else detail)


def check_schedule_construction() -> CheckResult:
    name = "schedule_construction"
    s = make_schedule(1000, 1e-4, 0.02)
    ab = s.alpha_bar
    if abs(ab[0] - 1.0) > 1e-12:
        return _result(name, False, f"alpha_bar[0] = {ab[0]}")
    if not np.all(np.diff(ab) < 0):
        return _result(name, False, "alpha_bar not strictly decreasing")
    if ab[-1] >= 0.01:
        return _result(name, False, f"alpha_bar[T] = {ab[-1]} not < 0.01")
    return _result(name, True)


def check_forward_noise_variance() -> CheckResult:
    name = "forward_noise_variance"
    schedule = make_schedule(1000, 1e-4, 0.02)
    rng = np.random.default_rng(0)
    shape = (1, 4, 16, 125, 125)  # 1e6 elements
    z0 = rng.standard_normal(shape, dtype=np.float32)
    eps = rng.standard_normal(shape, dtype=np.float32)
    for t in (1, 250, 500, 750, 1000):
        v = float(np.var(forward_noise(z0, t, eps, schedule)))
        if abs(v - 1.0) > 0.01:
            return _result(name, False, f"variance {v:.4f} at t={t}")
    return _result(name, True)


def _naive_attention(z, w_q, w_k, w_v):
    f, c = z.shape
    q = np.array([w_q @ z[i] for i in range(f)])
    k = np.array([w_k @ z[i] for i in range(f)])
    v = np.array([w_v @ z[i] for i in range(f)])
    out = np.zeros_like(z)
    for i in range(f):
        logits = np.array([float(q[i] @ k[j]) / math.sqrt(c) for j in range(f)])
        e = np.exp(logits - logits.max())
        w = e / e.sum()
        for j in range(f):
            out[i] += w[j] * v[j]
    return out


def check_attention_oracle() -> CheckResult:
    name = "attention_oracle"
    rng = np.random.default_rng(1)
    for case in range(20):
        f = int(rng.integers(1, 9))
        c = int(rng.integers(1, 17))
        params = AttentionParams.random(c, max_frames=8, rng=rng)
        z = rng.standard_normal((f, c))
        got = temporal_attention(z, params, use_pos_enc=False)
        want = _naive_attention(z, params.w_q, params.w_k, params.w_v)
        if np.max(np.abs(got - want)) > 1e-6:
            return _result(name, False, f"case {case} (f={f}, c={c}) diverges from naive")
    return _result(name, True)


def check_attention_single_frame() -> CheckResult:
    name = "attention_single_frame"
    rng = np.random.default_rng(2)
    params = AttentionParams.random(8, max_frames=4, rng=rng)
    z = rng.standard_normal((1, 8))
    got = temporal_attention(z, params, use_pos_enc=False)
    want = (params.w_v @ z[0])[None, :]
    if np.max(np.abs(got - want)) > 1e-9:
        return _result(name, False, "f=1 output is not W_V z")
    return _result(name, True)


def check_inflation_roundtrips() -> CheckResult:
    name = "inflation_roundtrips"
    rng = np.random.default_rng(3)
    sizes = (1, 2, 3)
    for b in sizes:
        for c in sizes:
            for f in sizes:
                for h in sizes:
                    for w in sizes:
                        x = rng.standard_normal((b, c, f, h, w))
                        if not np.array_equal(deflate_spatial(inflate_spatial(x), f), x):
                            return _result(name, False, f"spatial trip failed at {x.shape}")
                        if not np.array_equal(deflate_temporal(inflate_temporal(x), h, w), x):
                            return _result(name, False, f"temporal trip failed at {x.shape}")
    return _result(name, True)


def _random_sprite(rng: np.random.Generator, size: int = 24) -> RgbaFrame:
    data = rng.random((size, size, 4)).astype(np.float32)
    return RgbaFrame(data)


def _shift_oracle(frame: RgbaFrame, dx: int, dy: int) -> np.ndarray:
    """Per-pixel shift moving content by (+dx, +dy), transparent fill."""
    h, w = frame.height, frame.width
    out = np.zeros((h, w, 4), dtype=np.float32)
    for y in range(h):
        for x in range(w):
            sx, sy = x - dx, y - dy
            if 0 <= sx < w and 0 <= sy < h:
                out[y, x] = frame.data[sy, sx]
    return out


def check_warp_identity() -> CheckResult:
    name = "warp_identity"
    frame = _random_sprite(np.random.default_rng(4))
    warped = warp(frame, AffineTransform.identity())
    if not np.array_equal(warped.data, frame.data):
        return _result(name, False, "identity warp not bit-exact")
    return _result(name, True)


def check_warp_integer_shift() -> CheckResult:
    name = "warp_integer_shift"
    rng = np.random.default_rng(5)
    for case in range(10):
        frame = _random_sprite(rng)
        dx, dy = int(rng.integers(-10, 11)), int(rng.integers(-10, 11))
        t = AffineTransform(np.array([[1.0, 0.0, -dx], [0.0, 1.0, -dy]]))
        if not np.array_equal(warp(frame, t).data, _shift_oracle(frame, dx, dy)):
            return _result(name, False, f"case {case} shift ({dx}, {dy}) not bit-exact")
    return _result(name, True)


def check_control_roundtrip() -> CheckResult:
    name = "control_roundtrip"
    directions = ("E", "NE", "N", "NW", "W", "SW", "S", "SE")
    modes = {"grow": 1.05, "stable": 1.0, "shrink": 0.95}
    for direction in directions:
        for mode, rate in modes.items():
            spec = MotionSpec(direction=direction, velocity=4.0, scale_mode=mode, scale_rate=rate)
            got = decode_control(render_control(spec))
            if got.direction != direction or got.scale_mode != mode:
                return _result(
                    name, False, f"{direction}/{mode} decoded as {got.direction}/{got.scale_mode}"
                )
            if abs(got.velocity - 4.0) > 1.0:
                return _result(name, False, f"{direction}/{mode} velocity {got.velocity:.2f}")
    return _result(name, True)


def check_trigger_mapping() -> CheckResult:
    name = "trigger_mapping"
    want = {
        "game_effect": {cap.EDGE_TRIGGER, cap.MOTION_TRIGGER},
        "foreground": {cap.MOTION_TRIGGER},
        "synthetic": {cap.EDGE_TRIGGER},
        "iterated": {cap.EDGE_TRIGGER, cap.MOTION_TRIGGER},
    }
    spec = MotionSpec(direction="E", velocity=2.0)
    for source, tokens in want.items():
        record = cap.compose_caption("fire", spec, source)
        if set(record.triggers) != tokens:
            return _result(name, False, f"{source} carries {record.triggers}")
    once = cap.inference_prompt("a prompt")
    if cap.inference_prompt(once) != once:
        return _result(name, False, "inference_prompt is not idempotent")
    for token in (cap.EDGE_TRIGGER, cap.MOTION_TRIGGER):
        if once.count(token) != 1:
            return _result(name, False, f"{token} appended {once.count(token)} times")
    return _result(name, True)


def check_compositing() -> CheckResult:
    name = "compositing"
    rng = np.random.default_rng(6)
    bg = RgbaFrame(rng.random((16, 16, 4)).astype(np.float32))
    opaque = rng.random((16, 16, 4)).astype(np.float32)
    opaque[:, :, 3] = 1.0
    fg_opaque = RgbaFrame(opaque)
    if not np.array_equal(composite_over(fg_opaque, bg).data, fg_opaque.data):
        return _result(name, False, "opaque foreground identity broken")
    clear = rng.random((16, 16, 4)).astype(np.float32)
    clear[:, :, 3] = 0.0
    if not np.array_equal(composite_over(RgbaFrame(clear), bg).data, bg.data):
        return _result(name, False, "transparent foreground identity broken")
    for case in range(10):
        a, b, c = (RgbaFrame(rng.random((8, 8, 4)).astype(np.float32)) for _ in range(3))
        left = composite_over(composite_over(a, b), c)
        right = composite_over(a, composite_over(b, c))
        if np.max(np.abs(left.data - right.data)) > 1e-6:
            return _result(name, False, f"associativity case {case} exceeds 1e-6")
    return _result(name, True)


def check_schedule_file(path: str | Path) -> CheckResult:
    """Validate an externally stored schedule (JSON {"alpha_bar": [...]})."""
    name = "schedule_file"
    try:
        record = json.loads(Path(path).read_text(encoding="utf-8"))
        NoiseSchedule(alpha_bar=np.asarray(record["alpha_bar"], dtype=np.float64))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        return _result(name, False, f"unreadable schedule: {exc}")
    except ValueError as exc:
        return _result(name, False, str(exc))
    return _result(name, True)


SUITES: dict[str, tuple] = {
    "diffusion": (check_schedule_construction, check_forward_noise_variance),
    "attention": (check_attention_oracle, check_attention_single_frame),
    "inflation": (check_inflation_roundtrips,),
    "warp": (check_warp_identity, check_warp_integer_shift),
    "control": (check_control_roundtrip,),
    "captions": (check_trigger_mapping,),
    "compositing": (check_compositing,),
}


def run_checks(
    suites: list[str] | None = None, schedule_path: str | Path | None = None
) -> list[CheckResult]:
    selected = suites if suites is not None else list(SUITES)
    unknown = [s for s in selected if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites: {unknown}; available: {sorted(SUITES)}")
    if not selected:
        raise ValueError(f"no suites selected; available: {sorted(SUITES)}")
    results = [check() for suite in selected for check in SUITES[suite]]
    if schedule_path is not None:
        results.append(check_schedule_file(schedule_path))
    return results
