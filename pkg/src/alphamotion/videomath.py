"""Reference math for video feature tensors: forward noising, axis inflation,
temporal self-attention, and the noise-prediction objective.

Feature tensors are plain ndarrays with axes (batch, channels, frames,
height, width). Everything here is a pure function meant for invariant
checking, not for training anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

DEFAULT_TIMESTEPS = 1000
DEFAULT_BETA_START = 1e-4
DEFAULT_BETA_END = 0.02


def _require_feature_tensor(x: np.ndarray, name: str = "tensor") -> np.ndarray:
    arr = np.asarray(x)
    if arr.ndim != 5:
        raise ValueError(f"{name} must have axes (b, c, f, h, w), got shape {arr.shape}")
    if min(arr.shape) < 1:
        raise ValueError(f"{name} axes must all be >= 1, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class NoiseSchedule:
    """Cumulative signal-retention sequence alpha_bar[t] for t = 0..T."""

    alpha_bar: np.ndarray

    def __post_init__(self) -> None:
        ab = np.asarray(self.alpha_bar, dtype=np.float64)
        if ab.ndim != 1 or ab.shape[0] < 2:
            raise ValueError("alpha_bar must be a 1-D sequence covering t = 0..T with T >= 1")
        if abs(ab[0] - 1.0) > 1e-3:
            raise ValueError(f"alpha_bar[0] must be 1 within 1e-3, got {ab[0]}")
        if np.any(ab <= 0.0) or np.any(ab > 1.0):
            raise ValueError("alpha_bar values must lie in (0, 1]")
        if np.any(np.diff(ab) >= 0.0):
            raise ValueError("alpha_bar must be strictly decreasing")
        ab = ab.copy()
        ab.setflags(write=False)
        object.__setattr__(self, "alpha_bar", ab)

    @property
    def timesteps(self) -> int:
        return self.alpha_bar.shape[0] - 1


def make_schedule(
    timesteps: int = DEFAULT_TIMESTEPS,
    beta_start: float = DEFAULT_BETA_START,
    beta_end: float = DEFAULT_BETA_END,
) -> NoiseSchedule:
    """Linear-beta schedule; alpha_bar[t] is the running product of (1 - beta)."""
    if timesteps < 1:
        raise ValueError(f"timesteps must be >= 1, got {timesteps}")
    if not 0.0 < beta_start <= beta_end < 1.0:
        raise ValueError(f"need 0 < beta_start <= beta_end < 1, got [{beta_start}, {beta_end}]")
    betas = np.linspace(beta_start, beta_end, timesteps, dtype=np.float64)
    alpha_bar = np.concatenate([[1.0], np.cumprod(1.0 - betas)])
    return NoiseSchedule(alpha_bar=alpha_bar)


def forward_noise(
    z0: np.ndarray, t: int, eps: np.ndarray, schedule: NoiseSchedule
) -> np.ndarray:
    """Noised latent sqrt(ab_t) * z0 + sqrt(1 - ab_t) * eps, elementwise."""
    z0 = _require_feature_tensor(z0, "z0")
    eps = _require_feature_tensor(eps, "eps")
    if z0.shape != eps.shape:
        raise ValueError(f"z0 shape {z0.shape} != eps shape {eps.shape}")
    if not 1 <= t <= schedule.timesteps:
        raise ValueError(f"t must lie in [1, {schedule.timesteps}], got {t}")
    ab = schedule.alpha_bar[t]
    return np.sqrt(ab) * z0 + np.sqrt(1.0 - ab) * eps


def inflate_spatial(x: np.ndarray) -> np.ndarray:
    """(b, c, f, h, w) -> ((b*f), c, h, w): frames move into the batch axis."""
    x = _require_feature_tensor(x)
    b, c, f, h, w = x.shape
    return np.transpose(x, (0, 2, 1, 3, 4)).reshape(b * f, c, h, w)


def deflate_spatial(x: np.ndarray, frame_count: int) -> np.ndarray:
    """Inverse of inflate_spatial given the original frame count."""
    arr = np.asarray(x)
    if arr.ndim != 4:
        raise ValueError(f"expected ((b*f), c, h, w), got shape {arr.shape}")
    bf, c, h, w = arr.shape
    if frame_count < 1 or bf % frame_count != 0:
        raise ValueError(f"leading axis {bf} is not divisible by frame_count {frame_count}")
    return np.transpose(arr.reshape(bf // frame_count, frame_count, c, h, w), (0, 2, 1, 3, 4))


def inflate_temporal(x: np.ndarray) -> np.ndarray:
    """(b, c, f, h, w) -> ((b*h*w), c, f): spatial sites move into the batch axis."""
    x = _require_feature_tensor(x)
    b, c, f, h, w = x.shape
    return np.transpose(x, (0, 3, 4, 1, 2)).reshape(b * h * w, c, f)


def deflate_temporal(x: np.ndarray, height: int, width: int) -> np.ndarray:
    """Inverse of inflate_temporal given the original spatial dimensions."""
    arr = np.asarray(x)
    if arr.ndim != 3:
        raise ValueError(f"expected ((b*h*w), c, f), got shape {arr.shape}")
    bhw, c, f = arr.shape
    if height < 1 or width < 1 or bhw % (height * width) != 0:
        raise ValueError(f"leading axis {bhw} is not divisible by {height}x{width}")
    b = bhw // (height * width)
    return np.transpose(arr.reshape(b, height, width, c, f), (0, 3, 4, 1, 2))


def sinusoidal_position_encoding(length: int, dim: int) -> np.ndarray:
    """Standard transformer sin/cos table of shape (length, dim)."""
    if length < 1 or dim < 1:
        raise ValueError(f"length and dim must be >= 1, got {length}, {dim}")
    positions = np.arange(length, dtype=np.float64)[:, None]
    freqs = np.exp(-math.log(10000.0) * (2 * (np.arange(dim) // 2)) / dim)
    table = positions * freqs[None, :]
    table[:, 0::2] = np.sin(table[:, 0::2])
    table[:, 1::2] = np.cos(table[:, 1::2])
    return table


@dataclass(frozen=True)
class AttentionParams:
    """Projection matrices and position table for single-head attention."""

    w_q: np.ndarray
    w_k: np.ndarray
    w_v: np.ndarray
    pos_enc: np.ndarray

    def __post_init__(self) -> None:
        for name in ("w_q", "w_k", "w_v"):
            m = np.asarray(getattr(self, name), dtype=np.float64)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise ValueError(f"{name} must be square, got shape {m.shape}")
            if m.shape[0] != self.dim_hint():
                raise ValueError("projection matrices must share one dimension")
            object.__setattr__(self, name, m)
        pe = np.asarray(self.pos_enc, dtype=np.float64)
        if pe.ndim != 2 or pe.shape[1] != self.dim_hint():
            raise ValueError(f"pos_enc must be (frames, {self.dim_hint()}), got {pe.shape}")
        object.__setattr__(self, "pos_enc", pe)

    def dim_hint(self) -> int:
        return np.asarray(self.w_q).shape[0]

    @classmethod
    def random(cls, dim: int, max_frames: int, rng: np.random.Generator) -> "AttentionParams":
        return cls(
            w_q=rng.standard_normal((dim, dim)) / math.sqrt(dim),
            w_k=rng.standard_normal((dim, dim)) / math.sqrt(dim),
            w_v=rng.standard_normal((dim, dim)) / math.sqrt(dim),
            pos_enc=sinusoidal_position_encoding(max_frames, dim),
        )


def softmax_rows(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    weights = np.exp(shifted)
    return weights / weights.sum(axis=-1, keepdims=True)


def temporal_attention(
    z: np.ndarray, params: AttentionParams, use_pos_enc: bool = True
) -> np.ndarray:
    """Single-head softmax attention across a clip's frame vectors.

    z has shape (frames, channels); each row attends over all rows. When the
    position flag is set, the sinusoidal table is added before projection.
    """
    z = np.asarray(z, dtype=np.float64)
    if z.ndim != 2:
        raise ValueError(f"z must be (frames, channels), got shape {z.shape}")
    f, c = z.shape
    if f < 1:
        raise ValueError("need at least one frame vector")
    if c != params.dim_hint():
        raise ValueError(f"channel dim {c} != projection dim {params.dim_hint()}")
    if use_pos_enc:
        if f > params.pos_enc.shape[0]:
            raise ValueError(
                f"{f} frames exceed the {params.pos_enc.shape[0]}-row position table"
            )
        z = z + params.pos_enc[:f]
    q = z @ params.w_q.T
    k = z @ params.w_k.T
    v = z @ params.w_v.T
    weights = softmax_rows(q @ k.T / math.sqrt(c))
    return weights @ v


def attention_weights(
    z: np.ndarray, params: AttentionParams, use_pos_enc: bool = True
) -> np.ndarray:
    """The (frames, frames) softmax matrix used by temporal_attention."""
    z = np.asarray(z, dtype=np.float64)
    f, c = z.shape
    if use_pos_enc:
        z = z + params.pos_enc[:f]
    q = z @ params.w_q.T
    k = z @ params.w_k.T
    return softmax_rows(q @ k.T / math.sqrt(c))


def training_loss(eps_true: np.ndarray, eps_pred: np.ndarray) -> float:
    """Mean squared error between true and predicted noise."""
    a = np.asarray(eps_true, dtype=np.float64)
    b = np.asarray(eps_pred, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.mean((a - b) ** 2))


# The denoiser itself is out of scope; this stub gives the objective a
# deterministic callable to exercise.
Denoiser = Callable[[np.ndarray, int, np.ndarray | None], np.ndarray]


def linear_denoiser_stub(gain: float = 0.5) -> Denoiser:
    """Deterministic stand-in denoiser: predicts gain * z_t, ignoring t and cond."""

    def predict(z_t: np.ndarray, t: int, cond: np.ndarray | None = None) -> np.ndarray:
        return gain * np.asarray(z_t, dtype=np.float64)

    return predict
