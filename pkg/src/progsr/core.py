"""Domain types, validation, and deterministic seeding shared by all modules.

The universal currency between modules is the :class:`VideoClip`, a C x T x H x W
intensity volume with values normalized to [0, 1].
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

import numpy as np
import torch

from .errors import RangeError, ShapeError

VALID_CHANNELS = (1, 3)


@dataclass(frozen=True)
class VideoClip:
    """A real-valued video volume of shape (C, T, H, W) with values in [0, 1].

    Construction performs no checks so that invalid volumes can be built and
    fed to :func:`validate_clip`; everything downstream assumes validated
    clips.
    """

    data: np.ndarray
    fps: float = 30.0
    source_id: str = ""

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return tuple(self.data.shape)  # type: ignore[return-value]

    @property
    def channels(self) -> int:
        return int(self.data.shape[0])

    @property
    def num_frames(self) -> int:
        return int(self.data.shape[1])


def validate_clip(clip: VideoClip) -> VideoClip:
    """Check every VideoClip invariant and return the clip unchanged.

    Raises ShapeError for degenerate dimensions or a channel count outside
    {1, 3}, RangeError for non-finite values or values outside [0, 1].
    Idempotent: a validated clip validates again to itself.
    """
    data = clip.data
    if not isinstance(data, np.ndarray) or data.ndim != 4:
        raise ShapeError(f"clip data must be a 4-d (C,T,H,W) array, got ndim="
                         f"{getattr(data, 'ndim', None)}")
    c, t, h, w = data.shape
    if c not in VALID_CHANNELS:
        raise ShapeError(f"channel count must be 1 or 3, got {c}")
    if t < 1 or h < 1 or w < 1:
        raise ShapeError(f"all of T,H,W must be >= 1, got shape {data.shape}")
    if clip.fps <= 0:
        raise RangeError(f"fps must be positive, got {clip.fps}")
    if not np.all(np.isfinite(data)):
        raise RangeError("clip contains non-finite values")
    lo, hi = float(data.min()), float(data.max())
    if lo < 0.0 or hi > 1.0:
        raise RangeError(f"clip values must lie in [0, 1], got [{lo}, {hi}]")
    return clip


@dataclass(frozen=True)
class LabelVector:
    """A binary label vector over K named classes.

    Multi-label vectors may have any number of set bits; single-label use
    requires exactly one (checked by callers via :meth:`is_single_label`).
    """

    y: tuple[int, ...]
    class_names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.class_names) < 1:
            raise ShapeError("LabelVector needs at least one class")
        if len(self.y) != len(self.class_names):
            raise ShapeError(
                f"label vector length {len(self.y)} != number of class names "
                f"{len(self.class_names)}")
        if any(v not in (0, 1) for v in self.y):
            raise RangeError(f"label entries must be 0 or 1, got {self.y}")

    @property
    def num_classes(self) -> int:
        return len(self.class_names)

    @property
    def is_single_label(self) -> bool:
        return sum(self.y) == 1

    @property
    def active_names(self) -> tuple[str, ...]:
        return tuple(n for n, v in zip(self.class_names, self.y) if v)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.y, dtype=np.int8)

    @classmethod
    def from_names(cls, names, class_names) -> "LabelVector":
        class_names = tuple(class_names)
        name_set = set(names)
        unknown = name_set - set(class_names)
        if unknown:
            raise RangeError(f"labels {sorted(unknown)} not in class list")
        return cls(tuple(1 if n in name_set else 0 for n in class_names),
                   class_names)


@dataclass(frozen=True)
class AttentionMap:
    """Per-frame spatial importance weights, shape (T, H, W), values in [0, 1].

    Out-of-range inputs are rejected at construction; nothing is clamped
    silently.
    """

    weights: np.ndarray

    def __post_init__(self) -> None:
        w = self.weights
        if not isinstance(w, np.ndarray) or w.ndim != 3:
            raise ShapeError("attention weights must be a 3-d (T,H,W) array")
        if any(d < 1 for d in w.shape):
            raise ShapeError(f"attention map has degenerate shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise RangeError("attention map contains non-finite values")
        if w.min() < 0.0 or w.max() > 1.0:
            raise RangeError("attention weights must lie in [0, 1]")

    @property
    def shape(self) -> tuple[int, int, int]:
        return tuple(self.weights.shape)  # type: ignore[return-value]


@dataclass(frozen=True)
class LossWeights:
    """Mixing coefficients for the combined super-resolution objective.

    lambda_rec and lambda_att weight the reconstruction and attention terms
    of the total loss; lambda_sparsity scales the L1 penalty on the attention
    map inside the attention term itself (two distinct roles).
    """

    lambda_rec: float = 1.0
    lambda_att: float = 0.5
    lambda_sparsity: float = 0.5

    def __post_init__(self) -> None:
        for name in ("lambda_rec", "lambda_att", "lambda_sparsity"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < 0:
                raise RangeError(f"{name} must be finite and >= 0, got {v}")


def stage_output_shape(stage_index: int,
                       in_shape: tuple[int, int, int]) -> tuple[int, int, int]:
    """Output (T, H, W) of progressive stage `stage_index` for a given input.

    Spatial dims double per stage; the temporal extent starts at T/4 (the
    encoder reduction) and doubles from the second stage on, reproducing the
    4 -> 8 -> 16 frame schedule for 16-frame inputs.
    """
    t, h, w = in_shape
    if stage_index < 1:
        raise ShapeError(f"stage_index must be >= 1, got {stage_index}")
    if t % 4 != 0:
        raise ShapeError(f"input frame count must be divisible by 4, got {t}")
    return (t // 4) * 2 ** (stage_index - 1), h * 2 ** stage_index, w * 2 ** stage_index


@dataclass(frozen=True)
class StageConfig:
    """Resolved shape contract plus fade-in state for one progressive stage."""

    stage_index: int
    in_shape: tuple[int, int, int]
    out_shape: tuple[int, int, int]
    alpha: float = 1.0

    def __post_init__(self) -> None:
        expected = stage_output_shape(self.stage_index, self.in_shape)
        if tuple(self.out_shape) != expected:
            raise ShapeError(
                f"stage {self.stage_index} output shape {self.out_shape} does "
                f"not match the stage schedule {expected}")
        if not 0.0 <= self.alpha <= 1.0:
            raise RangeError(f"alpha must lie in [0, 1], got {self.alpha}")

    @classmethod
    def for_stage(cls, stage_index: int, in_shape: tuple[int, int, int],
                  alpha: float = 1.0) -> "StageConfig":
        return cls(stage_index, tuple(in_shape),
                   stage_output_shape(stage_index, in_shape), alpha)


def seed_all(seed: int) -> None:
    """Seed every RNG the library draws from (python, numpy legacy, torch).

    Two runs with the same seed produce bit-identical parameter
    initializations and data orderings.
    """
    if seed < 0:
        raise RangeError(f"seed must be >= 0, got {seed}")
    random.seed(seed)
    np.random.seed(seed % 2 ** 32)
    torch.manual_seed(seed)


def parameter_hash(module: torch.nn.Module) -> str:
    """SHA-256 over all named parameters and buffers, in name order.

    Stable across process restarts for a fixed seed and config; used to
    assert frozen-model contracts and checkpoint round-trips.
    """
    h = hashlib.sha256()
    items = list(module.named_parameters()) + list(module.named_buffers())
    for name, tensor in sorted(items, key=lambda kv: kv[0]):
        h.update(name.encode())
        h.update(str(tuple(tensor.shape)).encode())
        h.update(str(tensor.dtype).encode())
        h.update(tensor.detach().cpu().contiguous().numpy().tobytes())
    return h.hexdigest()
