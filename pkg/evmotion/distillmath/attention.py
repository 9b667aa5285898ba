# -*- coding: utf-8 -*-

from enum import Enum, unique
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy.special import softmax

from evmotion.distillmath.loss import require_finite
from evmotion.errors import (
    ConfigError,
    NumericalError,
    ShapeMismatchError,
    ValidationError,
)
from evmotion.variables import DEFAULT_HUBER_DELTA, DEFAULT_LOSS_VIS_CUT


@unique
class Normalization(Enum):
    SUM = "sum"
    SOFTMAX = "softmax"


class AttentionTrack(NamedTuple):
    predicted: np.ndarray  # (T, 2)
    targets: np.ndarray  # (T, 2)
    visibility: np.ndarray  # (T,)
    query_frame: int


def soft_argmax(
    row: np.ndarray,
    mode: Normalization = Normalization.SUM,
    temperature: float = 1.0,
) -> Tuple[float, float]:
    """Expected ``(x, y)`` grid position under an (H', W') attention row."""
    row = np.asarray(row, dtype=np.float64)
    if row.ndim != 2:
        raise ShapeMismatchError(f"attention row must be (H, W), got {row.shape}")
    require_finite("attention", row)

    if Normalization(mode) is Normalization.SOFTMAX:
        if not temperature > 0:
            raise ConfigError("must be positive", "temperature")
        weights = softmax(row / temperature)
    else:
        if np.any(row < 0):
            raise ValidationError("attention weights must be non-negative")
        total = row.sum()
        if not total > 0:
            raise NumericalError("attention row has no positive weight")
        weights = row / total

    ys, xs = np.indices(row.shape, dtype=np.float64)
    return float(np.sum(weights * xs)), float(np.sum(weights * ys))


def huber(error: np.ndarray, delta=DEFAULT_HUBER_DELTA) -> np.ndarray:
    magnitude = np.abs(np.asarray(error, dtype=np.float64))
    quadratic = 0.5 * magnitude**2
    linear = delta * (magnitude - 0.5 * delta)
    return np.where(magnitude <= delta, quadratic, linear)


def attention_traj_loss(
    predicted: np.ndarray,
    targets: np.ndarray,
    visibility: np.ndarray,
    query_frame: int,
    huber_delta=DEFAULT_HUBER_DELTA,
    vis_cut=DEFAULT_LOSS_VIS_CUT,
) -> float:
    """Mean coordinate-summed Huber error over visible non-query frames."""
    predicted = np.asarray(predicted, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    visibility = np.asarray(visibility, dtype=np.float64)
    require_finite("attention_traj", predicted, targets, visibility)
    if predicted.shape != targets.shape or predicted.shape[-1:] != (2,):
        raise ShapeMismatchError(
            f"predicted {predicted.shape} vs targets {targets.shape}"
        )
    if visibility.shape != predicted.shape[:1]:
        raise ShapeMismatchError(f"visibility {visibility.shape} vs {predicted.shape}")

    frames = np.flatnonzero(visibility >= vis_cut)
    frames = frames[frames != query_frame]
    if frames.size == 0:
        raise NumericalError("no visible frame besides the query frame")
    per_frame = huber(predicted[frames] - targets[frames], huber_delta).sum(axis=-1)
    return float(per_frame.mean())


def bidirectional_attention_loss(
    forward: AttentionTrack,
    backward: Optional[AttentionTrack] = None,
    huber_delta=DEFAULT_HUBER_DELTA,
    vis_cut=DEFAULT_LOSS_VIS_CUT,
) -> float:
    tracks = [forward] if backward is None else [forward, backward]
    losses = [
        attention_traj_loss(*track, huber_delta=huber_delta, vis_cut=vis_cut)
        for track in tracks
    ]
    return float(np.mean(losses))


def positions_from_maps(
    maps: np.ndarray,
    mode: Normalization = Normalization.SUM,
    temperature: float = 1.0,
) -> np.ndarray:
    """Soft-argmax positions for (T, H', W') maps as a (T, 2) array."""
    maps = np.asarray(maps)
    if maps.ndim != 3:
        raise ShapeMismatchError(f"attention maps must be (T, H, W), got {maps.shape}")
    positions = [soft_argmax(row, mode, temperature) for row in maps]
    return np.array(positions, dtype=np.float64)


def attention_loss_from_maps(
    maps: np.ndarray,
    targets: np.ndarray,
    visibility: np.ndarray,
    query_frame: int,
    backward_maps: Optional[np.ndarray] = None,
    mode: Normalization = Normalization.SUM,
    temperature: float = 1.0,
    huber_delta=DEFAULT_HUBER_DELTA,
    vis_cut=DEFAULT_LOSS_VIS_CUT,
) -> float:
    """Attention loss of selected heads, averaged over heads and directions.

    ``maps`` is (heads, T, H', W'); ``targets`` are grid coordinates (T, 2).
    """
    directions = [maps] if backward_maps is None else [maps, backward_maps]
    losses = list()
    for direction in directions:
        direction = np.asarray(direction)
        if direction.ndim != 4:
            raise ShapeMismatchError(
                f"maps must be (heads, T, H, W), got {direction.shape}"
            )
        for head in direction:
            predicted = positions_from_maps(head, mode, temperature)
            losses.append(
                attention_traj_loss(
                    predicted, targets, visibility, query_frame, huber_delta, vis_cut
                )
            )
    return float(np.mean(losses))
