# -*- coding: utf-8 -*-

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from evmotion.errors import ConfigError, NumericalError, ShapeMismatchError
from evmotion.flowdecomp.field import FlowField
from evmotion.variables import (
    DEFAULT_LOSS_ALPHA,
    DEFAULT_LOSS_CONF_CUT,
    DEFAULT_LOSS_GAMMA,
    DEFAULT_LOSS_ITERATIONS,
    DEFAULT_LOSS_LAMBDA,
    DEFAULT_LOSS_VIS_CUT,
    OCCLUDED_WEIGHT,
)


@dataclass(frozen=True)
class LossConfig:
    iterations: int = DEFAULT_LOSS_ITERATIONS
    gamma: float = DEFAULT_LOSS_GAMMA
    alpha: float = DEFAULT_LOSS_ALPHA
    flow_weight: float = DEFAULT_LOSS_LAMBDA
    occluded_weight: float = OCCLUDED_WEIGHT
    vis_cut: float = DEFAULT_LOSS_VIS_CUT
    conf_cut: float = DEFAULT_LOSS_CONF_CUT

    def validate(self) -> "LossConfig":
        if self.iterations < 1:
            raise ConfigError("must be >= 1", "iterations")
        if not 0 < self.gamma <= 1:
            raise ConfigError("must lie in (0, 1]", "gamma")
        if self.flow_weight < 0:
            raise ConfigError("must be non-negative", "flow_weight")
        if self.alpha < 0:
            raise ConfigError("must be non-negative", "alpha")
        return self


def require_finite(name: str, *arrays: Optional[np.ndarray]) -> None:
    for array in arrays:
        if array is not None and not np.all(np.isfinite(array)):
            raise NumericalError("input contains NaN or infinite values", name)


def iteration_weights(iterations: int, gamma: float) -> np.ndarray:
    """``gamma^(K-k)`` for ``k = 1..K``; the last iteration weighs 1."""
    return gamma ** np.arange(iterations - 1, -1, -1, dtype=np.float64)


def track_weights(
    visibility: np.ndarray,
    confidence: Optional[np.ndarray],
    cfg: LossConfig,
) -> np.ndarray:
    """1 for visible, confident pseudo-labels and ``occluded_weight`` otherwise."""
    trusted = visibility >= cfg.vis_cut
    if confidence is not None:
        trusted &= confidence >= cfg.conf_cut
    return np.where(trusted, 1.0, cfg.occluded_weight)


def track_loss(
    preds: np.ndarray,
    pseudo: np.ndarray,
    visibility: np.ndarray,
    confidence: Optional[np.ndarray] = None,
    cfg: Optional[LossConfig] = None,
) -> float:
    """Iteration-decayed, occlusion-weighted L1 between tracks and pseudo-labels.

    ``preds`` is (K, N, T, 2), ``pseudo`` (N, T, 2), the maps (N, T). The
    per-point error is summed over coordinates and averaged over points.
    """
    preds = np.asarray(preds, dtype=np.float64)
    pseudo = np.asarray(pseudo, dtype=np.float64)
    visibility = np.asarray(visibility, dtype=np.float64)
    if confidence is not None:
        confidence = np.asarray(confidence, dtype=np.float64)
    require_finite("track", preds, pseudo, visibility, confidence)
    if preds.ndim != 4 or preds.shape[1:] != pseudo.shape or pseudo.shape[-1] != 2:
        raise ShapeMismatchError(
            f"predictions {preds.shape} vs pseudo-labels {pseudo.shape}"
        )
    if visibility.shape != pseudo.shape[:-1]:
        raise ShapeMismatchError(
            f"visibility {visibility.shape} vs tracks {pseudo.shape}"
        )
    if confidence is not None and confidence.shape != visibility.shape:
        raise ShapeMismatchError(f"confidence {confidence.shape} vs {visibility.shape}")
    cfg = (cfg or LossConfig(iterations=preds.shape[0])).validate()

    weights = track_weights(visibility, confidence, cfg)
    per_iteration = [
        float(np.mean(weights * np.abs(pred - pseudo).sum(axis=-1))) for pred in preds
    ]
    decay = iteration_weights(len(preds), cfg.gamma)
    return float(cfg.alpha * np.dot(decay, per_iteration))


def _flow_array(flow: Union[FlowField, np.ndarray]) -> np.ndarray:
    if isinstance(flow, FlowField):
        return flow.as_array().astype(np.float64)
    return np.asarray(flow, dtype=np.float64)


def flow_loss(
    preds: Union[np.ndarray, Sequence[FlowField]],
    pseudo: Union[FlowField, np.ndarray],
    cfg: Optional[LossConfig] = None,
) -> float:
    """Iteration-decayed mean per-pixel L1 between flow fields, as (K, H, W, 2)."""
    if isinstance(preds, np.ndarray):
        stacked = preds.astype(np.float64)
    else:
        stacked = np.stack([_flow_array(p) for p in preds])
    target = _flow_array(pseudo)
    require_finite("flow", stacked, target)
    if stacked.ndim != 4 or stacked.shape[1:] != target.shape:
        raise ShapeMismatchError(
            f"predictions {stacked.shape} vs pseudo-label {target.shape}"
        )
    cfg = (cfg or LossConfig(iterations=stacked.shape[0])).validate()

    per_iteration = [
        float(np.mean(np.abs(pred - target).sum(axis=-1))) for pred in stacked
    ]
    decay = iteration_weights(len(stacked), cfg.gamma)
    return float(np.dot(decay, per_iteration))


def total_loss(track: float, flow: float, flow_weight=DEFAULT_LOSS_LAMBDA) -> float:
    require_finite("total", np.asarray([track, flow, flow_weight], dtype=np.float64))
    return float(track + flow_weight * flow)
