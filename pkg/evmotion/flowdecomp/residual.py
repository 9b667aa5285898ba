# -*- coding: utf-8 -*-

from typing import NamedTuple

import numpy as np

from evmotion.errors import ShapeMismatchError
from evmotion.flowdecomp.field import FlowField
from evmotion.flowdecomp.ransac import AffineModel
from evmotion.variables import (
    DEFAULT_GATE_POWER,
    DEFAULT_K_MAD,
    DEFAULT_VIS_MIN,
    MAD_CONSISTENCY_CONSTANT,
)


class MadThreshold(NamedTuple):
    tau: float
    median: float
    mad: float


def residual_flow(flow: FlowField, model: AffineModel) -> np.ndarray:
    """Per-pixel ``|F(x) - A [x, y, 1]|`` as an (H, W) float64 map."""
    predicted = model.predict_grid(flow.height, flow.width)
    du = flow.u.astype(np.float64) - predicted[..., 0]
    dv = flow.v.astype(np.float64) - predicted[..., 1]
    return np.hypot(du, dv)


def confidence_gate(
    visibility: np.ndarray,
    confidence: np.ndarray,
    vis_min=DEFAULT_VIS_MIN,
    power=DEFAULT_GATE_POWER,
) -> np.ndarray:
    visibility = np.asarray(visibility, dtype=np.float64)
    confidence = np.asarray(confidence, dtype=np.float64)
    if visibility.shape != confidence.shape:
        raise ShapeMismatchError(
            f"visibility {visibility.shape} and confidence {confidence.shape} differ"
        )
    visible = (visibility >= vis_min).astype(np.float64)
    return visible * np.clip(confidence, 0.0, 1.0) ** power


def mad_threshold(values: np.ndarray, k_mad=DEFAULT_K_MAD) -> MadThreshold:
    values = np.asarray(values, dtype=np.float64)
    median = float(np.median(values))
    mad = float(np.median(np.abs(values - median)))
    return MadThreshold(median + k_mad * MAD_CONSISTENCY_CONSTANT * mad, median, mad)


def object_motion_mask(
    residual: np.ndarray,
    gate: np.ndarray,
    k_mad=DEFAULT_K_MAD,
) -> np.ndarray:
    """Pixels whose gated residual strictly exceeds the robust MAD threshold."""
    residual = np.asarray(residual, dtype=np.float64)
    gate = np.asarray(gate, dtype=np.float64)
    if residual.shape != gate.shape:
        raise ShapeMismatchError(
            f"residual {residual.shape} and gate {gate.shape} differ"
        )
    gated = residual * gate
    return gated > mad_threshold(gated, k_mad).tau
