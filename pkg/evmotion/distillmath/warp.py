# -*- coding: utf-8 -*-

from typing import Union

import numpy as np
from scipy import ndimage

from evmotion.distillmath.loss import require_finite
from evmotion.errors import ConfigError, ShapeMismatchError
from evmotion.flowdecomp.field import FlowField


def _flow(flow: Union[FlowField, np.ndarray]) -> np.ndarray:
    if isinstance(flow, FlowField):
        return flow.as_array()
    flow = np.asarray(flow)
    if flow.ndim != 3 or flow.shape[2] != 2:
        raise ShapeMismatchError(f"flow must be (H, W, 2), got {flow.shape}")
    return flow


def backward_warp(image: np.ndarray, flow: Union[FlowField, np.ndarray]) -> np.ndarray:
    """Bilinear sample of ``image`` at ``x + flow(x)`` with edge replication.

    ``image`` is (H, W) or (H, W, C); the result keeps its shape and dtype.
    """
    image = np.asarray(image)
    displacement = _flow(flow)
    if image.shape[:2] != displacement.shape[:2]:
        raise ShapeMismatchError(f"image {image.shape} vs flow {displacement.shape}")
    require_finite("warp", image, displacement)

    height, width = image.shape[:2]
    ys, xs = np.indices((height, width), dtype=np.float64)
    coords = np.stack([ys + displacement[..., 1], xs + displacement[..., 0]])
    if image.ndim == 2:
        return ndimage.map_coordinates(image, coords, order=1, mode="nearest")
    channels = [
        ndimage.map_coordinates(image[..., c], coords, order=1, mode="nearest")
        for c in range(image.shape[2])
    ]
    return np.stack(channels, axis=-1)


def blend_bidirectional(z0t: np.ndarray, z1t: np.ndarray, t_norm: float) -> np.ndarray:
    z0t = np.asarray(z0t)
    z1t = np.asarray(z1t)
    if z0t.shape != z1t.shape:
        raise ShapeMismatchError(f"warped latents differ: {z0t.shape} vs {z1t.shape}")
    if not 0 <= t_norm <= 1:
        raise ConfigError(f"t_norm must lie in [0, 1], got {t_norm}", "t_norm")
    if t_norm == 0:
        return z0t.copy()
    if t_norm == 1:
        return z1t.copy()
    return (1.0 - t_norm) * z0t + t_norm * z1t


def resize_flow(flow: Union[FlowField, np.ndarray], factor: int) -> np.ndarray:
    """Average-pool a flow field by ``factor`` and rescale its displacements."""
    flow = _flow(flow).astype(np.float64)
    if factor < 1:
        raise ConfigError(f"factor must be >= 1, got {factor}", "factor")
    height, width = flow.shape[:2]
    if height % factor or width % factor:
        raise ShapeMismatchError(f"flow {height}x{width} is not divisible by {factor}")
    blocks = flow.reshape(height // factor, factor, width // factor, factor, 2)
    pooled = blocks.mean(axis=(1, 3))
    return pooled / factor


def warp_and_blend(
    z0: np.ndarray,
    z1: np.ndarray,
    flow_t0: Union[FlowField, np.ndarray],
    flow_t1: Union[FlowField, np.ndarray],
    t_norm: float,
) -> np.ndarray:
    """Warp both keyframe latents to time ``t`` and blend by temporal proximity.

    ``flow_t0`` and ``flow_t1`` map target-time pixels to frame 0 and frame 1.
    """
    z0t = backward_warp(z0, flow_t0)
    z1t = backward_warp(z1, flow_t1)
    return blend_bidirectional(z0t, z1t, t_norm)
