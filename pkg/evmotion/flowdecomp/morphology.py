# -*- coding: utf-8 -*-

import numpy as np
from scipy import ndimage

from evmotion.errors import ConfigError
from evmotion.variables import (
    DEFAULT_CLOSE_KERNEL,
    DEFAULT_MIN_COMPONENT,
    DEFAULT_OPEN_KERNEL,
)

# 8-connectivity for component labelling.
EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)


def ellipse_kernel(size: int) -> np.ndarray:
    """Centered ``size x size`` disc.

    Offsets ``(i, j)`` with ``(i/a)^2 + (j/a)^2 <= 1`` where ``a = (size-1)/2``.
    """
    if size < 1:
        raise ConfigError(f"kernel size must be >= 1, got {size}", "kernel")
    if size == 1:
        return np.ones((1, 1), dtype=bool)
    a = (size - 1) / 2.0
    offsets = np.arange(size) - a
    i, j = np.meshgrid(offsets, offsets, indexing="ij")
    return (i / a) ** 2 + (j / a) ** 2 <= 1.0 + 1e-12


def binary_erode(mask: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    # Pixels beyond the border count as set, so erosion never eats the frame edge.
    return ndimage.binary_erosion(mask, structure=kernel, border_value=1)


def binary_dilate(mask: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    return ndimage.binary_dilation(mask, structure=kernel, border_value=0)


def binary_open(mask: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    return binary_dilate(binary_erode(mask, kernel), kernel)


def binary_close(mask: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    return binary_erode(binary_dilate(mask, kernel), kernel)


def remove_small_components(mask: np.ndarray, min_component: int) -> np.ndarray:
    """Drop 8-connected blobs with fewer than ``min_component`` pixels."""
    labels, count = ndimage.label(mask, structure=EIGHT_CONNECTED)
    if count == 0:
        return np.zeros_like(mask, dtype=bool)
    sizes = np.bincount(labels.reshape(-1))
    keep = sizes >= min_component
    keep[0] = False
    return keep[labels]


def mask_cleanup(
    mask: np.ndarray,
    open_kernel=DEFAULT_OPEN_KERNEL,
    close_kernel=DEFAULT_CLOSE_KERNEL,
    min_component=DEFAULT_MIN_COMPONENT,
) -> np.ndarray:
    """Opening, then closing with elliptical kernels, then small-blob removal."""
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        return np.zeros_like(mask)
    opened = binary_open(mask, ellipse_kernel(open_kernel))
    closed = binary_close(opened, ellipse_kernel(close_kernel))
    return remove_small_components(closed, min_component)
