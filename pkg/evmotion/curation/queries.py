# -*- coding: utf-8 -*-

import logging
from dataclasses import dataclass
from enum import Enum, unique
from typing import List

import numpy as np

from evmotion.curation.crop import CropRect
from evmotion.errors import ConfigError, ShapeMismatchError
from evmotion.variables import DEFAULT_OBJECT_FRACTION

logger = logging.getLogger(__name__)


@unique
class QueryOrigin(Enum):
    OBJECT = "object"
    UNIFORM = "uniform"


@dataclass(frozen=True, eq=False)
class QuerySet:
    """Query points ``(x, y, t)`` in crop-local pixels with their origin."""

    points: np.ndarray  # (N, 3) int64
    on_object: np.ndarray  # (N,) bool, True for mask-drawn points
    fallback: bool = False

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def origins(self) -> List[QueryOrigin]:
        return [
            QueryOrigin.OBJECT if flag else QueryOrigin.UNIFORM
            for flag in self.on_object
        ]

    @property
    def object_count(self) -> int:
        return int(np.count_nonzero(self.on_object))


def object_query_count(n_queries: int, object_fraction: float) -> int:
    return int(np.floor(object_fraction * n_queries + 1e-9))


def sample_queries(
    mask: np.ndarray,
    crop: CropRect,
    n_queries: int,
    rng: np.random.Generator,
    object_fraction=DEFAULT_OBJECT_FRACTION,
    t_query: int = 0,
) -> QuerySet:
    """Draw ``floor(fraction * N)`` points from the mask and the rest uniformly.

    Mask points are drawn without replacement unless the mask is smaller than
    the request. An empty mask falls back to uniform sampling and sets
    ``fallback``.
    """
    if n_queries < 1:
        raise ConfigError(f"query count must be >= 1, got {n_queries}", "n_queries")
    if not 0 <= object_fraction <= 1:
        raise ConfigError("must lie in [0, 1]", "object_fraction")
    region = crop.cut(np.asarray(mask, dtype=bool))
    if region.shape != crop.shape:
        raise ShapeMismatchError(
            f"mask {region.shape} does not match crop {crop.shape}"
        )

    n_object = object_query_count(n_queries, object_fraction)
    pixels = np.flatnonzero(region)
    fallback = False
    if n_object > 0 and pixels.size == 0:
        logger.warning(
            "empty object mask, sampling all %d queries uniformly", n_queries
        )
        n_object = 0
        fallback = True

    chosen = pixels[:0]
    if n_object:
        chosen = rng.choice(pixels, size=n_object, replace=pixels.size < n_object)
    object_y, object_x = np.divmod(chosen.astype(np.int64), crop.width)

    n_uniform = n_queries - n_object
    uniform_x = rng.integers(0, crop.width, size=n_uniform)
    uniform_y = rng.integers(0, crop.height, size=n_uniform)

    xs = np.concatenate([object_x, uniform_x]).astype(np.int64)
    ys = np.concatenate([object_y, uniform_y]).astype(np.int64)
    ts = np.full(n_queries, t_query, dtype=np.int64)
    on_object = np.zeros(n_queries, dtype=bool)
    on_object[:n_object] = True
    return QuerySet(
        points=np.stack([xs, ys, ts], axis=1),
        on_object=on_object,
        fallback=fallback,
    )
