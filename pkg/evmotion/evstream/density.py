# -*- coding: utf-8 -*-

from typing import List, NamedTuple

import numpy as np

from evmotion.errors import ConfigError
from evmotion.evstream.model import EventStream
from evmotion.variables import DEFAULT_DENSITY_PATCH, DEFAULT_DENSITY_TOPK


class DensityPatch(NamedTuple):
    row: int
    col: int
    count: int


def patch_grid_shape(width: int, height: int, patch: int):
    return -(-height // patch), -(-width // patch)


def event_density_topk(
    stream: EventStream,
    patch=DEFAULT_DENSITY_PATCH,
    k=DEFAULT_DENSITY_TOPK,
) -> List[DensityPatch]:
    """Densest ``patch x patch`` grid cells, ties resolved in row-major order."""
    if patch < 1:
        raise ConfigError(f"patch must be >= 1, got {patch}", "patch")
    if k <= 0 or len(stream) == 0:
        return list()

    rows, cols = patch_grid_shape(stream.width, stream.height, patch)
    cell = (stream.y // patch).astype(np.int64) * cols + stream.x // patch
    counts = np.bincount(cell, minlength=rows * cols)

    nonzero = np.flatnonzero(counts)
    order = np.lexsort((nonzero, -counts[nonzero]))
    result = list()
    for index in nonzero[order[:k]]:
        row, col = divmod(int(index), cols)
        result.append(DensityPatch(row=row, col=col, count=int(counts[index])))
    return result
