# -*- coding: utf-8 -*-

from typing import Iterable

import numpy as np

from evmotion.evstream.model import EventStream


def compute_iei(stream: EventStream) -> np.ndarray:
    """Inter-event intervals (microseconds) between consecutive events per pixel.

    Polarity is ignored. Intervals are grouped by pixel in row-major order and
    kept in time order within a pixel.
    """
    if len(stream) < 2:
        return np.zeros(0, dtype=np.int64)
    pixel = stream.pixel_index
    # The stream is time-sorted, so a stable sort by pixel keeps time order.
    order = np.argsort(pixel, kind="stable")
    pixel = pixel[order]
    t = stream.t[order]
    same = pixel[1:] == pixel[:-1]
    return np.diff(t)[same]


def compute_iei_many(streams: Iterable[EventStream]) -> np.ndarray:
    """Union of the per-pixel intervals of several sequences."""
    parts = [compute_iei(stream) for stream in streams]
    if not parts:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(parts)
