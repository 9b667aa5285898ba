# -*- coding: utf-8 -*-

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from evmotion.errors import ConfigError
from evmotion.evstream.model import EventStream
from evmotion.variables import DEFAULT_STACK_BINS, DEFAULT_STACK_EVENTS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StackConfig:
    events: int = DEFAULT_STACK_EVENTS
    bins: int = DEFAULT_STACK_BINS

    def check(self) -> "StackConfig":
        if self.events < 1:
            raise ConfigError(f"N must be >= 1, got {self.events}", "events")
        if self.bins < 1:
            raise ConfigError(f"B must be >= 1, got {self.bins}", "bins")
        return self

    def validate(self) -> "StackConfig":
        """``check`` plus a warning when the oldest bins cannot fill up."""
        self.check()
        if self.events < (1 << (self.bins - 1)):
            logger.warning(
                "N=%d is smaller than 2^(B-1)=%d; the oldest bins hold one event",
                self.events,
                1 << (self.bins - 1),
            )
        return self


@dataclass(frozen=True, eq=False)
class EventStack:
    width: int
    height: int
    bins: int
    data: np.ndarray  # (H, W, B) int32
    t_ref: int
    counts: Tuple[int, ...]

    def as_float32(self) -> np.ndarray:
        return np.ascontiguousarray(self.data, dtype="<f4")


def stack_quotas(events: int, bins: int) -> Tuple[int, ...]:
    """Per-bin event quotas ``floor(N / 2^(B-b))`` for ``b = 1..B``, at least 1."""
    return tuple(max(1, events >> (bins - b)) for b in range(1, bins + 1))


def accumulate_polarity(stream: EventStream) -> np.ndarray:
    """Signed per-pixel polarity sums as an (H, W) int32 map."""
    size = stream.width * stream.height
    if len(stream) == 0:
        return np.zeros(stream.shape, dtype=np.int32)
    index = stream.pixel_index
    on = stream.p > 0
    total = np.bincount(index[on], minlength=size).astype(np.int64)
    total -= np.bincount(index[~on], minlength=size)
    return total.astype(np.int32).reshape(stream.shape)


def build_event_stack(stream: EventStream, t: int, cfg: StackConfig) -> EventStack:
    """Multi-scale polarity stack over the most recent events at or before ``t``.

    Bin ``b`` accumulates the newest ``floor(N / 2^(B-b))`` of the up-to-N
    events with timestamp <= t, so the last bin covers the whole window.
    """
    cfg.check()
    stop = stream.index_after(t)
    window = stream.slice(stop - cfg.events, stop)
    available = len(window)

    data = np.zeros((stream.height, stream.width, cfg.bins), dtype=np.int32)
    counts = list()
    for b, quota in enumerate(stack_quotas(cfg.events, cfg.bins)):
        used = min(quota, available)
        counts.append(used)
        if used:
            chunk = window.slice(available - used, available)
            data[:, :, b] = accumulate_polarity(chunk)

    return EventStack(
        width=stream.width,
        height=stream.height,
        bins=cfg.bins,
        data=data,
        t_ref=int(t),
        counts=tuple(counts),
    )
