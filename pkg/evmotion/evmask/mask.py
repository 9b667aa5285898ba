# -*- coding: utf-8 -*-

import logging
from dataclasses import dataclass
from enum import Enum, unique
from typing import Optional, Sequence, Tuple

import numpy as np

from evmotion.errors import ConfigError, ShapeMismatchError, ValidationError
from evmotion.evstream.model import EventStream
from evmotion.evstream.window import (
    WindowSide,
    window_by_count,
    window_by_time,
    window_closest,
)
from evmotion.variables import DEFAULT_N_NARROW, DEFAULT_N_WIDE

logger = logging.getLogger(__name__)


@unique
class WindowMode(Enum):
    COUNT_BASED = "count_based"
    TIME_BASED = "time_based"


@dataclass(frozen=True)
class MaskWindowConfig:
    n_wide: int = DEFAULT_N_WIDE
    n_narrow: int = DEFAULT_N_NARROW
    mode: WindowMode = WindowMode.COUNT_BASED
    wide_us: Optional[int] = None
    narrow_us: Optional[int] = None

    def validate(self) -> "MaskWindowConfig":
        if self.n_wide < 0 or self.n_narrow < 0:
            raise ConfigError("window event counts must be non-negative")
        if self.n_narrow > self.n_wide:
            raise ConfigError(
                f"n_narrow={self.n_narrow} exceeds n_wide={self.n_wide}", "n_narrow"
            )
        if WindowMode(self.mode) is WindowMode.TIME_BASED:
            if self.wide_us is None or self.narrow_us is None:
                raise ConfigError("time windows need wide_us and narrow_us", "mode")
            if not 0 <= self.narrow_us < self.wide_us:
                raise ConfigError("need 0 <= narrow_us < wide_us", "narrow_us")
        return self


def activation_map(stream: EventStream) -> np.ndarray:
    """Pixels where at least one event fired, regardless of polarity."""
    active = np.zeros(stream.width * stream.height, dtype=bool)
    active[stream.pixel_index] = True
    return active.reshape(stream.shape)


def event_motion_mask_simple(a_minus: np.ndarray, a_plus: np.ndarray) -> np.ndarray:
    a_minus = np.asarray(a_minus)
    a_plus = np.asarray(a_plus)
    if a_minus.shape != a_plus.shape:
        raise ShapeMismatchError(
            f"activation maps differ: {a_minus.shape} vs {a_plus.shape}"
        )
    return (a_minus > 0) & (a_plus > 0)


def two_scale_activations(
    stream: EventStream,
    t_prev: int,
    t_cur: int,
    cfg: MaskWindowConfig,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Narrow maps at both frames, wide-before at ``t_prev``, wide-after at ``t_cur``.

    The wide maps catch slow persistent motion between the two frames.
    """
    narrow_prev = activation_map(window_closest(stream, t_prev, cfg.n_narrow))
    narrow_cur = activation_map(window_closest(stream, t_cur, cfg.n_narrow))
    before = window_by_count(stream, t_prev, cfg.n_wide, WindowSide.BEFORE)
    after = window_by_count(stream, t_cur, cfg.n_wide, WindowSide.AFTER)
    wide_prev = activation_map(before)
    wide_cur = activation_map(after)
    return narrow_prev, narrow_cur, wide_prev, wide_cur


def event_motion_mask_two_scale(
    stream: EventStream,
    t_prev: int,
    t_cur: int,
    cfg: Optional[MaskWindowConfig] = None,
) -> np.ndarray:
    """Union of the two narrow activations with the intersection of the wide ones."""
    cfg = (cfg or MaskWindowConfig()).validate()
    if t_prev > t_cur:
        raise ValidationError(f"t_prev={t_prev} is after t_cur={t_cur}")
    narrow_prev, narrow_cur, wide_prev, wide_cur = two_scale_activations(
        stream, t_prev, t_cur, cfg
    )
    return (narrow_prev | narrow_cur) | (wide_prev & wide_cur)


def event_motion_mask_timed(
    stream: EventStream,
    t: int,
    wide_us: int,
    narrow_us: int,
) -> np.ndarray:
    """Pixels active in ``[t - wide, t + narrow]`` and in ``[t - narrow, t + wide]``."""
    if not 0 <= narrow_us < wide_us:
        raise ConfigError(f"need 0 <= narrow_us < wide_us, got {narrow_us}, {wide_us}")
    a_minus = activation_map(window_by_time(stream, t - wide_us, t + narrow_us))
    a_plus = activation_map(window_by_time(stream, t - narrow_us, t + wide_us))
    return event_motion_mask_simple(a_minus, a_plus)


def event_motion_masks(
    stream: EventStream,
    timestamps: Sequence[int],
    cfg: Optional[MaskWindowConfig] = None,
):
    """One mask per frame timestamp; the first frame pairs with itself."""
    cfg = (cfg or MaskWindowConfig()).validate()
    mode = WindowMode(cfg.mode)
    previous = None
    for t in timestamps:
        t = int(t)
        if mode is WindowMode.TIME_BASED:
            assert cfg.wide_us is not None and cfg.narrow_us is not None
            yield t, event_motion_mask_timed(stream, t, cfg.wide_us, cfg.narrow_us)
        else:
            t_prev = t if previous is None else previous
            yield t, event_motion_mask_two_scale(stream, t_prev, t, cfg)
        previous = t
