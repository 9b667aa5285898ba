# -*- coding: utf-8 -*-

from enum import Enum, unique

from evmotion.errors import ConfigError
from evmotion.evstream.model import EventStream


@unique
class WindowSide(Enum):
    BEFORE = "before"
    AFTER = "after"


def window_by_count(
    stream: EventStream, t: int, n: int, side: WindowSide
) -> EventStream:
    """Up to ``n`` events next to ``t``.

    ``BEFORE`` is closed on the right (timestamps <= t), ``AFTER`` is open on
    the left (timestamps > t); both are returned in time order.
    """
    if n < 0:
        raise ConfigError(f"n must be >= 0, got {n}", "n")
    pivot = stream.index_after(t)
    side = WindowSide(side)
    if side is WindowSide.BEFORE:
        return stream.slice(pivot - n, pivot)
    return stream.slice(pivot, pivot + n)


def window_closest(stream: EventStream, t: int, n: int) -> EventStream:
    """The ``n`` events closest to ``t`` in index order, split around ``t``.

    ``ceil(n / 2)`` come from at or before ``t`` and ``floor(n / 2)`` after it;
    a side that runs out does not borrow from the other.
    """
    if n < 0:
        raise ConfigError(f"n must be >= 0, got {n}", "n")
    pivot = stream.index_after(t)
    return stream.slice(max(0, pivot - (n - n // 2)), pivot + n // 2)


def window_by_time(stream: EventStream, begin: int, end: int) -> EventStream:
    """Events with ``begin <= t <= end``."""
    if end < begin:
        raise ConfigError(f"empty time window [{begin}, {end}]")
    return stream.between(begin, end)
