# -*- coding: utf-8 -*-

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

import numpy as np

from evmotion.errors import ValidationError

POLARITY_ON = 1
POLARITY_OFF = -1


class Event(NamedTuple):
    x: int
    y: int
    t: int
    p: int


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def validate_events(
    width: int,
    height: int,
    x: np.ndarray,
    y: np.ndarray,
    p: np.ndarray,
) -> None:
    if width <= 0 or height <= 0:
        raise ValidationError(f"invalid sensor size {width}x{height}")

    bad_x = (x < 0) | (x >= width)
    bad_y = (y < 0) | (y >= height)
    out_of_bounds = np.flatnonzero(bad_x | bad_y)
    if out_of_bounds.size:
        i = int(out_of_bounds[0])
        raise ValidationError(
            f"event ({int(x[i])}, {int(y[i])}) outside {width}x{height} sensor",
            index=i,
        )

    bad_p = np.flatnonzero((p != POLARITY_ON) & (p != POLARITY_OFF))
    if bad_p.size:
        i = int(bad_p[0])
        raise ValidationError(f"polarity must be -1 or +1, got {int(p[i])}", index=i)


@dataclass(frozen=True, eq=False)
class EventStream:
    """Time-sorted events of one sensor, stored column-wise.

    The arrays are read-only; slicing returns views sharing the same memory.
    """

    width: int
    height: int
    x: np.ndarray
    y: np.ndarray
    t: np.ndarray
    p: np.ndarray

    @classmethod
    def from_arrays(
        cls,
        width: int,
        height: int,
        x: Iterable[int],
        y: Iterable[int],
        t: Iterable[int],
        p: Iterable[int],
        *,
        validate=True,
    ) -> "EventStream":
        xs = np.array(x, dtype=np.int32).reshape(-1)
        ys = np.array(y, dtype=np.int32).reshape(-1)
        ts = np.array(t, dtype=np.int64).reshape(-1)
        ps = np.array(p, dtype=np.int8).reshape(-1)
        if not (len(xs) == len(ys) == len(ts) == len(ps)):
            raise ValidationError("event columns have different lengths")

        if validate:
            validate_events(width, height, xs, ys, ps)

        if ts.size > 1 and np.any(ts[1:] < ts[:-1]):
            order = np.argsort(ts, kind="stable")
            xs, ys, ts, ps = xs[order], ys[order], ts[order], ps[order]

        return cls(
            width=int(width),
            height=int(height),
            x=_readonly(np.ascontiguousarray(xs)),
            y=_readonly(np.ascontiguousarray(ys)),
            t=_readonly(np.ascontiguousarray(ts)),
            p=_readonly(np.ascontiguousarray(ps)),
        )

    @classmethod
    def from_events(
        cls,
        width: int,
        height: int,
        events: Sequence[Event],
    ) -> "EventStream":
        if not events:
            return cls.empty(width, height)
        columns = np.asarray(events, dtype=np.int64).reshape(-1, 4)
        return cls.from_arrays(
            width, height, columns[:, 0], columns[:, 1], columns[:, 2], columns[:, 3]
        )

    @classmethod
    def empty(cls, width: int, height: int) -> "EventStream":
        return cls.from_arrays(width, height, [], [], [], [])

    def __len__(self) -> int:
        return int(self.t.size)

    def __iter__(self) -> Iterator[Event]:
        for x, y, t, p in zip(self.x, self.y, self.t, self.p):
            yield Event(int(x), int(y), int(t), int(p))

    @property
    def shape(self):
        return self.height, self.width

    @property
    def pixel_index(self) -> np.ndarray:
        """Row-major linear pixel index of every event."""
        return self.y.astype(np.int64) * self.width + self.x

    def slice(self, start: int, stop: int) -> "EventStream":
        start = max(0, start)
        stop = max(start, min(stop, len(self)))
        return EventStream(
            width=self.width,
            height=self.height,
            x=self.x[start:stop],
            y=self.y[start:stop],
            t=self.t[start:stop],
            p=self.p[start:stop],
        )

    def between(self, begin: Optional[int], end: Optional[int]) -> "EventStream":
        """Events with ``begin <= t <= end``; ``None`` leaves a side open."""
        start = 0 if begin is None else int(np.searchsorted(self.t, begin, "left"))
        stop = len(self) if end is None else int(np.searchsorted(self.t, end, "right"))
        return self.slice(start, stop)

    def index_after(self, t: int) -> int:
        """Index of the first event with timestamp strictly greater than ``t``."""
        return int(np.searchsorted(self.t, t, side="right"))

    def concat(self, other: "EventStream") -> "EventStream":
        if self.shape != other.shape:
            raise ValidationError("cannot merge streams of different sensors")
        return EventStream.from_arrays(
            self.width,
            self.height,
            np.concatenate([self.x, other.x]),
            np.concatenate([self.y, other.y]),
            np.concatenate([self.t, other.t]),
            np.concatenate([self.p, other.p]),
            validate=False,
        )

    def scaled(self, scale: float, offset: int = 0) -> "EventStream":
        """Copy with timestamps mapped to ``round(t * scale) + offset``."""
        ts = np.rint(self.t.astype(np.float64) * scale).astype(np.int64) + offset
        return EventStream.from_arrays(
            self.width, self.height, self.x, self.y, ts, self.p, validate=False
        )
