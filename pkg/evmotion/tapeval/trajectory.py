# -*- coding: utf-8 -*-

from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from evmotion.errors import ShapeMismatchError, ValidationError


@dataclass(frozen=True, eq=False)
class TrajectorySet:
    """Per-query, per-frame point tracks.

    ``positions`` is (N_q, T, 2) in pixels (x, y); ``visibility`` and the
    optional ``confidence`` are (N_q, T) in [0, 1]; ``query_frames`` is (N_q,).
    """

    positions: np.ndarray
    visibility: np.ndarray
    query_frames: np.ndarray
    confidence: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.positions.ndim != 3 or self.positions.shape[2] != 2:
            raise ShapeMismatchError(
                f"positions must be (N, T, 2), got {self.positions.shape}"
            )
        if self.visibility.shape != self.positions.shape[:2]:
            raise ShapeMismatchError("visibility must be (N, T)")
        if self.query_frames.shape != self.positions.shape[:1]:
            raise ShapeMismatchError("query_frames must be (N,)")
        confidence = self.confidence
        if confidence is not None and confidence.shape != self.visibility.shape:
            raise ShapeMismatchError("confidence must be (N, T)")
        if not np.all(np.isfinite(self.positions)):
            raise ValidationError("trajectory positions must be finite")
        if np.any((self.visibility < 0) | (self.visibility > 1)):
            raise ValidationError("visibility must lie in [0, 1]")
        if np.any((self.query_frames < 0) | (self.query_frames >= self.frames)):
            raise ValidationError("query frame outside the trajectory")

    @property
    def queries(self) -> int:
        return int(self.positions.shape[0])

    @property
    def frames(self) -> int:
        return int(self.positions.shape[1])

    def subset(self, index) -> "TrajectorySet":
        return TrajectorySet(
            positions=self.positions[index],
            visibility=self.visibility[index],
            query_frames=self.query_frames[index],
            confidence=None if self.confidence is None else self.confidence[index],
        )


@dataclass(frozen=True, eq=False)
class ObjectMaskSequence:
    """Per-frame object masks: ``frames[t][object_id]`` is an (H, W) bool map."""

    frames: List[Dict[int, np.ndarray]]
    height: int
    width: int

    def __post_init__(self):
        for t, objects in enumerate(self.frames):
            for object_id, mask in objects.items():
                if mask.shape != (self.height, self.width):
                    raise ShapeMismatchError(
                        f"mask {mask.shape} differs from {(self.height, self.width)}",
                        f"frame[{t}].object[{object_id}]",
                    )

    def __len__(self) -> int:
        return len(self.frames)

    def get(self, t: int, object_id: int) -> Optional[np.ndarray]:
        if t < 0 or t >= len(self.frames):
            return None
        return self.frames[t].get(object_id)

    @property
    def object_ids(self) -> List[int]:
        ids = set()
        for objects in self.frames:
            ids.update(objects.keys())
        return sorted(ids)
