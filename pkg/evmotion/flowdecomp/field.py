# -*- coding: utf-8 -*-

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from evmotion.codec.flo import read_flo, write_flo
from evmotion.codec.raw import read_raw_f32, write_raw_f32
from evmotion.errors import ShapeMismatchError, ValidationError


def _check_unit_map(name: str, plane: Optional[np.ndarray], shape: Tuple[int, int]):
    if plane is None:
        return None
    plane = np.asarray(plane, dtype=np.float32)
    if plane.shape != shape:
        raise ShapeMismatchError(f"{plane.shape} does not match flow {shape}", name)
    if not np.all(np.isfinite(plane)):
        raise ValidationError("non-finite values", key=name)
    if np.any(plane < 0) or np.any(plane > 1):
        raise ValidationError("values must lie in [0, 1]", key=name)
    return plane


@dataclass(frozen=True, eq=False)
class FlowField:
    """Dense displacement ``(u, v)`` in pixels with optional visibility/confidence."""

    u: np.ndarray
    v: np.ndarray
    visibility: Optional[np.ndarray] = None
    confidence: Optional[np.ndarray] = None

    def __post_init__(self):
        u = np.asarray(self.u, dtype=np.float32)
        v = np.asarray(self.v, dtype=np.float32)
        if u.ndim != 2 or u.shape != v.shape:
            raise ShapeMismatchError(
                f"u {u.shape} and v {v.shape} must be equal 2D maps"
            )
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise ValidationError("flow contains non-finite values", key="flow")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(
            self, "visibility", _check_unit_map("visibility", self.visibility, u.shape)
        )
        object.__setattr__(
            self, "confidence", _check_unit_map("confidence", self.confidence, u.shape)
        )

    @classmethod
    def from_array(
        cls, flow: np.ndarray, visibility=None, confidence=None
    ) -> "FlowField":
        flow = np.asarray(flow)
        if flow.ndim != 3 or flow.shape[2] != 2:
            raise ShapeMismatchError(f"flow must be (H, W, 2), got {flow.shape}")
        return cls(flow[..., 0], flow[..., 1], visibility, confidence)

    @property
    def height(self) -> int:
        return int(self.u.shape[0])

    @property
    def width(self) -> int:
        return int(self.u.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.height, self.width

    @property
    def magnitude(self) -> np.ndarray:
        return np.hypot(self.u, self.v)

    def as_array(self) -> np.ndarray:
        return np.stack([self.u, self.v], axis=-1)

    def visibility_or_ones(self) -> np.ndarray:
        if self.visibility is None:
            return np.ones(self.shape, dtype=np.float32)
        return self.visibility

    def confidence_or_ones(self) -> np.ndarray:
        if self.confidence is None:
            return np.ones(self.shape, dtype=np.float32)
        return self.confidence

    def crop(self, x: int, y: int, width: int, height: int) -> "FlowField":
        if x < 0 or y < 0 or x + width > self.width or y + height > self.height:
            raise ValidationError(
                f"crop ({x}, {y}, {width}, {height}) outside {self.width}x{self.height}"
            )
        rows, cols = slice(y, y + height), slice(x, x + width)
        return FlowField(
            self.u[rows, cols],
            self.v[rows, cols],
            None if self.visibility is None else self.visibility[rows, cols],
            None if self.confidence is None else self.confidence[rows, cols],
        )


def read_flow_field(
    flo_path: Union[str, Path],
    visibility_path: Union[str, Path, None] = None,
    confidence_path: Union[str, Path, None] = None,
) -> FlowField:
    """Load a ``.flo`` file plus optional raw float32 visibility/confidence planes."""
    flow = read_flo(flo_path)
    shape = flow.shape[:2]
    visibility = None
    confidence = None
    if visibility_path is not None:
        visibility, _ = read_raw_f32(visibility_path, shape)
    if confidence_path is not None:
        confidence, _ = read_raw_f32(confidence_path, shape)
    return FlowField.from_array(flow, visibility, confidence)


def plane_paths(flo_path: Union[str, Path]) -> Tuple[Path, Path]:
    """Visibility and confidence files stored next to a ``.flo`` field."""
    path = Path(flo_path)
    return path.with_suffix(".vis.f32"), path.with_suffix(".conf.f32")


def write_flow_field(flo_path: Union[str, Path], field: FlowField) -> Path:
    target = write_flo(flo_path, field.as_array())
    visibility_path, confidence_path = plane_paths(target)
    if field.visibility is not None:
        header = {"plane": "visibility"}
        write_raw_f32(visibility_path, field.visibility, header)
    if field.confidence is not None:
        header = {"plane": "confidence"}
        write_raw_f32(confidence_path, field.confidence, header)
    return target


def load_flow_field(flo_path: Union[str, Path]) -> FlowField:
    """Read a ``.flo`` field with whichever sibling planes exist on disk."""
    visibility_path, confidence_path = plane_paths(flo_path)
    return read_flow_field(
        flo_path,
        visibility_path if visibility_path.exists() else None,
        confidence_path if confidence_path.exists() else None,
    )
