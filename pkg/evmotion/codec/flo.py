# -*- coding: utf-8 -*-

from pathlib import Path
from typing import Final, Union

import numpy as np

from evmotion.errors import ParseError

FLO_TAG: Final[float] = 202021.25
FLO_HEADER_DTYPE: Final[np.dtype] = np.dtype(
    [("tag", "<f4"), ("width", "<i4"), ("height", "<i4")]
)


def decode_flo(data: bytes) -> np.ndarray:
    """Decode a Middlebury ``.flo`` payload into an (H, W, 2) float32 array."""
    header_size = FLO_HEADER_DTYPE.itemsize
    if len(data) < header_size:
        raise ParseError("truncated .flo header", offset=len(data))
    header = np.frombuffer(data, dtype=FLO_HEADER_DTYPE, count=1)[0]
    if float(header["tag"]) != FLO_TAG:
        raise ParseError("magic number incorrect, invalid .flo file", offset=0)

    width, height = int(header["width"]), int(header["height"])
    if width <= 0 or height <= 0:
        raise ParseError(f"invalid .flo size {width}x{height}", offset=4)
    expected = header_size + width * height * 2 * 4
    if len(data) != expected:
        raise ParseError(
            f".flo body must hold {width}x{height} vectors",
            offset=min(len(data), expected),
        )
    flow = np.frombuffer(data, dtype="<f4", offset=header_size)
    return flow.reshape(height, width, 2).astype(np.float32)


def encode_flo(flow: np.ndarray) -> bytes:
    flow = np.ascontiguousarray(flow, dtype="<f4")
    if flow.ndim != 3 or flow.shape[2] != 2:
        raise ValueError(f"flow must have shape (H, W, 2), got {flow.shape}")
    header = np.zeros(1, dtype=FLO_HEADER_DTYPE)
    header["tag"] = FLO_TAG
    header["width"] = flow.shape[1]
    header["height"] = flow.shape[0]
    return header.tobytes() + flow.tobytes()


def read_flo(path: Union[str, Path]) -> np.ndarray:
    return decode_flo(Path(path).read_bytes())


def write_flo(path: Union[str, Path], flow: np.ndarray) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(encode_flo(flow))
    return target
