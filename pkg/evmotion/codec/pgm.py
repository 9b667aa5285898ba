# -*- coding: utf-8 -*-

import re
from pathlib import Path
from typing import Union

import numpy as np

from evmotion.errors import ParseError

_HEADER_TOKEN = re.compile(rb"(?:\s|#[^\n]*\n)*(\S+)")


def encode_pgm(image: np.ndarray) -> bytes:
    """Binary PGM (P5); boolean masks are written as 0/255."""
    if image.ndim != 2:
        raise ValueError(f"PGM image must be 2-D, got shape {image.shape}")
    if image.dtype == np.bool_:
        pixels = np.where(image, 255, 0).astype(np.uint8)
    else:
        pixels = np.ascontiguousarray(image, dtype=np.uint8)
    height, width = pixels.shape
    return b"P5\n%d %d\n255\n" % (width, height) + pixels.tobytes()


def decode_pgm(data: bytes) -> np.ndarray:
    offset = 0
    tokens = list()
    for _ in range(4):
        match = _HEADER_TOKEN.match(data, offset)
        if match is None:
            raise ParseError("truncated PGM header", offset=offset)
        tokens.append(match.group(1))
        offset = match.end()

    if tokens[0] != b"P5":
        raise ParseError("only binary PGM (P5) is supported", offset=0)
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise ParseError("non-integer PGM header field", offset=offset)
    if maxval != 255:
        raise ParseError(f"maxval must be 255, got {maxval}", offset=offset)

    # A single whitespace byte separates the header from the raster.
    offset += 1
    if len(data) - offset != width * height:
        raise ParseError(
            f"raster must hold {width}x{height} bytes",
            offset=min(len(data), offset + width * height),
        )
    return np.frombuffer(data, dtype=np.uint8, offset=offset).reshape(height, width)


def write_mask(path: Union[str, Path], mask: np.ndarray) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(encode_pgm(np.asarray(mask, dtype=bool)))
    return target


def read_mask(path: Union[str, Path]) -> np.ndarray:
    return decode_pgm(Path(path).read_bytes()) > 127
