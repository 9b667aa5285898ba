# -*- coding: utf-8 -*-

from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from evmotion.driver.json import json_dumps, json_loads
from evmotion.errors import ParseError, ValidationError

SIDECAR_SUFFIX = ".json"


def sidecar_path(path: Union[str, Path]) -> Path:
    return Path(path).with_suffix(SIDECAR_SUFFIX)


def write_raw_f32(
    path: Union[str, Path],
    array: np.ndarray,
    meta: Optional[Dict[str, Any]] = None,
) -> Tuple[Path, Path]:
    """Write a little-endian float32 payload and its JSON sidecar."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    payload = np.ascontiguousarray(array, dtype="<f4")
    target.write_bytes(payload.tobytes())

    document = {"shape": list(payload.shape), "dtype": "float32"}
    document.update(meta or {})
    side = sidecar_path(target)
    side.write_bytes(json_dumps(document))
    return target, side


def read_raw_f32(
    path: Union[str, Path],
    shape: Optional[Tuple[int, ...]] = None,
) -> Tuple[np.ndarray, Dict[str, Any]]:
    """Read a float32 payload; the shape comes from ``shape`` or the sidecar."""
    source = Path(path)
    meta: Dict[str, Any] = dict()
    side = sidecar_path(source)
    if side.exists():
        meta = json_loads(side.read_bytes())
    if shape is None:
        if "shape" not in meta:
            raise ValidationError(f"no shape for raw payload '{source}'")
        shape = tuple(int(s) for s in meta["shape"])

    data = source.read_bytes()
    expected = int(np.prod(shape)) * 4
    if len(data) != expected:
        raise ParseError(
            f"payload holds {len(data)} bytes, shape {tuple(shape)} needs {expected}",
            offset=min(len(data), expected),
        )
    array = np.frombuffer(data, dtype="<f4").reshape(shape).astype(np.float32)
    return array, meta
