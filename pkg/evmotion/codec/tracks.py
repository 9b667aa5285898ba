# -*- coding: utf-8 -*-

from pathlib import Path
from typing import Dict, Final, Union

import numpy as np

from evmotion.codec.coding import read_document
from evmotion.codec.pgm import read_mask
from evmotion.errors import ParseError, ValidationError
from evmotion.tapeval.trajectory import ObjectMaskSequence, TrajectorySet

TRACK_MAGIC: Final[bytes] = b"TETOTRK1"
TRACK_HEADER_DTYPE: Final[np.dtype] = np.dtype(
    [("magic", "S8"), ("queries", "<u4"), ("frames", "<u4")]
)
TRACK_POINT_DTYPE: Final[np.dtype] = np.dtype(
    [("x", "<f4"), ("y", "<f4"), ("v", "<f4")]
)


def track_record_dtype(frames: int) -> np.dtype:
    return np.dtype([("query_frame", "<u4"), ("points", TRACK_POINT_DTYPE, (frames,))])


def decode_track_binary(data: bytes) -> TrajectorySet:
    header_size = TRACK_HEADER_DTYPE.itemsize
    if len(data) < header_size:
        raise ParseError("truncated header", offset=len(data))
    header = np.frombuffer(data, dtype=TRACK_HEADER_DTYPE, count=1)[0]
    if bytes(header["magic"]) != TRACK_MAGIC:
        raise ParseError(f"bad magic, expected {TRACK_MAGIC!r}", offset=0)

    queries, frames = int(header["queries"]), int(header["frames"])
    record = track_record_dtype(frames)
    body = len(data) - header_size
    if body != queries * record.itemsize:
        complete = min(body // max(record.itemsize, 1), queries)
        raise ParseError(
            f"header declares {queries} queries of {frames} frames",
            offset=header_size + complete * record.itemsize,
        )

    records = np.frombuffer(data, dtype=record, count=queries, offset=header_size)
    points = records["points"]
    positions = np.stack([points["x"], points["y"]], axis=-1).astype(np.float32)
    return TrajectorySet(
        positions=positions.reshape(queries, frames, 2),
        visibility=points["v"].astype(np.float32).reshape(queries, frames),
        query_frames=records["query_frame"].astype(np.int64),
    )


def encode_track_binary(tracks: TrajectorySet) -> bytes:
    header = np.zeros(1, dtype=TRACK_HEADER_DTYPE)
    header["magic"] = TRACK_MAGIC
    header["queries"] = tracks.queries
    header["frames"] = tracks.frames

    records = np.zeros(tracks.queries, dtype=track_record_dtype(tracks.frames))
    records["query_frame"] = tracks.query_frames
    records["points"]["x"] = tracks.positions[..., 0]
    records["points"]["y"] = tracks.positions[..., 1]
    records["points"]["v"] = tracks.visibility
    return header.tobytes() + records.tobytes()


def read_tracks(path: Union[str, Path]) -> TrajectorySet:
    return decode_track_binary(Path(path).read_bytes())


def write_tracks(path: Union[str, Path], tracks: TrajectorySet) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(encode_track_binary(tracks))
    return target


def read_object_masks(manifest_path: Union[str, Path]) -> ObjectMaskSequence:
    """Load ``{frame: {object_id: mask.pgm}}``; mask paths are manifest-relative."""
    manifest = Path(manifest_path)
    document = read_document(manifest)
    if not isinstance(document, dict) or not document:
        raise ValidationError(f"mask manifest '{manifest}' must map frames to objects")
    for key in document.keys():
        if not str(key).isdigit():
            raise ValidationError(f"frame key must be an index, got {key!r}", key=key)

    frame_ids = sorted(int(k) for k in document.keys())
    frames: list = [dict() for _ in range(frame_ids[-1] + 1)]
    shape = None
    for key, objects in document.items():
        loaded: Dict[int, np.ndarray] = dict()
        for object_id, mask_path in objects.items():
            mask = read_mask(manifest.parent / mask_path)
            if shape is None:
                shape = mask.shape
            loaded[int(object_id)] = mask
        frames[int(key)] = loaded

    if shape is None:
        raise ValidationError(f"mask manifest '{manifest}' lists no masks")
    return ObjectMaskSequence(frames=frames, height=shape[0], width=shape[1])
