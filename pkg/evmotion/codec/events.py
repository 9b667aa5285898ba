# -*- coding: utf-8 -*-

import csv
import io
from enum import Enum, unique
from pathlib import Path
from typing import Final, Union

import numpy as np

from evmotion.errors import ParseError, ValidationError
from evmotion.evstream.model import EventStream, validate_events

EVENT_MAGIC: Final[bytes] = b"TETOEVT1"
EVENT_HEADER_DTYPE: Final[np.dtype] = np.dtype(
    [("magic", "S8"), ("width", "<u4"), ("height", "<u4"), ("count", "<u8")]
)
EVENT_RECORD_DTYPE: Final[np.dtype] = np.dtype(
    [("x", "<u2"), ("y", "<u2"), ("t", "<i8"), ("p", "i1")]
)
CSV_HEADER: Final[tuple] = ("x", "y", "t_us", "p")


@unique
class EventFormat(Enum):
    BINARY = "binary"
    CSV = "csv"

    @classmethod
    def from_path(cls, path: Union[str, Path]) -> "EventFormat":
        if Path(path).suffix.lower() == ".csv":
            return cls.CSV
        return cls.BINARY


def decode_event_binary(data: bytes) -> EventStream:
    header_size = EVENT_HEADER_DTYPE.itemsize
    record_size = EVENT_RECORD_DTYPE.itemsize
    if len(data) < header_size:
        raise ParseError("truncated header", offset=len(data))

    header = np.frombuffer(data, dtype=EVENT_HEADER_DTYPE, count=1)[0]
    if bytes(header["magic"]) != EVENT_MAGIC:
        raise ParseError(f"bad magic, expected {EVENT_MAGIC!r}", offset=0)

    count = int(header["count"])
    body = len(data) - header_size
    if body != count * record_size:
        complete = min(body // record_size, count)
        raise ParseError(
            f"header declares {count} records but body holds {body} bytes",
            offset=header_size + complete * record_size,
        )

    records = np.frombuffer(
        data, dtype=EVENT_RECORD_DTYPE, count=count, offset=header_size
    )
    bad_p = np.flatnonzero((records["p"] != 1) & (records["p"] != -1))
    if bad_p.size:
        i = int(bad_p[0])
        raise ParseError(
            f"record {i}: polarity must be -1 or +1",
            offset=header_size + i * record_size + EVENT_RECORD_DTYPE.fields["p"][1],
        )

    return EventStream.from_arrays(
        int(header["width"]),
        int(header["height"]),
        records["x"],
        records["y"],
        records["t"],
        records["p"],
    )


def encode_event_binary(stream: EventStream) -> bytes:
    header = np.zeros(1, dtype=EVENT_HEADER_DTYPE)
    header["magic"] = EVENT_MAGIC
    header["width"] = stream.width
    header["height"] = stream.height
    header["count"] = len(stream)

    records = np.empty(len(stream), dtype=EVENT_RECORD_DTYPE)
    records["x"] = stream.x
    records["y"] = stream.y
    records["t"] = stream.t
    records["p"] = stream.p
    return header.tobytes() + records.tobytes()


def decode_csv(data: bytes, width: int, height: int) -> EventStream:
    text = data.decode("utf-8")
    offset = 0
    columns: list = [[], [], [], []]
    header_seen = False
    for line in io.StringIO(text, newline=""):
        line_offset = offset
        offset += len(line.encode("utf-8"))
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        row = next(csv.reader([line]))
        if not header_seen:
            header_seen = True
            if tuple(c.strip() for c in row) == CSV_HEADER:
                continue
        if len(row) != 4:
            raise ParseError(f"expected 4 columns, got {len(row)}", offset=line_offset)
        try:
            values = [int(c) for c in row]
        except ValueError:
            raise ParseError(f"non-integer field in {row!r}", offset=line_offset)
        if not -(1 << 63) <= values[2] < (1 << 63):
            raise ParseError(
                "timestamp exceeds signed 64-bit range", offset=line_offset
            )
        for column, value in zip(columns, values):
            column.append(value)

    return EventStream.from_arrays(width, height, *columns)


def encode_csv(stream: EventStream) -> bytes:
    buffer = io.StringIO(newline="")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for event in stream:
        writer.writerow(event)
    return buffer.getvalue().encode("utf-8")


def load_events(
    path: Union[str, Path],
    fmt: Union[EventFormat, str, None] = None,
    *,
    width: int = 0,
    height: int = 0,
) -> EventStream:
    """Read an event file; CSV files carry no geometry, so pass the sensor size."""
    source = Path(path)
    fmt = EventFormat.from_path(source) if fmt is None else EventFormat(fmt)
    data = source.read_bytes()
    if fmt is EventFormat.CSV:
        if width <= 0 or height <= 0:
            raise ValidationError("CSV event files need --width and --height")
        return decode_csv(data, width, height)
    return decode_event_binary(data)


def save_events(
    path: Union[str, Path],
    stream: EventStream,
    fmt: Union[EventFormat, str, None] = None,
) -> Path:
    target = Path(path)
    fmt = EventFormat.from_path(target) if fmt is None else EventFormat(fmt)
    validate_events(stream.width, stream.height, stream.x, stream.y, stream.p)
    target.parent.mkdir(parents=True, exist_ok=True)
    if fmt is EventFormat.CSV:
        target.write_bytes(encode_csv(stream))
    else:
        target.write_bytes(encode_event_binary(stream))
    return target
