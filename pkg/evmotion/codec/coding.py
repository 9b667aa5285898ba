# -*- coding: utf-8 -*-

from enum import Enum, unique
from pathlib import Path
from typing import Any, Callable, Dict, Final, NamedTuple, Union

from evmotion.codec.record import serialize
from evmotion.driver.json import json_dumps, json_loads
from evmotion.driver.msgpack import msgpack_decoder, msgpack_encoder
from evmotion.driver.yaml import yaml_decoder, yaml_encoder
from evmotion.errors import ParseError


@unique
class ReportCoding(Enum):
    Json = "json"
    Yaml = "yaml"
    Msgpack = "msgpack"


class ReportCodingPair(NamedTuple):
    encode: Callable[[Any], bytes]
    decode: Callable[[bytes], Any]
    suffix: str


REPORT_CODING_MAP: Final[Dict[ReportCoding, ReportCodingPair]] = {
    ReportCoding.Json: ReportCodingPair(json_dumps, json_loads, ".json"),
    ReportCoding.Yaml: ReportCodingPair(yaml_encoder, yaml_decoder, ".yaml"),
    ReportCoding.Msgpack: ReportCodingPair(
        msgpack_encoder, msgpack_decoder, ".msgpack"
    ),
}

DEFAULT_REPORT_CODING: Final[ReportCoding] = ReportCoding.Json


def encode_report(data: Any, coding=DEFAULT_REPORT_CODING) -> bytes:
    return REPORT_CODING_MAP[coding].encode(serialize(data))


def decode_report(data: bytes, coding=DEFAULT_REPORT_CODING) -> Any:
    return REPORT_CODING_MAP[coding].decode(data)


def write_report(
    path: Union[str, Path],
    data: Any,
    coding=DEFAULT_REPORT_CODING,
) -> Path:
    """Write a report; the suffix of ``path`` is replaced to match ``coding``."""
    target = Path(path).with_suffix(REPORT_CODING_MAP[coding].suffix)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(encode_report(data, coding))
    return target


def read_document(path: Union[str, Path]) -> Any:
    """Read a JSON, YAML or MsgPack document, chosen by file suffix."""
    source = Path(path)
    raw = source.read_bytes()
    if source.suffix.lower() in (".yaml", ".yml"):
        return yaml_decoder(raw)
    elif source.suffix.lower() == ".msgpack":
        return msgpack_decoder(raw)
    try:
        return json_loads(raw)
    except ValueError as e:
        raise ParseError(f"invalid JSON: {e}", offset=getattr(e, "pos", 0)) from e
