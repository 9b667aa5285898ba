# -*- coding: utf-8 -*-

from typing import Any

try:
    import msgpack  # noqa
except ImportError:
    HAS_MSGPACK = False
else:
    HAS_MSGPACK = True

from evmotion.errors import ParseError


def valid_msgpack_module():
    if not HAS_MSGPACK:
        raise ModuleNotFoundError("MsgPack module not found")


def msgpack_encoder(data: Any) -> bytes:
    valid_msgpack_module()
    return msgpack.packb(data, use_bin_type=True)


def msgpack_decoder(data: bytes) -> Any:
    valid_msgpack_module()
    try:
        return msgpack.unpackb(data, raw=False, strict_map_key=False)
    except msgpack.ExtraData as e:
        offset = len(data) - len(e.extra)
        raise ParseError("trailing bytes after MsgPack report", offset=offset) from e
    except (ValueError, msgpack.UnpackException) as e:
        raise ParseError(f"invalid MsgPack report: {e}", offset=0) from e
