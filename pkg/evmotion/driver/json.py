# -*- coding: utf-8 -*-

import json
import os
from typing import Any, Callable, Dict, NamedTuple

import numpy as np

try:
    import orjson  # noqa
except ImportError:
    HAS_ORJSON = False
else:
    HAS_ORJSON = True

from evmotion.driver.boolean import string_to_boolean
from evmotion.variables import DISABLE_ORJSON_INSTALL_ENV_NAME


class JsonDriver(NamedTuple):
    name: str
    dumps: Callable[[Any], bytes]
    loads: Callable[[bytes], Any]


def _numpy_default(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def python_json_byte_encoder(data: Any) -> bytes:
    text = json.dumps(data, separators=(",", ":"), default=_numpy_default)
    return text.encode("utf-8")


def python_json_byte_decoder(data: bytes) -> Any:
    return json.loads(data)


def valid_orjson_module():
    if not HAS_ORJSON:
        raise ModuleNotFoundError("orjson module not found")


def orjson_byte_encoder(data: Any) -> bytes:
    valid_orjson_module()
    return orjson.dumps(data, option=orjson.OPT_SERIALIZE_NUMPY)


def orjson_byte_decoder(data: bytes) -> Any:
    valid_orjson_module()
    return orjson.loads(data)


PYTHON_JSON_DRIVER = JsonDriver(
    "python", python_json_byte_encoder, python_json_byte_decoder
)
ORJSON_DRIVER = JsonDriver("orjson", orjson_byte_encoder, orjson_byte_decoder)

JSON_DRIVERS: Dict[str, JsonDriver] = {
    PYTHON_JSON_DRIVER.name: PYTHON_JSON_DRIVER,
    ORJSON_DRIVER.name: ORJSON_DRIVER,
}

_active_driver: JsonDriver = PYTHON_JSON_DRIVER


def active_json_driver() -> JsonDriver:
    return _active_driver


def install_json_driver(name: str) -> JsonDriver:
    global _active_driver

    driver = JSON_DRIVERS[name]
    if driver is ORJSON_DRIVER:
        valid_orjson_module()
    _active_driver = driver
    return driver


def install_orjson_driver() -> JsonDriver:
    return install_json_driver(ORJSON_DRIVER.name)


def install_python_json_driver() -> JsonDriver:
    return install_json_driver(PYTHON_JSON_DRIVER.name)


def json_dumps(data: Any) -> bytes:
    return _active_driver.dumps(data)


def json_loads(data: bytes) -> Any:
    return _active_driver.loads(data)


def json_dumps_text(data: Any) -> str:
    return str(json_dumps(data), "utf-8")


def is_auto_install() -> bool:
    value = os.environ.get(DISABLE_ORJSON_INSTALL_ENV_NAME, "")
    if value and string_to_boolean(value):
        return False
    return HAS_ORJSON


if is_auto_install():
    install_orjson_driver()
