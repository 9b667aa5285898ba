# -*- coding: utf-8 -*-

from dataclasses import MISSING, fields, is_dataclass
from enum import Enum
from pathlib import PurePath
from typing import (
    Any,
    Dict,
    List,
    Mapping,
    Optional,
    Tuple,
    Type,
    TypeVar,
    Union,
    get_args,
    get_origin,
    get_type_hints,
)

import numpy as np

from evmotion.errors import ConfigError, EvmotionError

_T = TypeVar("_T")

DEFAULT_ROOT_KEY = "<root>"


def _serialize_mapping(obj: Mapping) -> Dict[str, Any]:
    result: Dict[str, Any] = dict()
    for key, val in obj.items():
        result[str(key.value if isinstance(key, Enum) else key)] = _serialize_any(
            val, key
        )
    return result


def _serialize_dataclass(obj: Any) -> Dict[str, Any]:
    result: Dict[str, Any] = dict()
    for field in fields(obj):
        if field.name.startswith("_"):
            continue
        result[field.name] = _serialize_any(getattr(obj, field.name), field.name)
    return result


def _serialize_any(obj: Any, key: Optional[Any] = None) -> Any:
    try:
        if obj is None:
            return None
        elif isinstance(obj, bool):
            return obj
        elif isinstance(obj, np.ndarray):
            return _serialize_any(obj.tolist(), key)
        elif isinstance(obj, np.generic):
            return obj.item()
        elif isinstance(obj, (int, float, str)):
            return obj
        elif isinstance(obj, (bytes, bytearray, memoryview)):
            return bytes(obj)
        elif isinstance(obj, Enum):
            return obj.value
        elif isinstance(obj, PurePath):
            return obj.as_posix()
        elif is_dataclass(obj) and not isinstance(obj, type):
            return _serialize_dataclass(obj)
        elif isinstance(obj, tuple) and hasattr(obj, "_asdict"):
            return _serialize_mapping(obj._asdict())
        elif isinstance(obj, Mapping):
            return _serialize_mapping(obj)
        elif isinstance(obj, (list, tuple, set, frozenset)):
            return [_serialize_any(item, i) for i, item in enumerate(obj)]
        raise TypeError(f"Unsupported type: {type(obj).__name__}")
    except EvmotionError as e:
        e.insert_first(key)
        raise
    except (TypeError, ValueError) as e:
        raise EvmotionError(str(e), key) from e


def serialize(obj: Any) -> Any:
    """Convert records, enums and arrays into JSON/YAML/MsgPack-ready builtins."""
    return _serialize_any(obj)


def _strip_optional(hint: Any) -> Any:
    if get_origin(hint) is Union:
        args = [a for a in get_args(hint) if a is not type(None)]  # noqa: E721
        if len(args) != 1:
            raise ConfigError("Two or more UNION types can not be deduced.")
        return args[0]
    return hint


def _deserialize_dataclass(data: Any, cls: Type[_T]) -> _T:
    if not isinstance(data, Mapping):
        raise ConfigError(f"expected a mapping for `{cls.__name__}`")

    hints = get_type_hints(cls)
    known = {f.name: f for f in fields(cls) if f.init}  # type: ignore[arg-type]
    kwargs: Dict[str, Any] = dict()
    for key, value in data.items():
        if key not in known:
            raise ConfigError("unknown key", key)
        try:
            kwargs[key] = _deserialize_any(value, hints.get(key, Any))
        except EvmotionError as e:
            e.insert_first(key)
            raise

    for name, field in known.items():
        if name in kwargs:
            continue
        if field.default is MISSING and field.default_factory is MISSING:
            raise ConfigError("missing required key", name)
    return cls(**kwargs)  # type: ignore[call-arg]


def _deserialize_sequence(data: Any, hint: Any) -> Union[List[Any], Tuple[Any, ...]]:
    if isinstance(data, (str, bytes)) or not isinstance(data, (list, tuple)):
        raise ConfigError(f"expected a sequence, got `{type(data).__name__}`")
    origin = get_origin(hint)
    args = get_args(hint)
    items: List[Any] = list()
    for i, value in enumerate(data):
        if origin is tuple and args and args[-1] is not Ellipsis:
            elem = args[i] if i < len(args) else Any
        else:
            elem = args[0] if args else Any
        try:
            items.append(_deserialize_any(value, elem))
        except EvmotionError as e:
            e.insert_first(f"[{i}]")
            raise
    return tuple(items) if origin is tuple else items


def _deserialize_any(data: Any, hint: Any) -> Any:
    hint = _strip_optional(hint)
    if data is None or hint is Any:
        return data

    origin = get_origin(hint)
    if origin in (list, tuple):
        return _deserialize_sequence(data, hint)
    if origin is dict:
        key_hint, value_hint = get_args(hint) or (Any, Any)
        return {
            _deserialize_any(k, key_hint): _deserialize_any(v, value_hint)
            for k, v in data.items()
        }

    # [IMPORTANT]
    # Do not change if-else order (Reason: `issubclass(bool, int) == True`)
    if isinstance(hint, type):
        if issubclass(hint, bool):
            if isinstance(data, bool):
                return data
            raise ConfigError(f"expected a boolean, got `{data!r}`")
        elif issubclass(hint, Enum):
            try:
                return hint(data)
            except ValueError as e:
                raise ConfigError(str(e)) from e
        elif issubclass(hint, int):
            if isinstance(data, bool) or not isinstance(data, int):
                raise ConfigError(f"expected an integer, got `{data!r}`")
            return hint(data)
        elif issubclass(hint, float):
            if isinstance(data, bool) or not isinstance(data, (int, float)):
                raise ConfigError(f"expected a number, got `{data!r}`")
            return hint(data)
        elif issubclass(hint, str):
            return str(data)
        elif is_dataclass(hint):
            return _deserialize_dataclass(data, hint)
    return data


def deserialize(data: Any, cls: Type[_T]) -> _T:
    """Build a typed dataclass from a mapping, rejecting unknown keys."""
    try:
        return _deserialize_dataclass(data, cls)
    except EvmotionError as e:
        if not e.key:
            e.insert_first(DEFAULT_ROOT_KEY)
        raise
