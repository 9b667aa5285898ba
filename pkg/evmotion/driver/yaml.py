# -*- coding: utf-8 -*-

from typing import Any

try:
    import yaml  # noqa
except ImportError:
    HAS_YAML = False
else:
    HAS_YAML = True

from evmotion.errors import ParseError


def valid_yaml_module():
    if not HAS_YAML:
        raise ModuleNotFoundError("Yaml module not found")


def yaml_encoder(data: Any) -> bytes:
    valid_yaml_module()
    return yaml.safe_dump(data, sort_keys=False, allow_unicode=True).encode("utf-8")


def yaml_decoder(data: bytes) -> Any:
    """Safe-load a YAML document; syntax errors carry the offending byte offset."""
    valid_yaml_module()
    try:
        return yaml.safe_load(data)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark or e.context_mark
        offset = mark.index if mark is not None else 0
        raise ParseError(f"invalid YAML: {e.problem or e}", offset=offset) from e
    except yaml.YAMLError as e:
        raise ParseError(f"invalid YAML: {e}", offset=0) from e
