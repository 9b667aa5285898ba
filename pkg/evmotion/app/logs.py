# -*- coding: utf-8 -*-

import logging
import os
import sys
from typing import Any, Dict, Final, Optional

from evmotion.driver.json import json_dumps_text
from evmotion.variables import LOG_LEVEL_ENV_NAME

DEFAULT_LOG_LEVEL: Final[str] = "INFO"

_RESERVED = frozenset(vars(logging.makeLogRecord({})).keys()) | {"message", "asctime"}


class JsonLineFormatter(logging.Formatter):
    """One JSON object per record: level, logger, message and any ``extra``."""

    def format(self, record: logging.LogRecord) -> str:
        document: Dict[str, Any] = {
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        for key, value in vars(record).items():
            if key not in _RESERVED and not key.startswith("_"):
                if not isinstance(value, (str, int, float, bool, type(None))):
                    value = str(value)
                document[key] = value
        if record.exc_info:
            document["exception"] = self.formatException(record.exc_info)
        return json_dumps_text(document)


def resolve_log_level(level: Optional[str] = None) -> str:
    if level:
        return level.upper()
    return os.environ.get(LOG_LEVEL_ENV_NAME, DEFAULT_LOG_LEVEL).upper()


def setup_logging(level: Optional[str] = None, stream=None) -> logging.Handler:
    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.setFormatter(JsonLineFormatter())
    root = logging.getLogger()
    for existing in list(root.handlers):
        if isinstance(existing.formatter, JsonLineFormatter):
            root.removeHandler(existing)
    root.addHandler(handler)
    try:
        root.setLevel(resolve_log_level(level))
    except ValueError:
        root.setLevel(DEFAULT_LOG_LEVEL)
        logging.getLogger(__name__).warning("unknown log level %r, using INFO", level)
    return handler
