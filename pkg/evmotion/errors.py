# -*- coding: utf-8 -*-

from typing import Any, Optional

EXIT_SUCCESS = 0
EXIT_INPUT_ERROR = 2
EXIT_NUMERICAL_ERROR = 3


class EvmotionError(Exception):
    exit_code = EXIT_INPUT_ERROR

    def __init__(self, msg: str, key: Optional[Any] = None):
        super().__init__(msg)
        self.msg = msg
        self.key = str(key) if key is not None else str()

    def insert_first(self, key: Any) -> None:
        if key is None or key == "":
            return
        if self.key:
            self.key = str(key) + "." + self.key
        else:
            self.key = str(key)

    def __str__(self) -> str:
        if self.key:
            return f"{self.key}: {self.msg}"
        return self.msg


class InputError(EvmotionError):
    exit_code = EXIT_INPUT_ERROR


class ParseError(InputError):
    def __init__(self, msg: str, offset: int, key: Optional[Any] = None):
        super().__init__(f"{msg} (at byte offset {offset})", key)
        self.offset = offset


class ValidationError(InputError):
    def __init__(self, msg: str, index: Optional[int] = None, key=None):
        if index is not None:
            msg = f"record {index}: {msg}"
        super().__init__(msg, key)
        self.index = index


class ConfigError(InputError):
    pass


class ShapeMismatchError(InputError):
    pass


class EmptyIntervalsError(InputError):
    def __init__(self, key: Optional[Any] = None):
        super().__init__("no intervals", key)


class NoAdherentQueriesError(InputError):
    def __init__(self, key: Optional[Any] = None):
        super().__init__("no adherent queries", key)


class NumericalError(EvmotionError):
    exit_code = EXIT_NUMERICAL_ERROR


class InsufficientSupportError(NumericalError):
    pass


class DegenerateGeometryError(NumericalError):
    pass
