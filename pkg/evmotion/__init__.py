# -*- coding: utf-8 -*-

from evmotion.errors import EvmotionError
from evmotion.evstream.model import Event, EventStream
from evmotion.evstream.stack import EventStack, StackConfig, build_event_stack

__version__ = "0.1.0"

__all__ = (
    "__version__",
    "Event",
    "EventStack",
    "EventStream",
    "EvmotionError",
    "StackConfig",
    "build_event_stack",
)
