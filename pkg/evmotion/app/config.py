# -*- coding: utf-8 -*-

import logging
from dataclasses import dataclass, field, fields, is_dataclass, replace
from pathlib import Path
from typing import Any, Optional, TypeVar, Union

from evmotion.codec.coding import DEFAULT_REPORT_CODING, ReportCoding, read_document
from evmotion.codec.record import deserialize, serialize
from evmotion.curation.pool import CurationConfig
from evmotion.distillmath.loss import LossConfig
from evmotion.driver.json import json_dumps_text
from evmotion.errors import ConfigError, EvmotionError
from evmotion.evmask.mask import MaskWindowConfig
from evmotion.evstream.stack import StackConfig
from evmotion.evstream.stride import SamplingConfig
from evmotion.flowdecomp.decompose import ObjectMaskConfig
from evmotion.flowdecomp.ransac import RansacConfig
from evmotion.ieianalysis.histogram import IEIConfig
from evmotion.tapeval.oats import OATSConfig

logger = logging.getLogger(__name__)

_T = TypeVar("_T")


@dataclass(frozen=True)
class RunConfig:
    seed: Optional[int] = None
    log_level: Optional[str] = None
    report_coding: ReportCoding = DEFAULT_REPORT_CODING
    workers: int = 1
    stack: StackConfig = field(default_factory=StackConfig)
    iei: IEIConfig = field(default_factory=IEIConfig)
    ransac: RansacConfig = field(default_factory=RansacConfig)
    masking: ObjectMaskConfig = field(default_factory=ObjectMaskConfig)
    curation: CurationConfig = field(default_factory=CurationConfig)
    sampling: SamplingConfig = field(default_factory=SamplingConfig)
    evmask: MaskWindowConfig = field(default_factory=MaskWindowConfig)
    oats: OATSConfig = field(default_factory=OATSConfig)
    loss: LossConfig = field(default_factory=LossConfig)

    def validate(self) -> "RunConfig":
        if self.workers < 1:
            raise ConfigError("must be >= 1", "workers")
        for f in fields(self):
            section = getattr(self, f.name)
            if not is_dataclass(section):
                continue
            try:
                section.validate()
            except EvmotionError as e:
                e.insert_first(f.name)
                raise
        return self


def load_run_config(path: Union[str, Path, None]) -> RunConfig:
    """Read a YAML or JSON run configuration; ``None`` gives the defaults."""
    if path is None:
        return RunConfig()
    document = read_document(path)
    if document is None:
        return RunConfig()
    return deserialize(document, RunConfig)


def override(section: _T, **values: Any) -> _T:
    """Copy of ``section`` with every non-``None`` value applied."""
    changes = {k: v for k, v in values.items() if v is not None}
    if not changes:
        return section
    return replace(section, **changes)  # type: ignore[type-var]


def log_resolved(cfg: RunConfig, command: str) -> None:
    document = json_dumps_text(serialize(cfg))
    logger.info("resolved config for '%s': %s", command, document)
