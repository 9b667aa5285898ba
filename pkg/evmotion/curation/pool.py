# -*- coding: utf-8 -*-

import logging
from collections import OrderedDict
from dataclasses import dataclass, field
from enum import Enum, unique
from pathlib import Path
from typing import Iterable, List, Sequence, Union

import numpy as np
from scipy.special import softmax

from evmotion.codec.record import deserialize, serialize
from evmotion.curation.crop import CropRect
from evmotion.driver.json import json_dumps_text, json_loads
from evmotion.errors import ConfigError, EvmotionError, ValidationError
from evmotion.variables import (
    DEFAULT_CROP_HEIGHT,
    DEFAULT_CROP_WIDTH,
    DEFAULT_DENSITY_PATCH,
    DEFAULT_DENSITY_TOPK,
    DEFAULT_MAX_ENTRIES_PER_START,
    DEFAULT_MIN_AREA_RATIO,
    DEFAULT_OBJECT_FRACTION,
    DEFAULT_SEQUENCE_TEMPERATURE,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurationConfig:
    crop_width: int = DEFAULT_CROP_WIDTH
    crop_height: int = DEFAULT_CROP_HEIGHT
    density_patch: int = DEFAULT_DENSITY_PATCH
    density_topk: int = DEFAULT_DENSITY_TOPK
    min_area_ratio: float = DEFAULT_MIN_AREA_RATIO
    max_entries_per_start: int = DEFAULT_MAX_ENTRIES_PER_START
    temperature: float = DEFAULT_SEQUENCE_TEMPERATURE
    object_fraction: float = DEFAULT_OBJECT_FRACTION

    def validate(self) -> "CurationConfig":
        for name in ("crop_width", "crop_height", "density_patch", "density_topk"):
            if getattr(self, name) < 1:
                raise ConfigError("must be >= 1", name)
        if not 0 <= self.min_area_ratio <= 1:
            raise ConfigError("must lie in [0, 1]", "min_area_ratio")
        if self.max_entries_per_start < 1:
            raise ConfigError("must be >= 1", "max_entries_per_start")
        if not self.temperature > 0:
            raise ConfigError("must be positive", "temperature")
        if not 0 <= self.object_fraction <= 1:
            raise ConfigError("must lie in [0, 1]", "object_fraction")
        return self


@unique
class RejectReason(Enum):
    ACCEPTED = "accepted"
    BELOW_AREA_RATIO = "below_area_ratio"
    INSUFFICIENT_FLOW = "insufficient_flow"


@dataclass(frozen=True)
class CurationEntry:
    sequence: str
    start: int
    crop: CropRect
    area_ratio: float
    mask_path: str = ""


@dataclass(frozen=True)
class CurationResult:
    entry: CurationEntry
    reason: RejectReason
    rank: int = 0

    @property
    def accepted(self) -> bool:
        return self.reason is RejectReason.ACCEPTED


@dataclass(frozen=True)
class SequenceStats:
    sequence: str
    motion_ratio: float
    entries: int
    starts: int = 0


@dataclass
class CurationPool:
    entries: List[CurationEntry] = field(default_factory=list)
    stats: List[SequenceStats] = field(default_factory=list)


def curate_crop(
    sequence: str,
    start: int,
    crop: CropRect,
    mask: np.ndarray,
    min_area_ratio=DEFAULT_MIN_AREA_RATIO,
    mask_path: Union[str, Path] = "",
    rank: int = 0,
) -> CurationResult:
    """Accept a crop when its cleaned object mask covers at least ``min_area_ratio``."""
    region = crop.cut(np.asarray(mask, dtype=bool))
    ratio = float(np.count_nonzero(region)) / crop.area
    reason = RejectReason.ACCEPTED
    if ratio < min_area_ratio:
        reason = RejectReason.BELOW_AREA_RATIO
    entry = CurationEntry(
        sequence=sequence,
        start=int(start),
        crop=crop,
        area_ratio=ratio,
        mask_path=str(mask_path),
    )
    return CurationResult(entry=entry, reason=reason, rank=rank)


def build_pool(
    results: Iterable[CurationResult],
    max_entries_per_start=DEFAULT_MAX_ENTRIES_PER_START,
) -> CurationPool:
    """Merge crop decisions into a pool with per-sequence motion statistics.

    Results are ordered by (sequence, start, rank). At most
    ``max_entries_per_start`` accepted entries survive per start index.
    """
    ordered = sorted(results, key=lambda r: (r.entry.sequence, r.entry.start, r.rank))
    starts: "OrderedDict[str, OrderedDict[int, int]]" = OrderedDict()
    pool = CurationPool()
    for result in ordered:
        sequence, start = result.entry.sequence, result.entry.start
        per_start = starts.setdefault(sequence, OrderedDict())
        taken = per_start.setdefault(start, 0)
        if not result.accepted:
            continue
        if taken >= max_entries_per_start:
            logger.warning(
                "start %d of '%s' already holds %d entries, dropping crop rank %d",
                start,
                sequence,
                taken,
                result.rank,
            )
            continue
        per_start[start] = taken + 1
        pool.entries.append(result.entry)

    for sequence, per_start in starts.items():
        moving = sum(1 for count in per_start.values() if count > 0)
        pool.stats.append(
            SequenceStats(
                sequence=sequence,
                motion_ratio=moving / len(per_start),
                entries=sum(per_start.values()),
                starts=len(per_start),
            )
        )
    return pool


def sequence_weights(
    stats: Sequence[SequenceStats],
    temperature=DEFAULT_SEQUENCE_TEMPERATURE,
) -> np.ndarray:
    """Sampling probabilities ``softmax(motion_ratio / temperature)``."""
    if not stats:
        raise ValidationError("no sequences to weight")
    if not temperature > 0:
        raise ConfigError(f"must be positive, got {temperature}", "temperature")
    ratios = np.array([s.motion_ratio for s in stats], dtype=np.float64)
    return softmax(ratios / temperature)


def write_pool_jsonl(path: Union[str, Path], entries: Iterable[CurationEntry]) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8") as f:
        for entry in entries:
            f.write(json_dumps_text(serialize(entry)))
            f.write("\n")
    return target


def read_pool_jsonl(path: Union[str, Path]) -> List[CurationEntry]:
    entries: List[CurationEntry] = list()
    with Path(path).open("r", encoding="utf-8") as f:
        for number, line in enumerate(f):
            if not line.strip():
                continue
            try:
                entries.append(deserialize(json_loads(line), CurationEntry))
            except EvmotionError as e:
                e.insert_first(f"line{number + 1}")
                raise
            except ValueError as e:
                raise ValidationError(f"invalid JSON: {e}", index=number) from e
    return entries


def pool_summary(pool: CurationPool, temperature=DEFAULT_SEQUENCE_TEMPERATURE) -> dict:
    sequences = [serialize(s) for s in pool.stats]
    if pool.stats:
        weights = sequence_weights(pool.stats, temperature)
        for document, weight in zip(sequences, weights):
            document["weight"] = float(weight)
    return {"entries": len(pool.entries), "sequences": sequences}
