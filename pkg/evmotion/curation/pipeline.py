# -*- coding: utf-8 -*-

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from evmotion.codec.coding import read_document
from evmotion.codec.events import load_events
from evmotion.codec.pgm import write_mask
from evmotion.codec.record import deserialize
from evmotion.curation.crop import patch_to_crop
from evmotion.curation.pool import (
    CurationConfig,
    CurationEntry,
    CurationPool,
    CurationResult,
    RejectReason,
    build_pool,
    curate_crop,
)
from evmotion.errors import NumericalError
from evmotion.evstream.density import event_density_topk
from evmotion.evstream.model import EventStream
from evmotion.evstream.stack import StackConfig
from evmotion.evstream.window import WindowSide, window_by_count
from evmotion.flowdecomp.decompose import ObjectMaskConfig, decompose_flow
from evmotion.flowdecomp.field import read_flow_field
from evmotion.flowdecomp.ransac import RansacConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StartSpec:
    start: int
    t_us: int
    flow: str
    visibility: Optional[str] = None
    confidence: Optional[str] = None


@dataclass(frozen=True)
class SequenceSpec:
    name: str
    events: str
    starts: List[StartSpec] = field(default_factory=list)
    width: int = 0
    height: int = 0


@dataclass(frozen=True)
class CurationManifest:
    sequences: List[SequenceSpec] = field(default_factory=list)


@dataclass(frozen=True)
class CurationContext:
    curation: CurationConfig
    stack: StackConfig
    ransac: RansacConfig
    masking: ObjectMaskConfig
    seed: int
    out_dir: Path
    base_dir: Path


def load_manifest(path: Union[str, Path]) -> CurationManifest:
    return deserialize(read_document(path), CurationManifest)


def mask_relpath(sequence: str, start: int, rank: int) -> str:
    return f"masks/{sequence}_{start:06d}_{rank}.pgm"


def curate_start(
    ctx: CurationContext,
    sequence_index: int,
    sequence: str,
    stream: EventStream,
    spec: StartSpec,
) -> List[CurationResult]:
    """Decide every density-ranked crop candidate of one starting frame."""
    cfg = ctx.curation
    recent = window_by_count(stream, spec.t_us, ctx.stack.events, WindowSide.BEFORE)
    patches = event_density_topk(recent, cfg.density_patch, cfg.density_topk)

    def resolve(name: Optional[str]) -> Optional[Path]:
        return None if name is None else ctx.base_dir / name

    flow = read_flow_field(
        ctx.base_dir / spec.flow, resolve(spec.visibility), resolve(spec.confidence)
    )
    results: List[CurationResult] = list()
    for rank, patch in enumerate(patches):
        crop = patch_to_crop(
            patch,
            (stream.width, stream.height),
            (flow.width, flow.height),
            cfg.density_patch,
            cfg.crop_width,
            cfg.crop_height,
        )
        rng = np.random.default_rng([ctx.seed, sequence_index, spec.start, rank])
        region = flow.crop(crop.x, crop.y, crop.width, crop.height)
        try:
            mask = decompose_flow(region, ctx.ransac, ctx.masking, rng).mask
        except NumericalError as e:
            logger.info(
                "'%s' start %d crop %d rejected: %s", sequence, spec.start, rank, e
            )
            entry = CurationEntry(sequence, spec.start, crop, 0.0)
            results.append(CurationResult(entry, RejectReason.INSUFFICIENT_FLOW, rank))
            continue

        relpath = mask_relpath(sequence, spec.start, rank)
        result = curate_crop(
            sequence, spec.start, crop, mask, cfg.min_area_ratio, relpath, rank
        )
        if result.accepted:
            write_mask(ctx.out_dir / relpath, mask)
        results.append(result)
    return results


def curate_manifest(
    manifest: CurationManifest,
    ctx: CurationContext,
    workers: int = 1,
) -> CurationPool:
    """Curate every start of every sequence; the pool order ignores ``workers``."""
    jobs = list()
    for index, sequence in enumerate(manifest.sequences):
        stream = load_events(
            ctx.base_dir / sequence.events, width=sequence.width, height=sequence.height
        )
        for spec in sequence.starts:
            jobs.append((index, sequence.name, stream, spec))

    with ThreadPoolExecutor(max_workers=workers) as executor:
        batches = list(executor.map(lambda job: curate_start(ctx, *job), jobs))

    results = [result for batch in batches for result in batch]
    pool = build_pool(results, ctx.curation.max_entries_per_start)
    logger.info(
        "curated %d entries from %d candidates over %d sequences",
        len(pool.entries),
        len(results),
        len(pool.stats),
    )
    return pool
