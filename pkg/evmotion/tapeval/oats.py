# -*- coding: utf-8 -*-

import io
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage

from evmotion.errors import ConfigError, NoAdherentQueriesError, ShapeMismatchError
from evmotion.tapeval.trajectory import ObjectMaskSequence, TrajectorySet
from evmotion.variables import DEFAULT_OATS_VIS_CUT, OATS_DELTAS

logger = logging.getLogger(__name__)

UNASSIGNED = -1


@dataclass(frozen=True)
class OATSConfig:
    deltas: Tuple[int, ...] = OATS_DELTAS
    vis_cut: float = DEFAULT_OATS_VIS_CUT

    def validate(self) -> "OATSConfig":
        if not self.deltas:
            raise ConfigError("at least one threshold is required", "deltas")
        if any(d < 0 for d in self.deltas):
            raise ConfigError("thresholds must be non-negative", "deltas")
        if not 0 <= self.vis_cut <= 1:
            raise ConfigError("must lie in [0, 1]", "vis_cut")
        return self


@dataclass
class OATSReport:
    deltas: Tuple[int, ...]
    scores: Tuple[float, ...]
    average: float
    scene: str = ""
    queries: int = 0
    excluded: int = 0
    evaluated_frames: int = 0
    scenes: List["OATSReport"] = field(default_factory=list)

    def score(self, delta: int) -> float:
        return self.scores[self.deltas.index(delta)]

    @classmethod
    def from_scores(
        cls,
        scores: Sequence[float],
        deltas: Sequence[int] = OATS_DELTAS,
        scene: str = "",
    ) -> "OATSReport":
        if len(scores) != len(deltas):
            raise ShapeMismatchError(
                f"{len(scores)} scores for {len(deltas)} thresholds"
            )
        values = tuple(float(s) for s in scores)
        return cls(
            deltas=tuple(int(d) for d in deltas),
            scores=values,
            average=aggregate_average(values),
            scene=scene,
        )


def aggregate_average(scores: Sequence[float]) -> float:
    return float(np.mean(np.asarray(scores, dtype=np.float64)))


def disk_structure(delta: int) -> np.ndarray:
    """Integer offsets with ``dx^2 + dy^2 <= delta^2``."""
    offsets = np.arange(-delta, delta + 1)
    dy, dx = np.meshgrid(offsets, offsets, indexing="ij")
    return dx * dx + dy * dy <= delta * delta


def dilate_mask(mask: np.ndarray, delta: int) -> np.ndarray:
    if delta < 0:
        raise ConfigError(f"dilation radius must be >= 0, got {delta}", "delta")
    mask = np.asarray(mask, dtype=bool)
    if delta == 0:
        return mask.copy()
    structure = disk_structure(delta)
    return ndimage.binary_dilation(mask, structure=structure, border_value=0)


def round_half_away(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=np.float64)
    return (np.sign(values) * np.floor(np.abs(values) + 0.5)).astype(np.int64)


def _pixel(position: np.ndarray, height: int, width: int) -> Optional[Tuple[int, int]]:
    x, y = round_half_away(position)
    if 0 <= x < width and 0 <= y < height:
        return int(y), int(x)
    return None


def assign_queries(
    traj: TrajectorySet,
    masks: ObjectMaskSequence,
    event_mask: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Object id per query, or ``UNASSIGNED`` for queries off every object.

    A query is evaluable when its rounded query-frame position lies on the
    event mask and on an object mask of that frame; overlaps go to the object
    with the smallest mask area, then the smallest id.
    """
    shape = (masks.height, masks.width)
    if event_mask is not None and np.shape(event_mask) != shape:
        raise ShapeMismatchError(
            f"event mask {np.shape(event_mask)} differs from {shape}"
        )

    assignment = np.full(traj.queries, UNASSIGNED, dtype=np.int64)
    for j in range(traj.queries):
        t = int(traj.query_frames[j])
        pixel = _pixel(traj.positions[j, t], *shape)
        if pixel is None:
            continue
        if event_mask is not None and not event_mask[pixel]:
            continue
        objects = masks.frames[t] if t < len(masks) else dict()
        candidates = [
            (int(np.count_nonzero(mask)), object_id)
            for object_id, mask in objects.items()
            if mask[pixel]
        ]
        if candidates:
            assignment[j] = min(candidates)[1]

    if not np.any(assignment != UNASSIGNED):
        raise NoAdherentQueriesError()
    return assignment


class _DilatedMasks:
    def __init__(self, masks: ObjectMaskSequence, delta: int):
        self._masks = masks
        self._delta = delta
        self._cache: Dict[Tuple[int, int], Optional[np.ndarray]] = dict()

    def get(self, t: int, object_id: int) -> Optional[np.ndarray]:
        key = (t, object_id)
        if key not in self._cache:
            mask = self._masks.get(t, object_id)
            self._cache[key] = None if mask is None else dilate_mask(mask, self._delta)
        return self._cache[key]


def _adherence(
    traj: TrajectorySet,
    masks: ObjectMaskSequence,
    assignment: np.ndarray,
    delta: int,
    vis_cut: float,
) -> List[Optional[float]]:
    """Per-query adherent fraction; ``None`` when the query has no visible frame."""
    dilated = _DilatedMasks(masks, delta)
    fractions: List[Optional[float]] = list()
    for j in range(traj.queries):
        object_id = int(assignment[j])
        if object_id == UNASSIGNED:
            fractions.append(None)
            continue
        query_frame = int(traj.query_frames[j])
        visible = [
            t
            for t in range(traj.frames)
            if t != query_frame and traj.visibility[j, t] >= vis_cut
        ]
        if not visible:
            fractions.append(None)
            continue
        hits = 0
        for t in visible:
            pixel = _pixel(traj.positions[j, t], masks.height, masks.width)
            mask = dilated.get(t, object_id)
            if pixel is not None and mask is not None and mask[pixel]:
                hits += 1
        fractions.append(hits / len(visible))
    return fractions


def oats_delta(
    traj: TrajectorySet,
    masks: ObjectMaskSequence,
    delta: int,
    assignment: Optional[np.ndarray] = None,
    vis_cut=DEFAULT_OATS_VIS_CUT,
) -> float:
    if assignment is None:
        assignment = assign_queries(traj, masks)
    fractions = _adherence(traj, masks, assignment, delta, vis_cut)
    fractions = [f for f in fractions if f is not None]
    if not fractions:
        raise NoAdherentQueriesError()
    return float(np.mean(fractions))


def oats_suite(
    traj: TrajectorySet,
    masks: ObjectMaskSequence,
    event_mask: Optional[np.ndarray] = None,
    cfg: Optional[OATSConfig] = None,
    scene: str = "",
) -> OATSReport:
    """Adherence scores at every threshold and their average."""
    cfg = (cfg or OATSConfig()).validate()
    assignment = assign_queries(traj, masks, event_mask)
    assigned = int(np.count_nonzero(assignment != UNASSIGNED))

    scores = list()
    evaluated = 0
    for delta in cfg.deltas:
        fractions = _adherence(traj, masks, assignment, delta, cfg.vis_cut)
        kept = [f for f in fractions if f is not None]
        if not kept:
            raise NoAdherentQueriesError(scene or None)
        scores.append(float(np.mean(kept)))
        evaluated = len(kept)

    excluded = assigned - evaluated
    if excluded:
        logger.warning(
            "%d assigned queries have no visible frame and were excluded", excluded
        )
    frames = int(
        sum(
            np.count_nonzero(traj.visibility[j] >= cfg.vis_cut)
            - int(traj.visibility[j, traj.query_frames[j]] >= cfg.vis_cut)
            for j in np.flatnonzero(assignment != UNASSIGNED)
        )
    )
    report = OATSReport.from_scores(scores, cfg.deltas, scene)
    report.queries = evaluated
    report.excluded = excluded
    report.evaluated_frames = frames
    return report


def aggregate_scenes(
    reports: Sequence[OATSReport], scene: str = "overall"
) -> OATSReport:
    """Unweighted per-threshold mean over scenes."""
    if not reports:
        raise NoAdherentQueriesError(scene)
    deltas = reports[0].deltas
    for report in reports:
        if report.deltas != deltas:
            raise ShapeMismatchError(
                f"scene '{report.scene}' uses thresholds {report.deltas}, "
                f"expected {deltas}"
            )
    table = np.array([report.scores for report in reports], dtype=np.float64)
    overall = OATSReport.from_scores(table.mean(axis=0), deltas, scene)
    overall.queries = sum(report.queries for report in reports)
    overall.excluded = sum(report.excluded for report in reports)
    overall.evaluated_frames = sum(report.evaluated_frames for report in reports)
    overall.scenes = list(reports)
    return overall


def oats_csv(reports: Sequence[OATSReport], model: str) -> str:
    """One ``scene, model, OATS_<delta>..., OATS_avg`` row per report."""
    if not reports:
        return ""
    deltas = reports[0].deltas
    buffer = io.StringIO()
    header = ["scene", "model"] + [f"OATS_{d}" for d in deltas] + ["OATS_avg"]
    buffer.write(",".join(header) + "\n")
    for report in reports:
        values = [f"{s:.4f}" for s in report.scores] + [f"{report.average:.4f}"]
        buffer.write(",".join([report.scene, model] + values) + "\n")
    return buffer.getvalue()
