# -*- coding: utf-8 -*-

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np

from evmotion.errors import (
    ConfigError,
    DegenerateGeometryError,
    InsufficientSupportError,
    NumericalError,
    ShapeMismatchError,
    ValidationError,
)
from evmotion.flowdecomp.field import FlowField
from evmotion.variables import (
    DEFAULT_CONF_MIN,
    DEFAULT_MAX_POINTS,
    DEFAULT_MIN_FLOW_MAG,
    DEFAULT_RANSAC_ITERATIONS,
    DEFAULT_REPROJ_THRESHOLD,
    DEFAULT_SECOND_PASS_DISCARD,
    DEFAULT_VIS_MIN,
    MIN_TRIANGLE_AREA,
)

logger = logging.getLogger(__name__)

MIN_SAMPLES = 3
EVALUATION_CHUNK = 64


@dataclass(frozen=True)
class RansacConfig:
    reproj_threshold: float = DEFAULT_REPROJ_THRESHOLD
    iterations: int = DEFAULT_RANSAC_ITERATIONS
    second_pass_discard: float = DEFAULT_SECOND_PASS_DISCARD
    min_flow_mag: float = DEFAULT_MIN_FLOW_MAG
    vis_min: float = DEFAULT_VIS_MIN
    conf_min: float = DEFAULT_CONF_MIN
    max_points: int = DEFAULT_MAX_POINTS
    seed: Optional[int] = None

    def validate(self) -> "RansacConfig":
        if not 0 < self.second_pass_discard < 1:
            raise ConfigError("must lie in (0, 1)", "second_pass_discard")
        for name in ("reproj_threshold", "min_flow_mag", "vis_min", "conf_min"):
            if getattr(self, name) < 0:
                raise ConfigError("must be non-negative", name)
        if self.iterations < 1:
            raise ConfigError("must be >= 1", "iterations")
        if self.max_points < MIN_SAMPLES:
            raise ConfigError(f"must be >= {MIN_SAMPLES}", "max_points")
        return self

    def generator(
        self, rng: Optional[np.random.Generator] = None
    ) -> np.random.Generator:
        return rng if rng is not None else np.random.default_rng(self.seed)


@dataclass(frozen=True, eq=False)
class FlowSamples:
    """Pixel positions ``(x, y)``, their flow vectors ``(u, v)`` and weights."""

    positions: np.ndarray
    flows: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        positions = np.asarray(self.positions, dtype=np.float64).reshape(-1, 2)
        flows = np.asarray(self.flows, dtype=np.float64).reshape(-1, 2)
        weights = np.asarray(self.weights, dtype=np.float64).reshape(-1)
        if not (len(positions) == len(flows) == len(weights)):
            raise ShapeMismatchError("positions, flows and weights differ in length")
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "flows", flows)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return len(self.weights)

    def take(self, index: np.ndarray) -> "FlowSamples":
        return FlowSamples(
            self.positions[index], self.flows[index], self.weights[index]
        )


@dataclass(frozen=True, eq=False)
class AffineModel:
    """2x3 matrix mapping homogeneous ``[x, y, 1]`` to predicted flow ``(u, v)``."""

    a: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.float64)
        if a.shape != (2, 3):
            raise ShapeMismatchError(f"affine matrix must be 2x3, got {a.shape}", "a")
        if not np.all(np.isfinite(a)):
            raise NumericalError("affine matrix has non-finite entries", "a")
        object.__setattr__(self, "a", a)

    @classmethod
    def identity_translation(cls, du=0.0, dv=0.0) -> "AffineModel":
        return cls(np.array([[0.0, 0.0, du], [0.0, 0.0, dv]]))

    def predict(self, positions: np.ndarray) -> np.ndarray:
        positions = np.asarray(positions, dtype=np.float64).reshape(-1, 2)
        return positions @ self.a[:, :2].T + self.a[:, 2]

    def predict_grid(self, height: int, width: int) -> np.ndarray:
        """Predicted flow at every pixel as an (H, W, 2) array."""
        ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
        u = self.a[0, 0] * xs + self.a[0, 1] * ys + self.a[0, 2]
        v = self.a[1, 0] * xs + self.a[1, 1] * ys + self.a[1, 2]
        return np.stack([u, v], axis=-1)

    def errors(self, samples: FlowSamples) -> np.ndarray:
        return np.linalg.norm(samples.flows - self.predict(samples.positions), axis=1)

    def to_json(self) -> Dict[str, Any]:
        return {"a": self.a.tolist()}

    @classmethod
    def from_json(cls, document: Dict[str, Any]) -> "AffineModel":
        if not isinstance(document, dict) or "a" not in document:
            raise ValidationError("affine document needs an 'a' matrix")
        return cls(np.asarray(document["a"], dtype=np.float64))


def _field_samples(field: FlowField, cfg: RansacConfig) -> FlowSamples:
    keep = field.magnitude >= cfg.min_flow_mag
    keep &= field.visibility_or_ones() >= cfg.vis_min
    confidence = field.confidence_or_ones()
    keep &= confidence >= cfg.conf_min
    ys, xs = np.nonzero(keep)
    return FlowSamples(
        positions=np.stack([xs, ys], axis=1),
        flows=np.stack([field.u[ys, xs], field.v[ys, xs]], axis=1),
        weights=confidence[ys, xs],
    )


def _weighted_subsample(
    weights: np.ndarray, size: int, rng: np.random.Generator
) -> np.ndarray:
    positive = np.flatnonzero(weights > 0)
    if len(positive) >= size:
        p = weights[positive] / weights[positive].sum()
        return rng.choice(positive, size=size, replace=False, p=p)
    rest = np.flatnonzero(weights <= 0)
    fill = rng.choice(rest, size=size - len(positive), replace=False)
    return np.concatenate([positive, fill])


def collect_valid_flow(
    flows: Union[FlowField, Sequence[FlowField]],
    cfg: RansacConfig,
    rng: Optional[np.random.Generator] = None,
) -> FlowSamples:
    """Pool the trustworthy flow vectors of one or more fields.

    Vectors pass when visibility, confidence and magnitude clear their
    thresholds. Above ``max_points`` the pool is subsampled without
    replacement, with probability proportional to confidence. Vectors of
    zero confidence are drawn uniformly, and only when the confident ones
    do not fill ``max_points``.
    """
    cfg.validate()
    fields = [flows] if isinstance(flows, FlowField) else list(flows)
    parts = [_field_samples(field, cfg) for field in fields]
    if not parts:
        raise InsufficientSupportError("no flow fields given")
    samples = FlowSamples(
        np.concatenate([s.positions for s in parts]),
        np.concatenate([s.flows for s in parts]),
        np.concatenate([s.weights for s in parts]),
    )
    if len(samples) < MIN_SAMPLES:
        raise InsufficientSupportError(
            f"only {len(samples)} valid flow vectors, need {MIN_SAMPLES}"
        )

    if len(samples) > cfg.max_points:
        rng = cfg.generator(rng)
        chosen = _weighted_subsample(samples.weights, cfg.max_points, rng)
        logger.debug(
            "subsampled %d of %d valid flow vectors", cfg.max_points, len(samples)
        )
        samples = samples.take(np.sort(chosen))
    return samples


def _design(positions: np.ndarray) -> np.ndarray:
    return np.concatenate([positions, np.ones((len(positions), 1))], axis=1)


def weighted_affine_fit(samples: FlowSamples) -> AffineModel:
    """Weighted least-squares affine fit; raises on rank-deficient support."""
    root = np.sqrt(samples.weights)[:, None]
    design = _design(samples.positions) * root
    target = samples.flows * root
    solution, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    if rank < 3:
        raise DegenerateGeometryError("collinear support, affine fit is singular")
    return AffineModel(solution.T)


def _triangle_area(p0, p1, p2) -> np.ndarray:
    d1 = p1 - p0
    d2 = p2 - p0
    return 0.5 * np.abs(d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])


def _minimal_models(samples: FlowSamples, cfg: RansacConfig, rng) -> np.ndarray:
    """Exact affine solutions of random non-degenerate triples, as (k, 3, 2)."""
    n = len(samples)
    triples = rng.integers(0, n, size=(cfg.iterations, 3))
    p = samples.positions
    area = _triangle_area(p[triples[:, 0]], p[triples[:, 1]], p[triples[:, 2]])
    triples = triples[area >= MIN_TRIANGLE_AREA]
    if len(triples) == 0:
        raise DegenerateGeometryError(
            f"all {cfg.iterations} sampled triples were collinear or repeated"
        )
    design = _design(p)[triples]
    target = samples.flows[triples]
    return np.linalg.solve(design, target)


def _best_consensus(
    samples: FlowSamples, models: np.ndarray, threshold: float
) -> np.ndarray:
    design = _design(samples.positions)
    best_count = -1
    best_inliers = np.zeros(len(samples), dtype=bool)
    for begin in range(0, len(models), EVALUATION_CHUNK):
        chunk = models[begin : begin + EVALUATION_CHUNK]
        predicted = np.einsum("nk,mkc->mnc", design, chunk)
        error = np.linalg.norm(predicted - samples.flows[None], axis=2)
        inliers = error <= threshold
        counts = inliers.sum(axis=1)
        index = int(np.argmax(counts))
        if counts[index] > best_count:
            best_count = int(counts[index])
            best_inliers = inliers[index]
    return best_inliers


def fit_affine_ransac(
    samples: FlowSamples,
    cfg: RansacConfig,
    rng: Optional[np.random.Generator] = None,
) -> AffineModel:
    """Two-pass robust affine fit of a flow sample set.

    Pass one keeps the consensus set of the best minimal model and refits it
    by weighted least squares. Pass two ranks those inliers by their error
    under the refit, drops the worst ``second_pass_discard`` share and refits
    again.
    """
    cfg.validate()
    if len(samples) < MIN_SAMPLES:
        raise InsufficientSupportError(
            f"need {MIN_SAMPLES} samples, got {len(samples)}"
        )
    rng = cfg.generator(rng)

    models = _minimal_models(samples, cfg, rng)
    inliers = np.flatnonzero(_best_consensus(samples, models, cfg.reproj_threshold))
    support = samples.take(inliers)
    first = weighted_affine_fit(support)

    errors = first.errors(support)
    discard = int(np.floor(cfg.second_pass_discard * len(support)))
    keep = max(MIN_SAMPLES, len(support) - discard)
    order = np.argsort(errors, kind="stable")[:keep]
    try:
        second = weighted_affine_fit(support.take(np.sort(order)))
    except DegenerateGeometryError:
        logger.warning("second RANSAC pass is degenerate, keeping the first-pass model")
        return first

    logger.debug(
        "affine RANSAC: %d samples, %d inliers, %d kept",
        len(samples),
        len(support),
        keep,
    )
    return second
