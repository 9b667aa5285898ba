# -*- coding: utf-8 -*-

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from evmotion.errors import ConfigError
from evmotion.flowdecomp.field import FlowField
from evmotion.flowdecomp.morphology import mask_cleanup
from evmotion.flowdecomp.ransac import (
    AffineModel,
    RansacConfig,
    collect_valid_flow,
    fit_affine_ransac,
)
from evmotion.flowdecomp.residual import (
    MadThreshold,
    confidence_gate,
    mad_threshold,
    object_motion_mask,
    residual_flow,
)
from evmotion.variables import (
    DEFAULT_CLOSE_KERNEL,
    DEFAULT_GATE_POWER,
    DEFAULT_K_MAD,
    DEFAULT_MIN_COMPONENT,
    DEFAULT_OPEN_KERNEL,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ObjectMaskConfig:
    k_mad: float = DEFAULT_K_MAD
    gate_power: float = DEFAULT_GATE_POWER
    open_kernel: int = DEFAULT_OPEN_KERNEL
    close_kernel: int = DEFAULT_CLOSE_KERNEL
    min_component: int = DEFAULT_MIN_COMPONENT

    def validate(self) -> "ObjectMaskConfig":
        if self.k_mad < 0:
            raise ConfigError("must be non-negative", "k_mad")
        if self.gate_power <= 0:
            raise ConfigError("must be positive", "gate_power")
        for name in ("open_kernel", "close_kernel"):
            if getattr(self, name) < 1:
                raise ConfigError("must be >= 1", name)
        if self.min_component < 0:
            raise ConfigError("must be non-negative", "min_component")
        return self


@dataclass(frozen=True, eq=False)
class Decomposition:
    model: AffineModel
    residual: np.ndarray
    gate: np.ndarray
    threshold: MadThreshold
    raw_mask: np.ndarray
    mask: np.ndarray
    samples: int

    @property
    def area_ratio(self) -> float:
        return float(self.mask.mean()) if self.mask.size else 0.0


def decompose_flow(
    flows: Union[FlowField, Sequence[FlowField]],
    ransac: Optional[RansacConfig] = None,
    masking: Optional[ObjectMaskConfig] = None,
    rng: Optional[np.random.Generator] = None,
    reference: int = 0,
) -> Decomposition:
    """Split flow into camera ego-motion and an object motion mask.

    The affine ego-motion model is fitted on the valid vectors pooled from all
    ``flows``; the residual and mask are computed on ``flows[reference]``.
    """
    ransac = (ransac or RansacConfig()).validate()
    masking = (masking or ObjectMaskConfig()).validate()
    fields = [flows] if isinstance(flows, FlowField) else list(flows)
    if not 0 <= reference < len(fields):
        raise ConfigError(
            f"reference {reference} outside {len(fields)} fields", "reference"
        )
    rng = ransac.generator(rng)

    samples = collect_valid_flow(fields, ransac, rng)
    model = fit_affine_ransac(samples, ransac, rng)

    target = fields[reference]
    residual = residual_flow(target, model)
    gate = confidence_gate(
        target.visibility_or_ones(),
        target.confidence_or_ones(),
        ransac.vis_min,
        masking.gate_power,
    )
    threshold = mad_threshold(residual * gate, masking.k_mad)
    raw_mask = object_motion_mask(residual, gate, masking.k_mad)
    mask = mask_cleanup(
        raw_mask, masking.open_kernel, masking.close_kernel, masking.min_component
    )
    logger.info(
        "decomposed flow: samples=%d tau=%.4f raw=%d cleaned=%d",
        len(samples),
        threshold.tau,
        int(raw_mask.sum()),
        int(mask.sum()),
    )
    return Decomposition(
        model=model,
        residual=residual,
        gate=gate,
        threshold=threshold,
        raw_mask=raw_mask,
        mask=mask,
        samples=len(samples),
    )
