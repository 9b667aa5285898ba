# -*- coding: utf-8 -*-

from dataclasses import dataclass
from typing import Optional

import numpy as np

from evmotion.errors import ConfigError
from evmotion.variables import HIGH_FPS_MAX_STRIDE, LOW_FPS_MAX_STRIDE

HIGH_FPS_THRESHOLD = 60.0


@dataclass(frozen=True)
class SamplingConfig:
    high_fps_max_stride: int = HIGH_FPS_MAX_STRIDE
    low_fps_max_stride: int = LOW_FPS_MAX_STRIDE
    high_fps_threshold: float = HIGH_FPS_THRESHOLD
    seed: Optional[int] = None

    def validate(self) -> "SamplingConfig":
        if self.high_fps_max_stride < 1:
            raise ConfigError("must be >= 1", "high_fps_max_stride")
        if self.low_fps_max_stride < 1:
            raise ConfigError("must be >= 1", "low_fps_max_stride")
        if self.high_fps_threshold <= 0:
            raise ConfigError("must be positive", "high_fps_threshold")
        return self

    def max_stride(self, fps: float) -> int:
        if fps <= 0:
            raise ConfigError(f"frame rate must be positive, got {fps}", "fps")
        if fps >= self.high_fps_threshold:
            return self.high_fps_max_stride
        return self.low_fps_max_stride


def sample_temporal_stride(
    fps: float,
    rng: np.random.Generator,
    cfg: Optional[SamplingConfig] = None,
) -> int:
    """Uniform frame stride in ``[1, max_stride]`` for a source of the given rate."""
    cfg = (cfg or SamplingConfig()).validate()
    return int(rng.integers(1, cfg.max_stride(fps) + 1))
