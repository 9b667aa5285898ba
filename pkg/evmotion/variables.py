# -*- coding: utf-8 -*-

from typing import Final, Tuple

# Event stacks
DEFAULT_STACK_EVENTS: Final[int] = 300_000
DEFAULT_STACK_BINS: Final[int] = 10

# Event-density crops
DEFAULT_DENSITY_PATCH: Final[int] = 64
DEFAULT_DENSITY_TOPK: Final[int] = 3
DEFAULT_CROP_WIDTH: Final[int] = 512
DEFAULT_CROP_HEIGHT: Final[int] = 384

# Temporal stride augmentation (170 FPS sources / ~20 FPS sources)
HIGH_FPS_MAX_STRIDE: Final[int] = 4
LOW_FPS_MAX_STRIDE: Final[int] = 2

# Inter-event intervals
DEFAULT_IEI_BINS: Final[int] = 200
DEFAULT_IEI_AUTO_PERCENTILE: Final[float] = 99.9

# Ego-motion decomposition
DEFAULT_REPROJ_THRESHOLD: Final[float] = 2.0
DEFAULT_RANSAC_ITERATIONS: Final[int] = 500
DEFAULT_SECOND_PASS_DISCARD: Final[float] = 0.20
DEFAULT_MIN_FLOW_MAG: Final[float] = 0.5
DEFAULT_VIS_MIN: Final[float] = 0.5
DEFAULT_CONF_MIN: Final[float] = 0.3
DEFAULT_MAX_POINTS: Final[int] = 20_000
DEFAULT_GATE_POWER: Final[float] = 2.0
DEFAULT_K_MAD: Final[float] = 4.0
MAD_CONSISTENCY_CONSTANT: Final[float] = 1.4826
MIN_TRIANGLE_AREA: Final[float] = 1e-6
DEFAULT_OPEN_KERNEL: Final[int] = 3
DEFAULT_CLOSE_KERNEL: Final[int] = 7
DEFAULT_MIN_COMPONENT: Final[int] = 200

# Curation
DEFAULT_MIN_AREA_RATIO: Final[float] = 0.05
DEFAULT_MAX_ENTRIES_PER_START: Final[int] = 3
DEFAULT_SEQUENCE_TEMPERATURE: Final[float] = 2.0
DEFAULT_OBJECT_FRACTION: Final[float] = 0.9

# Event motion masks
DEFAULT_N_WIDE: Final[int] = 10_000
DEFAULT_N_NARROW: Final[int] = 1_000

# OATS
OATS_DELTAS: Final[Tuple[int, ...]] = (0, 1, 2, 4, 8, 16)
DEFAULT_OATS_VIS_CUT: Final[float] = 0.5

# Distillation losses
DEFAULT_LOSS_ITERATIONS: Final[int] = 4
DEFAULT_LOSS_GAMMA: Final[float] = 0.8
DEFAULT_LOSS_ALPHA: Final[float] = 1.0
DEFAULT_LOSS_LAMBDA: Final[float] = 0.01
OCCLUDED_WEIGHT: Final[float] = 1.0 / 5.0
DEFAULT_LOSS_VIS_CUT: Final[float] = 0.5
DEFAULT_LOSS_CONF_CUT: Final[float] = 0.3
DEFAULT_HUBER_DELTA: Final[float] = 1.0

# Environment
LOG_LEVEL_ENV_NAME: Final[str] = "EVMOTION_LOG_LEVEL"
DISABLE_ORJSON_INSTALL_ENV_NAME: Final[str] = "EVMOTION_DISABLE_ORJSON_INSTALL"
