# -*- coding: utf-8 -*-

import io
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from evmotion.errors import ConfigError, EmptyIntervalsError, NumericalError
from evmotion.evstream.model import EventStream
from evmotion.ieianalysis.interval import compute_iei
from evmotion.variables import DEFAULT_IEI_AUTO_PERCENTILE, DEFAULT_IEI_BINS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IEIConfig:
    bins: int = DEFAULT_IEI_BINS
    iei_max: Optional[float] = None
    percentile: float = DEFAULT_IEI_AUTO_PERCENTILE

    def validate(self) -> "IEIConfig":
        if self.bins < 1:
            raise ConfigError(f"bins must be >= 1, got {self.bins}", "bins")
        if self.iei_max is not None and not self.iei_max > 0:
            raise ConfigError(f"iei_max must be > 0, got {self.iei_max}", "iei_max")
        if not 0 < self.percentile <= 100:
            raise ConfigError("percentile must lie in (0, 100]", "percentile")
        return self


@dataclass(frozen=True, eq=False)
class IEIHistogram:
    bins: int
    iei_max: float
    density: np.ndarray
    counts: np.ndarray
    total_samples: int
    bin_width: float
    mean: float

    @property
    def bin_left(self) -> np.ndarray:
        return np.arange(self.bins, dtype=np.float64) * self.bin_width

    @property
    def peak_bin(self) -> int:
        return int(np.argmax(self.counts))

    def integral(self) -> float:
        return float(np.sum(self.density) * self.bin_width)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        buffer.write("bin_left_us,density\n")
        for left, value in zip(self.bin_left, self.density):
            buffer.write(f"{left!r},{float(value)!r}\n")
        return buffer.getvalue()


def auto_iei_max(
    intervals: np.ndarray, percentile=DEFAULT_IEI_AUTO_PERCENTILE
) -> float:
    """Upper histogram range: the given percentile, or 1 us for all-zero data."""
    if intervals.size == 0:
        raise EmptyIntervalsError()
    value = float(np.percentile(intervals, percentile))
    return value if value > 0 else 1.0


def iei_histogram(
    intervals: np.ndarray,
    bins=DEFAULT_IEI_BINS,
    iei_max: Optional[float] = None,
    percentile=DEFAULT_IEI_AUTO_PERCENTILE,
) -> IEIHistogram:
    """Normalized density ``n(b) / (N * bin_width)`` over ``[0, iei_max]``.

    Values beyond ``iei_max`` are clipped into the last bin.
    """
    IEIConfig(bins=bins, iei_max=iei_max, percentile=percentile).validate()
    values = np.asarray(intervals, dtype=np.float64).reshape(-1)
    if values.size == 0:
        raise EmptyIntervalsError()

    upper = auto_iei_max(values, percentile) if iei_max is None else float(iei_max)
    width = upper / bins
    index = np.clip(np.floor(values / width), 0, bins - 1).astype(np.int64)
    counts = np.bincount(index, minlength=bins)
    density = counts / (values.size * width)
    return IEIHistogram(
        bins=bins,
        iei_max=upper,
        density=density,
        counts=counts,
        total_samples=int(values.size),
        bin_width=width,
        mean=float(np.mean(values)),
    )


@dataclass(frozen=True, eq=False)
class IEIComparison:
    real: IEIHistogram
    synth: IEIHistogram
    mean_real: float
    mean_synth: float
    mean_ratio: float


def compare_streams(
    real: EventStream,
    synth: EventStream,
    bins=DEFAULT_IEI_BINS,
    iei_max: Optional[float] = None,
    percentile=DEFAULT_IEI_AUTO_PERCENTILE,
) -> IEIComparison:
    """Histogram both streams on one shared range and report the mean ratio."""
    real_iei = compute_iei(real)
    if real_iei.size == 0:
        raise EmptyIntervalsError("real")
    synth_iei = compute_iei(synth)
    if synth_iei.size == 0:
        raise EmptyIntervalsError("synth")
    return compare_intervals(real_iei, synth_iei, bins, iei_max, percentile)


def compare_intervals(
    real_iei: np.ndarray,
    synth_iei: np.ndarray,
    bins=DEFAULT_IEI_BINS,
    iei_max: Optional[float] = None,
    percentile=DEFAULT_IEI_AUTO_PERCENTILE,
) -> IEIComparison:
    if real_iei.size == 0:
        raise EmptyIntervalsError("real")
    if synth_iei.size == 0:
        raise EmptyIntervalsError("synth")

    if iei_max is None:
        iei_max = max(
            auto_iei_max(real_iei, percentile), auto_iei_max(synth_iei, percentile)
        )
    real_hist = iei_histogram(real_iei, bins, iei_max)
    synth_hist = iei_histogram(synth_iei, bins, iei_max)
    if real_hist.mean == 0:
        raise NumericalError("mean real interval is zero, ratio undefined")

    ratio = synth_hist.mean / real_hist.mean
    logger.info(
        "IEI mean real=%.3f us synth=%.3f us ratio=%.3f",
        real_hist.mean,
        synth_hist.mean,
        ratio,
    )
    return IEIComparison(
        real=real_hist,
        synth=synth_hist,
        mean_real=real_hist.mean,
        mean_synth=synth_hist.mean,
        mean_ratio=ratio,
    )
