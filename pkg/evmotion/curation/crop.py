# -*- coding: utf-8 -*-

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from evmotion.errors import ConfigError, ShapeMismatchError
from evmotion.evstream.density import DensityPatch
from evmotion.variables import (
    DEFAULT_CROP_HEIGHT,
    DEFAULT_CROP_WIDTH,
    DEFAULT_DENSITY_PATCH,
)


@dataclass(frozen=True)
class CropRect:
    x: int
    y: int
    width: int = DEFAULT_CROP_WIDTH
    height: int = DEFAULT_CROP_HEIGHT

    @property
    def shape(self) -> Tuple[int, int]:
        return self.height, self.width

    @property
    def area(self) -> int:
        return self.width * self.height

    def fits(self, frame_width: int, frame_height: int) -> bool:
        return (
            self.x >= 0
            and self.y >= 0
            and self.x + self.width <= frame_width
            and self.y + self.height <= frame_height
        )

    def contains(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Whether crop-local coordinates fall inside the rectangle."""
        return (x >= 0) & (x < self.width) & (y >= 0) & (y < self.height)

    def cut(self, image: np.ndarray) -> np.ndarray:
        """The crop region of a full-frame image; crop-sized inputs pass through."""
        if image.shape[:2] == self.shape:
            return image
        if not self.fits(image.shape[1], image.shape[0]):
            raise ShapeMismatchError(
                f"crop {self} does not fit a {image.shape[1]}x{image.shape[0]} image"
            )
        return image[self.y : self.y + self.height, self.x : self.x + self.width]


def patch_to_crop(
    patch: DensityPatch,
    event_size: Tuple[int, int],
    frame_size: Tuple[int, int],
    patch_size=DEFAULT_DENSITY_PATCH,
    crop_width=DEFAULT_CROP_WIDTH,
    crop_height=DEFAULT_CROP_HEIGHT,
) -> CropRect:
    """Map an event-grid patch to an RGB crop centred on the same scene point.

    The patch centre is scaled by the sensor-to-frame resolution ratio; the
    crop is then shifted back inside the frame. Sizes are ``(width, height)``.
    """
    event_width, event_height = event_size
    frame_width, frame_height = frame_size
    if crop_width > frame_width or crop_height > frame_height:
        raise ConfigError(
            f"crop {crop_width}x{crop_height} exceeds "
            f"frame {frame_width}x{frame_height}"
        )
    if event_width <= 0 or event_height <= 0:
        raise ConfigError(f"invalid event sensor size {event_width}x{event_height}")

    centre_x = min((patch.col + 0.5) * patch_size, event_width)
    centre_y = min((patch.row + 0.5) * patch_size, event_height)
    centre_x *= frame_width / event_width
    centre_y *= frame_height / event_height
    x = int(np.floor(centre_x - crop_width / 2.0))
    y = int(np.floor(centre_y - crop_height / 2.0))
    x = min(max(x, 0), frame_width - crop_width)
    y = min(max(y, 0), frame_height - crop_height)
    return CropRect(x=x, y=y, width=crop_width, height=crop_height)
