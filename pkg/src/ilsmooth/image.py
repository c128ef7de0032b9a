"""Image containers and color conversions.

Planes are 2-D float64 arrays. A MultiImage bundles 1 (gray) or 3 (rgb/yuv)
planes of identical shape. Values are finite but otherwise unconstrained;
only the file writers and the application-level helpers clip to [0, 1].

RGB <-> YUV uses the BT.601 full-range matrix:
    Y = 0.299 R + 0.587 G + 0.114 B
    U = 0.492 (B - Y)
    V = 0.877 (R - Y)
and the inverse is the exact algebraic inversion, so a round trip is exact
to floating point. yuv_to_rgb does not clip.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

GRAY = "gray"
RGB = "rgb"
YUV = "yuv"

_SPACES = (GRAY, RGB, YUV)


class ColorMode(Enum):
    """How smooth_color treats RGB input."""

    PER_CHANNEL_RGB = "per_channel_rgb"
    LUMINANCE_ONLY = "luminance_only"


def as_plane(a) -> np.ndarray:
    """Validate and convert one image plane to a float64 2-D array."""
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"image plane must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"image plane must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("image plane contains non-finite values")
    return arr


def clip01(a: np.ndarray) -> np.ndarray:
    """Clamp a plane to the displayable range [0, 1]."""
    return np.clip(a, 0.0, 1.0)


@dataclass(frozen=True)
class MultiImage:
    """One gray plane or three color planes sharing a shape and a space tag."""

    channels: tuple
    space: str = RGB

    def __post_init__(self):
        if self.space not in _SPACES:
            raise ValueError(f"unknown color space {self.space!r}")
        planes = tuple(as_plane(ch) for ch in self.channels)
        n = len(planes)
        if self.space == GRAY:
            if n != 1:
                raise ValueError(f"gray image needs 1 channel, got {n}")
        elif n != 3:
            raise ValueError(f"{self.space} image needs 3 channels, got {n}")
        shape = planes[0].shape
        for ch in planes[1:]:
            if ch.shape != shape:
                raise ValueError(
                    f"channel shapes differ: {shape} vs {ch.shape}"
                )
        for ch in planes:
            ch.flags.writeable = False
        object.__setattr__(self, "channels", planes)

    @property
    def height(self) -> int:
        return self.channels[0].shape[0]

    @property
    def width(self) -> int:
        return self.channels[0].shape[1]

    @classmethod
    def from_array(cls, arr, space: str | None = None) -> "MultiImage":
        """Build from an (H, W) or (H, W, 3) array."""
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim == 2:
            return cls((arr,), space or GRAY)
        if arr.ndim == 3 and arr.shape[2] == 3:
            planes = tuple(arr[:, :, i] for i in range(3))
            return cls(planes, space or RGB)
        raise ValueError(f"expected (H, W) or (H, W, 3) array, got {arr.shape}")

    def to_array(self) -> np.ndarray:
        """Return (H, W) for gray, (H, W, 3) otherwise."""
        if self.space == GRAY:
            return np.array(self.channels[0])
        return np.stack(self.channels, axis=-1)

    def map_channels(self, fn) -> "MultiImage":
        """Apply fn to every plane, keeping the space tag."""
        return MultiImage(tuple(fn(ch) for ch in self.channels), self.space)


def rgb_to_yuv(img: MultiImage) -> MultiImage:
    if img.space != RGB:
        raise ValueError(f"rgb_to_yuv needs an rgb image, got {img.space!r}")
    r, g, b = img.channels
    y = 0.299 * r + 0.587 * g + 0.114 * b
    u = 0.492 * (b - y)
    v = 0.877 * (r - y)
    return MultiImage((y, u, v), YUV)


def yuv_to_rgb(img: MultiImage) -> MultiImage:
    if img.space != YUV:
        raise ValueError(f"yuv_to_rgb needs a yuv image, got {img.space!r}")
    y, u, v = img.channels
    r = y + v / 0.877
    b = y + u / 0.492
    # G carries the remainder of the luminance identity.
    g = (y - 0.299 * r - 0.114 * b) / 0.587
    return MultiImage((r, g, b), RGB)


def luminance(img: MultiImage) -> np.ndarray:
    """BT.601 luma of an rgb image, or the plane itself when gray."""
    if img.space == GRAY:
        return np.array(img.channels[0])
    if img.space != RGB:
        raise ValueError(f"luminance needs gray or rgb, got {img.space!r}")
    r, g, b = img.channels
    return 0.299 * r + 0.587 * g + 0.114 * b
