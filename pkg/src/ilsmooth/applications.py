"""Application presets built on the smoother.

Four pipelines: detail enhancement (boost what smoothing removes), HDR tone
mapping in one or three scales (compress a smoothed log-luminance base, keep
the details), clip-art compression-artifact removal, and texture smoothing.
All outputs are clipped to [0, 1]; tone mapping additionally guards against
a degenerate base range.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.ndimage import convolve1d

from .errors import NumericalError
from .image import GRAY, RGB, ColorMode, MultiImage, as_plane, clip01
from .penalty import Welsch
from .smoother import SmoothParams, smooth_color, smooth_plane


@dataclass(frozen=True)
class DetailBoost:
    """Multiplier for the detail layer f - smooth(f); 1 is a no-op."""

    k: float = 3.0

    def __post_init__(self):
        if not (self.k >= 0.0 and np.isfinite(self.k)):
            raise ValueError(f"boost k must be finite and >= 0, got {self.k}")


@dataclass(frozen=True)
class TonemapParams:
    """Settings for log-domain tone mapping.

    base_params drives the base-layer smoothing. target_range is the output
    dynamic range of the compressed base in log10 units (2.0 = 100:1).
    saturation is the chroma exponent in (0, 1]. For the multi-scale
    variant, lambdas holds a fine-to-coarse non-decreasing triple that
    overrides base_params.lam per scale, and weights[i] scales detail layer
    i (0 = finest).
    """

    base_params: SmoothParams
    target_range: float = 2.0
    saturation: float = 0.6
    log_offset: float = 1e-6
    lambdas: tuple | None = None
    weights: tuple = (1.0, 1.0, 1.0)

    def __post_init__(self):
        if not (self.target_range > 0.0 and np.isfinite(self.target_range)):
            raise ValueError(
                f"target_range must be finite and positive, got {self.target_range}"
            )
        if not (0.0 < self.saturation <= 1.0):
            raise ValueError(f"saturation must be in (0,1], got {self.saturation}")
        if not (self.log_offset > 0.0 and np.isfinite(self.log_offset)):
            raise ValueError(
                f"log_offset must be finite and positive, got {self.log_offset}"
            )
        if self.lambdas is not None:
            lams = tuple(float(v) for v in self.lambdas)
            if len(lams) != 3:
                raise ValueError(f"need exactly 3 lambdas, got {len(lams)}")
            if not all(v > 0.0 and np.isfinite(v) for v in lams):
                raise ValueError(f"lambdas must be finite and positive, got {lams}")
            if not (lams[0] <= lams[1] <= lams[2]):
                raise ValueError(
                    f"lambdas must be non-decreasing fine-to-coarse, got {lams}"
                )
            object.__setattr__(self, "lambdas", lams)
        wts = tuple(float(v) for v in self.weights)
        if len(wts) != 3 or not all(np.isfinite(v) for v in wts):
            raise ValueError(f"weights must be 3 finite values, got {self.weights}")
        object.__setattr__(self, "weights", wts)


def detail_enhance(
    img: MultiImage, params: SmoothParams, boost: DetailBoost = DetailBoost()
) -> MultiImage:
    """Sharpen by boosting the detail layer: clip01(u + k*(f - u)).

    k = 1 reconstructs the input and is returned as-is, bit for bit.
    """
    if boost.k == 1.0:
        return img
    u = smooth_color(img, params)
    out = []
    for ch_f, ch_u in zip(img.channels, u.channels):
        out.append(clip01(ch_u + boost.k * (ch_f - ch_u)))
    return MultiImage(tuple(out), img.space)


def _check_hdr_inputs(lum: np.ndarray, rgb: MultiImage) -> None:
    if rgb.space != RGB:
        raise ValueError(f"tone mapping needs an rgb image, got {rgb.space!r}")
    if lum.shape != (rgb.height, rgb.width):
        raise ValueError(
            f"luminance {lum.shape} does not match image "
            f"{(rgb.height, rgb.width)}"
        )
    if not np.all(lum > 0.0):
        raise ValueError("hdr luminance must be strictly positive")
    for ch in rgb.channels:
        if not np.all(ch >= 0.0):
            raise ValueError("hdr rgb channels must be non-negative")


def _compress_base(base: np.ndarray, target_range: float) -> np.ndarray:
    spread = float(base.max() - base.min())
    if spread < 1e-9:
        raise NumericalError(
            f"degenerate base dynamic range {spread:g}; nothing to compress"
        )
    cf = target_range / spread
    return (base - base.max()) * cf


def _recolor(
    lum: np.ndarray, rgb: MultiImage, log_lum_out: np.ndarray, saturation: float
) -> MultiImage:
    lum_out = 10.0 ** log_lum_out
    out = []
    for ch in rgb.channels:
        out.append(clip01((ch / lum) ** saturation * lum_out))
    return MultiImage(tuple(out), RGB)


def tonemap_single(
    hdr_luminance, rgb: MultiImage, tp: TonemapParams
) -> MultiImage:
    """Compress the smoothed log10 luminance base to tp.target_range.

    The detail layer (log luminance minus base) is added back unscaled, so
    local contrast survives the compression; colors are reattached through
    the per-channel ratio (C/lum)^saturation.
    """
    lum = as_plane(hdr_luminance)
    _check_hdr_inputs(lum, rgb)
    log_lum = np.log10(lum + tp.log_offset)
    base = smooth_plane(log_lum, tp.base_params)
    detail = log_lum - base
    log_lum_out = _compress_base(base, tp.target_range) + detail
    return _recolor(lum, rgb, log_lum_out, tp.saturation)


def tonemap_multi(
    hdr_luminance, rgb: MultiImage, tp: TonemapParams
) -> MultiImage:
    """Three-scale variant: compress the coarsest base, reweight the details.

    Bases b1, b2, b3 smooth the log luminance at tp.lambdas (fine to
    coarse); detail layers are the consecutive differences. The coarsest
    base is compressed exactly as in tonemap_single and the details are
    added back scaled by tp.weights (index 0 = finest).
    """
    if tp.lambdas is None:
        raise ValueError("tonemap_multi needs tp.lambdas (a fine-to-coarse triple)")
    lum = as_plane(hdr_luminance)
    _check_hdr_inputs(lum, rgb)
    log_lum = np.log10(lum + tp.log_offset)
    bases = [
        smooth_plane(log_lum, replace(tp.base_params, lam=lam))
        for lam in tp.lambdas
    ]
    d0 = log_lum - bases[0]
    d1 = bases[0] - bases[1]
    d2 = bases[1] - bases[2]
    w0, w1, w2 = tp.weights
    log_lum_out = (
        _compress_base(bases[2], tp.target_range) + w2 * d2 + w1 * d1 + w0 * d0
    )
    return _recolor(lum, rgb, log_lum_out, tp.saturation)


def clipart_clean(img: MultiImage, gamma: float, lam: float) -> MultiImage:
    """Remove compression artifacts from flat-color artwork.

    Welsch penalty with fixed curvature 2 and ten iterations: flat regions
    collapse to flat, while edges beyond a few gamma pass through almost
    untouched, so clean piecewise-constant input is nearly a fixpoint.
    """
    params = SmoothParams(
        Welsch(gamma), lam, iters=10, c=2.0, color_mode=ColorMode.PER_CHANNEL_RGB
    )
    return smooth_color(img, params).map_channels(clip01)


def texture_smooth(
    img: MultiImage, gamma: float, lam: float, sigma_pre: float = 1.0
) -> MultiImage:
    """Flatten fine texture while keeping large structures.

    A small Gaussian pre-blur knocks regular texture off its pedestal so
    the Welsch penalty (15 iterations) treats it as noise rather than as
    a dense field of edges.
    """
    if not (sigma_pre >= 0.0 and np.isfinite(sigma_pre)):
        raise ValueError(f"sigma_pre must be finite and >= 0, got {sigma_pre}")
    blurred = img.map_channels(lambda ch: gaussian_blur(ch, sigma_pre))
    params = SmoothParams(
        Welsch(gamma), lam, iters=15, color_mode=ColorMode.PER_CHANNEL_RGB
    )
    return smooth_color(blurred, params).map_channels(clip01)


def gaussian_blur(plane, sigma: float) -> np.ndarray:
    """Separable Gaussian with kernel radius ceil(3*sigma), replicate edges."""
    plane = as_plane(plane)
    if not (sigma >= 0.0 and np.isfinite(sigma)):
        raise ValueError(f"sigma must be finite and >= 0, got {sigma}")
    if sigma == 0.0:
        return np.array(plane)
    radius = int(np.ceil(3.0 * sigma))
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-(x * x) / (2.0 * sigma * sigma))
    kernel /= kernel.sum()
    out = convolve1d(plane, kernel, axis=0, mode="nearest")
    return convolve1d(out, kernel, axis=1, mode="nearest")
