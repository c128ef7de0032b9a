"""Edge-preserving image smoothing by iterative least squares.

A robust gradient penalty is minimized by repeatedly tightening a quadratic
upper bound and solving the resulting least-squares problem in the Fourier
domain, so every iteration costs a pair of FFTs. On top of the smoother:
detail enhancement, single- and multi-scale HDR tone mapping, clip-art
cleanup, texture smoothing, and a penalty-splitting baseline.
"""

from .applications import (
    DetailBoost,
    TonemapParams,
    clipart_clean,
    detail_enhance,
    gaussian_blur,
    texture_smooth,
    tonemap_multi,
    tonemap_single,
)
from .errors import ImageFormatError, NumericalError
from .formats import read_image, write_image, write_trace
from .hqs import HqsParams, hqs_smooth_plane
from .image import (
    GRAY,
    RGB,
    YUV,
    ColorMode,
    MultiImage,
    as_plane,
    clip01,
    luminance,
    rgb_to_yuv,
    yuv_to_rgb,
)
from .penalty import (
    DEFAULT_EPS,
    Charbonnier,
    Welsch,
    aux_update,
    bound_remainder,
    huber,
    soft_threshold,
)
from .smoother import (
    EnergyTrace,
    SmoothParams,
    augmented_energy,
    energy,
    smooth_color,
    smooth_plane,
)
from .solver import (
    SolverPlan,
    adjoint_accumulate,
    dense_oracle_solve,
    grad_x,
    grad_y,
    make_plan,
    periodic_difference_matrices,
    solve_ls,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_EPS",
    "GRAY",
    "RGB",
    "YUV",
    "Charbonnier",
    "ColorMode",
    "DetailBoost",
    "EnergyTrace",
    "HqsParams",
    "ImageFormatError",
    "MultiImage",
    "NumericalError",
    "SmoothParams",
    "SolverPlan",
    "TonemapParams",
    "Welsch",
    "adjoint_accumulate",
    "as_plane",
    "augmented_energy",
    "aux_update",
    "bound_remainder",
    "clip01",
    "clipart_clean",
    "dense_oracle_solve",
    "detail_enhance",
    "energy",
    "gaussian_blur",
    "grad_x",
    "grad_y",
    "hqs_smooth_plane",
    "huber",
    "luminance",
    "make_plan",
    "periodic_difference_matrices",
    "read_image",
    "rgb_to_yuv",
    "smooth_color",
    "smooth_plane",
    "soft_threshold",
    "solve_ls",
    "texture_smooth",
    "tonemap_multi",
    "tonemap_single",
    "write_image",
    "write_trace",
    "yuv_to_rgb",
]
