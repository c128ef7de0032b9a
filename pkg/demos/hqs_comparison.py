"""Fixed-bound iteration versus a variable-splitting baseline.

Both solvers chase the same kind of objective by alternating a pointwise
gradient step with a screened-Poisson solve, but the routes differ. The
splitting baseline hard-selects gradients through a dead zone that shrinks
as its coupling weight grows, so it needs a schedule; the fixed-bound
iteration applies one smooth update per pass with nothing to schedule.

On this piecewise test card the shrinking dead zone is a near-perfect fit
and the baseline lands closer to the clean scene. The fixed-bound engine
earns its keep elsewhere: one reusable spectral plan, no schedule to tune,
and graceful behavior on photographs, which is why the application presets
all build on it.
"""

from pathlib import Path

import numpy as np

from ilsmooth import (
    GRAY,
    Charbonnier,
    HqsParams,
    MultiImage,
    SmoothParams,
    hqs_smooth_plane,
    smooth_plane,
    write_image,
)
from ilsmooth.solver import grad_x, grad_y

OUT = Path(__file__).parent / "out"


def make_scene(h=96, w=192, seed=17):
    """A step plus a shallow ramp, returned clean and noise-corrupted."""
    rng = np.random.default_rng(seed)
    clean = np.full((h, w), 0.25)
    clean[:, w // 2:] = 0.75
    clean += np.linspace(0.0, 0.15, w)[None, :]
    noisy = clean + 0.04 * rng.standard_normal((h, w))
    return clean, noisy


def psnr(ref, img):
    return 10.0 * np.log10(1.0 / np.mean((ref - img) ** 2))


def main():
    OUT.mkdir(exist_ok=True)
    clean, noisy = make_scene()

    ils = smooth_plane(noisy, SmoothParams(Charbonnier(p=0.8), lam=0.4, iters=4))
    hqs_params = HqsParams(lam=0.25)
    hqs = hqs_smooth_plane(noisy, hqs_params)

    print("psnr against the clean scene:")
    for tag, img in (("noisy input", noisy), ("fixed-bound", ils), ("splitting", hqs)):
        print(f"  {tag:<12} {psnr(clean, img):6.2f} dB")

    grads = np.concatenate([grad_x(noisy).ravel(), grad_y(noisy).ravel()])
    print("splitting dead zone per pass (fixed-bound has none):")
    beta = hqs_params.initial_beta
    for n in range(hqs_params.iters):
        alpha = hqs_params.lam / (2.0 * beta)
        inside = np.mean(np.abs(grads) <= alpha)
        print(f"  pass {n}: |gradient| <= {alpha:.4f} zeroed "
              f"({inside:.1%} of the input's gradients)")
        beta *= hqs_params.kappa

    row = clean.shape[0] // 2
    print("scan line across the step (every 16th column):")
    print("  col   clean  noisy  fixed  split")
    for col in range(8, clean.shape[1], 16):
        print(f"  {col:3d}   {clean[row, col]:.3f}  {noisy[row, col]:.3f}"
              f"  {ils[row, col]:.3f}  {hqs[row, col]:.3f}")

    gap = np.ones((clean.shape[0], 4))
    montage = np.hstack([np.clip(noisy, 0, 1), gap, np.clip(ils, 0, 1), gap,
                         np.clip(hqs, 0, 1)])
    write_image(OUT / "hqs_montage.png", MultiImage((montage,), GRAY))
    print(f"wrote noisy / fixed-bound / splitting montage to {OUT}/")


if __name__ == "__main__":
    main()
