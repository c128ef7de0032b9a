"""Tone mapping a high-dynamic-range scene.

Builds a synthetic interior spanning roughly four decades of luminance
(dim room, two bright windows), stores it as a PFM, and compresses it
for display two ways: a single base/detail split, and the three-scale
variant that spreads detail preservation across fine, medium, and
coarse layers. The base is compressed to a fixed two-decade range while
detail survives at full contrast.
"""

from pathlib import Path

import numpy as np

from ilsmooth import (
    Charbonnier,
    MultiImage,
    SmoothParams,
    TonemapParams,
    luminance,
    tonemap_multi,
    tonemap_single,
    write_image,
)

OUT = Path(__file__).parent / "out"


def make_interior(n=160, seed=5):
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:n, 0:n] / (n - 1)
    lum = np.full((n, n), 0.05)
    lum[25:85, 20:65] = 380.0
    lum[40:110, 95:140] = 140.0
    wall = 10.0 ** (0.1 * np.sin(18 * np.pi * xx) * np.sin(14 * np.pi * yy))
    lum = lum * wall * (1.0 + 0.05 * rng.standard_normal((n, n)))
    tint = np.stack([0.5 + 0.5 * xx, np.full((n, n), 0.85), 0.5 + 0.5 * yy], axis=-1)
    return MultiImage.from_array(np.abs(lum)[..., None] * tint)


def main():
    OUT.mkdir(exist_ok=True)
    hdr = make_interior()
    write_image(OUT / "interior.pfm", hdr)
    lum = np.maximum(luminance(hdr), 1e-12)
    print(f"scene dynamic range: {np.log10(lum.max() / lum.min()):.1f} decades")

    base = SmoothParams(Charbonnier(p=1.0), lam=10.0, iters=4)
    tp = TonemapParams(base, target_range=2.0, saturation=0.6)
    write_image(OUT / "interior_single.png", tonemap_single(lum, hdr, tp))
    print("single-scale result written (base compressed to 2 decades)")

    tp3 = TonemapParams(base, lambdas=(1.0 / 8.0, 1.0, 8.0))
    write_image(OUT / "interior_multi.png", tonemap_multi(lum, hdr, tp3))
    print("three-scale result written (lambdas 1/8, 1, 8, fine to coarse)")


if __name__ == "__main__":
    main()
