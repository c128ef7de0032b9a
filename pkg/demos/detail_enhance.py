"""Detail enhancement by boosting the smoothing residual.

Splits an image into a smoothed base and a detail residual, then writes
the base plus the residual scaled 3x back together. Because the base
keeps its edges sharp, the boost amplifies fine texture without the
bright halos that a Gaussian base would produce around strong edges.
"""

from pathlib import Path

import numpy as np

from ilsmooth import (
    Charbonnier,
    DetailBoost,
    MultiImage,
    SmoothParams,
    detail_enhance,
    write_image,
)

OUT = Path(__file__).parent / "out"


def make_portrait(h=192, w=192, seed=11):
    # smooth shading with an embroidered band: detail worth boosting
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:h, 0:w] / h
    base = 0.3 + 0.4 * np.exp(-((yy - 0.45) ** 2 + (xx - 0.5) ** 2) / 0.12)
    base[int(0.7 * h) :, :] = 0.22
    band = (yy > 0.55) & (yy < 0.68)
    detail = 0.05 * np.sin(40 * xx) * np.sin(35 * yy) + 0.015 * rng.standard_normal((h, w))
    rgb = np.stack([base + band * 0.08, base, base + (1 - band) * 0.03], axis=-1)
    rgb += detail[..., None] * (0.8, 1.0, 0.9)
    return MultiImage.from_array(np.clip(rgb, 0.0, 1.0))


def main():
    OUT.mkdir(exist_ok=True)
    img = make_portrait()
    params = SmoothParams(Charbonnier(p=0.8), lam=1.0, iters=4)

    write_image(OUT / "portrait_input.png", img)
    for k in (0.0, 3.0, 6.0):
        out = detail_enhance(img, params, DetailBoost(k))
        name = {0.0: "base_only", 3.0: "boost_3x", 6.0: "boost_6x"}[k]
        write_image(OUT / f"portrait_{name}.png", out)
        print(f"k={k:g}: wrote portrait_{name}.png")

    # k=1 is the exact identity: base + 1x residual reassembles the input
    same = detail_enhance(img, params, DetailBoost(1.0))
    assert all(a is b for a, b in zip(same.channels, img.channels))
    print("k=1 returned the input object untouched, as documented")


if __name__ == "__main__":
    main()
