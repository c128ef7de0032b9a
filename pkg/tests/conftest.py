"""Shared fixtures: natural-image corpus, synthetic scenes, acceptance log.

Natural photos come from scikit-image's bundled samples (no network),
converted to [0,1] float64 and cut into disjoint 256x256 tiles. Clip-art
and HDR scenes are generated deterministically per seed.
"""

import io

import numpy as np
import pytest
from PIL import Image

import skimage.data as skd

from ilsmooth import RGB, MultiImage

# ---------------------------------------------------------------- acceptance

_RESULTS = []


class CriterionRecorder:
    """Collects one pass/fail verdict; reported at session end."""

    def __init__(self):
        self.cid = None
        self.desc = ""
        self.passed = False
        self.detail = "did not finish"

    def start(self, cid: int, desc: str):
        self.cid, self.desc = cid, desc

    def finish(self, passed: bool, detail: str = "", expected: bool = True):
        """Record the verdict. expected=False marks a documented shortfall:
        the summary line still reads FAIL, but the test reports xfail so the
        suite result stays actionable."""
        self.passed = bool(passed)
        self.detail = detail
        if passed:
            return
        if expected:
            assert passed, f"criterion {self.cid}: {detail or self.desc}"
        pytest.xfail(f"criterion {self.cid}: {detail or self.desc}")


@pytest.fixture
def criterion():
    rec = CriterionRecorder()
    yield rec
    if rec.cid is not None:
        _RESULTS.append((rec.cid, rec.desc, rec.passed, rec.detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for cid, desc, ok, detail in sorted(_RESULTS):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {cid:2d}: {desc}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)


# ------------------------------------------------------------ natural images


def _gray01(arr) -> np.ndarray:
    a = np.asarray(arr)
    if a.ndim == 3:
        a = a[..., :3].astype(np.float64) / 255.0
        return 0.299 * a[..., 0] + 0.587 * a[..., 1] + 0.114 * a[..., 2]
    return a.astype(np.float64) / 255.0


def _tiles(a: np.ndarray, size: int, count: int):
    h, w = a.shape[:2]
    out = []
    for r in range(h // size):
        for c in range(w // size):
            if len(out) == count:
                return out
            out.append(a[r * size : (r + 1) * size, c * size : (c + 1) * size])
    if len(out) < count:
        raise RuntimeError(f"image {a.shape} yields only {len(out)} tiles")
    return out


@pytest.fixture(scope="session")
def natural_gray_256():
    """Thirteen distinct 256x256 gray crops of bundled photographs."""
    plan = [
        ("camera", 2),
        ("moon", 1),
        ("brick", 1),
        ("grass", 1),
        ("gravel", 1),
        ("astronaut", 1),
        ("coffee", 1),
        ("rocket", 1),
        ("immunohistochemistry", 1),
        ("hubble_deep_field", 1),
        ("retina", 1),
        ("cat", 1),
    ]
    images = []
    for name, count in plan:
        images.extend(_tiles(_gray01(getattr(skd, name)()), 256, count))
    return images


@pytest.fixture(scope="session")
def natural_gray_20():
    """Twenty 256x256 gray crops, two per base photo."""
    names = [
        "camera",
        "moon",
        "brick",
        "grass",
        "gravel",
        "astronaut",
        "coffee",
        "rocket",
        "immunohistochemistry",
        "hubble_deep_field",
    ]
    images = []
    for name in names:
        images.extend(_tiles(_gray01(getattr(skd, name)()), 256, 2))
    return images


@pytest.fixture(scope="session")
def natural_rgb_256():
    """A few 256x256 RGB crops for color-path tests."""
    out = []
    for name in ("astronaut", "coffee", "cat"):
        arr = np.asarray(getattr(skd, name)())[..., :3].astype(np.float64) / 255.0
        out.append(MultiImage.from_array(arr[:256, :256], RGB))
    return out


# ------------------------------------------------------------ synthetic art

# Channel levels spaced >= 0.3 apart, so every clip-art edge is either zero
# or large compared to the Welsch gamma presets.
PALETTE = np.array([0.0, 0.3, 0.65, 1.0])


def make_clipart(seed: int, h: int = 256, w: int = 256, shapes: int = 12) -> MultiImage:
    rng = np.random.default_rng(seed)
    img = np.empty((h, w, 3))
    img[:] = PALETTE[rng.integers(0, 4, 3)]
    yy, xx = np.mgrid[0:h, 0:w]
    for _ in range(shapes):
        color = PALETTE[rng.integers(0, 4, 3)]
        if rng.random() < 0.5:
            r0 = int(rng.integers(0, h - 60))
            c0 = int(rng.integers(0, w - 60))
            rh = int(rng.integers(40, 130))
            cw = int(rng.integers(40, 130))
            img[r0 : r0 + rh, c0 : c0 + cw] = color
        else:
            cy = int(rng.integers(40, h - 40))
            cx = int(rng.integers(40, w - 40))
            ry, rx = rng.integers(22, 80, 2)
            mask = ((yy - cy) / ry) ** 2 + ((xx - cx) / rx) ** 2 <= 1.0
            img[mask] = color
    return MultiImage.from_array(img, RGB)


def jpeg_roundtrip(img: MultiImage, quality: int = 20) -> MultiImage:
    arr = np.floor(np.clip(img.to_array(), 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)
    buf = io.BytesIO()
    Image.fromarray(arr, "RGB").save(buf, format="JPEG", quality=quality)
    buf.seek(0)
    dec = np.asarray(Image.open(buf).convert("RGB"), dtype=np.float64) / 255.0
    return MultiImage.from_array(dec, RGB)


def psnr(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    mse = float(np.mean((a - b) ** 2))
    return float("inf") if mse == 0.0 else 10.0 * np.log10(1.0 / mse)


# -------------------------------------------------------------- HDR fixtures


def _hdr_scene(kind: str, n: int = 128):
    yy, xx = np.mgrid[0:n, 0:n] / (n - 1)
    if kind == "windows":
        lum = np.full((n, n), 0.05)
        lum[20:70, 15:55] = 400.0
        lum[30:90, 80:115] = 150.0
        lum = lum * 10.0 ** (0.12 * np.sin(20 * np.pi * xx) * np.sin(16 * np.pi * yy))
    elif kind == "sun":
        r2 = (xx - 0.3) ** 2 + (yy - 0.35) ** 2
        lum = 10.0 ** (
            -1.5 + 3.5 * np.exp(-r2 / 0.04) + 0.8 * xx + 0.1 * np.sin(24 * np.pi * yy)
        )
    elif kind == "steps":
        steps = np.clip(np.floor(xx * 4), 0, 3)
        lum = 10.0 ** (steps - 1.5 + 0.1 * np.sin(18 * np.pi * (xx + yy)))
    else:
        raise ValueError(kind)
    tint = np.stack(
        [0.4 + 0.6 * xx, np.full((n, n), 0.8), 0.4 + 0.6 * yy], axis=-1
    )
    rgb = lum[..., None] * tint
    y = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return y, MultiImage.from_array(rgb, RGB)


@pytest.fixture(scope="session")
def hdr_scenes():
    """Three (luminance, rgb) HDR pairs spanning about four decades."""
    return [_hdr_scene(k) for k in ("windows", "sun", "steps")]
