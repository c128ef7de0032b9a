"""Image file codecs and the energy-trace CSV writer.

Three formats, chosen by extension: PNG (8-bit gray or RGB, via Pillow),
binary PPM (P6, maxval 255 only), and PFM (float32 HDR, 'PF' color / 'Pf'
gray, negative scale = little-endian, rows stored bottom-to-top). 8-bit
reads scale to [0,1] by /255; writes quantize with floor(v*255 + 0.5)
after clipping. PFM round-trips raw float values without clipping.

Malformed files raise ImageFormatError with the offending byte position
where one exists. Plain filesystem failures surface as the usual OSError.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .errors import ImageFormatError
from .image import GRAY, RGB, MultiImage, clip01
from .smoother import EnergyTrace


def _quantize(plane: np.ndarray) -> np.ndarray:
    # Round-half-up to keep the quantization rule explicit and portable.
    return np.floor(clip01(plane) * 255.0 + 0.5).astype(np.uint8)


def _read_png(path: Path) -> MultiImage:
    try:
        with Image.open(path) as im:
            if im.format != "PNG":
                raise ImageFormatError(
                    f"{path}: not a PNG file (decoded as {im.format})"
                )
            mode = im.mode
            if mode not in ("L", "RGB"):
                raise ImageFormatError(
                    f"{path}: unsupported PNG mode {mode!r}; only 8-bit L and RGB"
                )
            arr = np.asarray(im, dtype=np.float64) / 255.0
    except (ImageFormatError, FileNotFoundError, PermissionError):
        raise
    except (OSError, SyntaxError, ValueError) as e:
        raise ImageFormatError(f"{path}: cannot decode PNG: {e}") from e
    if arr.ndim == 2:
        return MultiImage((arr,), GRAY)
    return MultiImage.from_array(arr, RGB)


def _write_png(path: Path, img: MultiImage) -> None:
    if img.space == GRAY:
        pil = Image.fromarray(_quantize(img.channels[0]), mode="L")
    else:
        rgb = np.stack([_quantize(ch) for ch in img.channels], axis=-1)
        pil = Image.fromarray(rgb, mode="RGB")
    pil.save(path, format="PNG")


class _TokenScanner:
    """Whitespace-separated header tokens with '#' comments and a byte cursor."""

    def __init__(self, data: bytes, path: Path, comments: bool):
        self.data = data
        self.pos = 0
        self.path = path
        self.comments = comments

    def fail(self, why: str):
        raise ImageFormatError(f"{self.path}: {why} at byte {self.pos}")

    def token(self, what: str) -> bytes:
        data, n = self.data, len(self.data)
        while self.pos < n:
            b = data[self.pos]
            if self.comments and b == ord("#"):
                while self.pos < n and data[self.pos] not in (10, 13):
                    self.pos += 1
            elif b in (9, 10, 13, 32):
                self.pos += 1
            else:
                break
        if self.pos >= n:
            self.fail(f"missing {what}")
        start = self.pos
        while self.pos < n and data[self.pos] not in (9, 10, 13, 32):
            self.pos += 1
        return data[start : self.pos]

    def int_token(self, what: str) -> int:
        tok = self.token(what)
        try:
            return int(tok)
        except ValueError:
            self.fail(f"invalid {what} {tok!r}")

    def skip_one_separator(self) -> None:
        # Exactly one whitespace byte separates the header from the payload.
        if self.pos >= len(self.data) or self.data[self.pos] not in (9, 10, 13, 32):
            self.fail("missing separator before pixel data")
        self.pos += 1


def _read_ppm(path: Path) -> MultiImage:
    data = path.read_bytes()
    scan = _TokenScanner(data, path, comments=True)
    magic = scan.token("magic")
    if magic != b"P6":
        raise ImageFormatError(
            f"{path}: unsupported PPM magic {magic!r}; only binary P6"
        )
    width = scan.int_token("width")
    height = scan.int_token("height")
    maxval = scan.int_token("maxval")
    if width < 1 or height < 1:
        raise ImageFormatError(f"{path}: invalid dimensions {width}x{height}")
    if maxval != 255:
        raise ImageFormatError(
            f"{path}: maxval {maxval} not supported, only 255"
        )
    scan.skip_one_separator()
    need = width * height * 3
    payload = data[scan.pos : scan.pos + need]
    if len(payload) < need:
        raise ImageFormatError(
            f"{path}: truncated pixel data, need {need} bytes from byte "
            f"{scan.pos} but file ends at {len(data)}"
        )
    arr = (
        np.frombuffer(payload, dtype=np.uint8)
        .reshape(height, width, 3)
        .astype(np.float64)
        / 255.0
    )
    return MultiImage.from_array(arr, RGB)


def _write_ppm(path: Path, img: MultiImage) -> None:
    # P6 is an RGB container; gray goes out with replicated channels.
    chans = img.channels if img.space != GRAY else img.channels * 3
    rgb = np.stack([_quantize(ch) for ch in chans], axis=-1)
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    path.write_bytes(header + rgb.tobytes())


def _read_pfm(path: Path) -> MultiImage:
    data = path.read_bytes()
    scan = _TokenScanner(data, path, comments=False)
    magic = scan.token("magic")
    if magic not in (b"PF", b"Pf"):
        raise ImageFormatError(f"{path}: unsupported PFM magic {magic!r}")
    color = magic == b"PF"
    width = scan.int_token("width")
    height = scan.int_token("height")
    if width < 1 or height < 1:
        raise ImageFormatError(f"{path}: invalid dimensions {width}x{height}")
    scale_tok = scan.token("scale")
    try:
        scale = float(scale_tok)
    except ValueError:
        raise ImageFormatError(f"{path}: invalid scale {scale_tok!r}")
    if scale == 0.0 or not np.isfinite(scale):
        raise ImageFormatError(f"{path}: invalid scale {scale}")
    scan.skip_one_separator()
    dtype = "<f4" if scale < 0.0 else ">f4"
    count = width * height * (3 if color else 1)
    need = count * 4
    payload = data[scan.pos : scan.pos + need]
    if len(payload) < need:
        raise ImageFormatError(
            f"{path}: truncated pixel data, need {need} bytes from byte "
            f"{scan.pos} but file ends at {len(data)}"
        )
    arr = np.frombuffer(payload, dtype=dtype).astype(np.float64)
    if not np.all(np.isfinite(arr)):
        raise ImageFormatError(f"{path}: non-finite samples in PFM payload")
    if color:
        arr = arr.reshape(height, width, 3)
    else:
        arr = arr.reshape(height, width)
    arr = np.flipud(arr)  # PFM rows run bottom-to-top
    return MultiImage.from_array(arr)


def _write_pfm(path: Path, img: MultiImage) -> None:
    color = img.space != GRAY
    magic = b"PF" if color else b"Pf"
    header = magic + f"\n{img.width} {img.height}\n-1.0\n".encode("ascii")
    if color:
        arr = np.stack(img.channels, axis=-1)
    else:
        arr = np.array(img.channels[0])
    payload = np.flipud(arr).astype("<f4").tobytes()
    path.write_bytes(header + payload)


_READERS = {".png": _read_png, ".ppm": _read_ppm, ".pfm": _read_pfm}
_WRITERS = {".png": _write_png, ".ppm": _write_ppm, ".pfm": _write_pfm}


def read_image(path) -> MultiImage:
    """Load a PNG/PPM/PFM file into a MultiImage, chosen by extension."""
    p = Path(path)
    reader = _READERS.get(p.suffix.lower())
    if reader is None:
        raise ImageFormatError(
            f"{p}: unsupported image extension {p.suffix!r} "
            "(use .png, .ppm, or .pfm)"
        )
    return reader(p)


def write_image(path, img: MultiImage) -> None:
    """Write a MultiImage; 8-bit formats clip and quantize, PFM does not."""
    p = Path(path)
    writer = _WRITERS.get(p.suffix.lower())
    if writer is None:
        raise ImageFormatError(
            f"{p}: unsupported image extension {p.suffix!r} "
            "(use .png, .ppm, or .pfm)"
        )
    writer(p, img)


def write_trace(trace: EnergyTrace, path) -> None:
    """Dump per-iteration energies as CSV: iter,energy,rel_decrease.

    rel_decrease is measured against the last recorded energy, so the
    final row is exactly 1.0. Values carry 12 significant digits.
    """
    if len(trace) == 0:
        raise ValueError("cannot write an empty trace")
    lines = ["iter,energy,rel_decrease"]
    for i, e in enumerate(trace.energies):
        lines.append(f"{i},{e:.12g},{trace.rel_decrease(i):.12g}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")
