"""Command-line front end.

Exit codes: 0 success, 1 usage or parameter error, 2 I/O error, 3 numerical
error. Parameter objects are built and validated before any file is touched.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .applications import (
    DetailBoost,
    TonemapParams,
    clipart_clean,
    detail_enhance,
    texture_smooth,
    tonemap_multi,
    tonemap_single,
)
from .errors import NumericalError
from .formats import read_image, write_image, write_trace
from .hqs import HqsParams, hqs_smooth_plane
from .image import GRAY, RGB, ColorMode, MultiImage, luminance
from .penalty import Charbonnier, Welsch
from .smoother import SmoothParams, smooth_color

_WELSCH_GAMMA = 10.0 / 255.0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would sys.exit(2); route to the documented exit code 1 instead.
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _number(tok: str) -> float:
    """Float, or a fraction like 1/8."""
    tok = tok.strip()
    if "/" in tok:
        num, den = tok.split("/", 1)
        return float(num) / float(den)
    return float(tok)


def _number_list(text: str, what: str) -> list:
    try:
        return [_number(t) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse {what} {text!r}")


def _size_pair(tok: str):
    parts = tok.lower().split("x")
    if len(parts) == 2 and parts[0].isdigit() and parts[1].isdigit():
        w, h = int(parts[0]), int(parts[1])
        if w >= 1 and h >= 1:
            return w, h
    raise argparse.ArgumentTypeError(f"bad size {tok!r}, expected WxH")


def _size_list(text: str):
    return [_size_pair(t) for t in text.split(",")]


def _add_io_flags(p, output=True):
    p.add_argument("--input", required=True, help="input image (.png/.ppm/.pfm)")
    if output:
        p.add_argument("--output", required=True, help="output image path")
    p.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")


def _add_penalty_flags(p, default_penalty="charbonnier", default_p=0.8):
    p.add_argument(
        "--penalty", choices=("charbonnier", "welsch"), default=default_penalty
    )
    p.add_argument("--p", type=float, default=default_p, help="charbonnier exponent")
    p.add_argument("--eps", type=float, default=1e-4, help="charbonnier epsilon")
    p.add_argument(
        "--gamma", type=float, default=_WELSCH_GAMMA, help="welsch scale"
    )


def _add_smooth_flags(p):
    _add_penalty_flags(p)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--iters", type=int, default=4)
    p.add_argument("--c", type=float, default=None, help="bound curvature override")
    p.add_argument(
        "--color-mode",
        choices=("rgb", "luminance"),
        default="rgb",
        help="smooth each RGB channel, or only luminance",
    )
    p.add_argument("--trace", default=None, help="write per-iteration energy CSV here")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="ilsmooth", description=__doc__)
    sub = top.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("smooth", help="edge-preserving smoothing")
    _add_io_flags(p)
    _add_smooth_flags(p)
    p.set_defaults(handler=_cmd_smooth)

    p = sub.add_parser("enhance", help="detail enhancement")
    _add_io_flags(p)
    _add_smooth_flags(p)
    p.add_argument("--boost", type=float, default=3.0, help="detail multiplier")
    p.set_defaults(handler=_cmd_enhance)

    p = sub.add_parser("tonemap", help="HDR tone mapping (log-luminance domain)")
    _add_io_flags(p)
    _add_penalty_flags(p, default_p=1.0)
    p.add_argument(
        "--lambda",
        dest="lam",
        default="10",
        help="one value, or a fine-to-coarse comma triple like 1/8,1,8",
    )
    p.add_argument("--iters", type=int, default=4)
    p.add_argument("--range", type=float, default=2.0, help="output log10 range")
    p.add_argument("--saturation", type=float, default=0.6)
    p.add_argument("--offset", type=float, default=1e-6, help="log-domain offset")
    p.add_argument("--weights", default="1,1,1", help="detail weights, fine first")
    p.set_defaults(handler=_cmd_tonemap)

    p = sub.add_parser("clipart", help="compression-artifact removal for flat art")
    _add_io_flags(p)
    p.add_argument("--gamma", type=float, default=_WELSCH_GAMMA)
    p.add_argument("--lambda", dest="lam", type=float, default=20.0)
    p.set_defaults(handler=_cmd_clipart)

    p = sub.add_parser("texture", help="texture smoothing")
    _add_io_flags(p)
    p.add_argument("--gamma", type=float, default=_WELSCH_GAMMA)
    p.add_argument("--lambda", dest="lam", type=float, default=30.0)
    p.add_argument("--sigma-pre", type=float, default=1.0, help="pre-blur sigma")
    p.set_defaults(handler=_cmd_texture)

    p = sub.add_parser("hqs", help="penalty-splitting baseline (L1 gradients)")
    _add_io_flags(p)
    p.add_argument("--lambda", dest="lam", type=float, default=0.25)
    p.add_argument("--beta0", type=float, default=None, help="default 2*lambda")
    p.add_argument("--kappa", type=float, default=2.0)
    p.add_argument("--iters", type=int, default=4)
    p.set_defaults(handler=_cmd_hqs)

    p = sub.add_parser("bench", help="time the smoother on synthetic images")
    p.add_argument(
        "--sizes", type=_size_list, default=[(256, 256)], help="WxH[,WxH...]"
    )
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--channels", type=int, choices=(1, 3), default=3)
    p.add_argument("--threads", type=int, default=1)
    _add_penalty_flags(p)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--iters", type=int, default=4)
    p.set_defaults(handler=_cmd_bench)

    return top


def _penalty_from(ns):
    if ns.penalty == "charbonnier":
        return Charbonnier(ns.p, ns.eps)
    return Welsch(ns.gamma)


def _smooth_params(ns) -> SmoothParams:
    mode = (
        ColorMode.LUMINANCE_ONLY
        if getattr(ns, "color_mode", "rgb") == "luminance"
        else ColorMode.PER_CHANNEL_RGB
    )
    return SmoothParams(
        _penalty_from(ns), ns.lam, iters=ns.iters, c=ns.c, color_mode=mode
    )


def _cmd_smooth(ns):
    params = _smooth_params(ns)
    img = read_image(ns.input)
    if ns.trace:
        out, tr = smooth_color(img, params, trace=True, workers=ns.threads)
        write_trace(tr, ns.trace)
    else:
        out = smooth_color(img, params, workers=ns.threads)
    write_image(ns.output, out)


def _cmd_enhance(ns):
    params = _smooth_params(ns)
    boost = DetailBoost(ns.boost)
    img = read_image(ns.input)
    write_image(ns.output, detail_enhance(img, params, boost))


def _cmd_tonemap(ns):
    lams = _number_list(str(ns.lam), "--lambda")
    if len(lams) not in (1, 3):
        raise ValueError(f"--lambda takes one value or a comma triple, got {lams}")
    weights = _number_list(ns.weights, "--weights")
    if len(weights) != 3:
        raise ValueError(f"--weights needs three values, got {weights}")
    base = SmoothParams(_penalty_from(ns), lams[0], iters=ns.iters)
    tp = TonemapParams(
        base,
        target_range=ns.range,
        saturation=ns.saturation,
        log_offset=ns.offset,
        lambdas=tuple(lams) if len(lams) == 3 else None,
        weights=tuple(weights),
    )
    img = read_image(ns.input)
    was_gray = img.space == GRAY
    rgb = MultiImage(img.channels * 3, RGB) if was_gray else img
    # Zero pixels would break the strictly-positive luminance contract; a
    # tiny floor is safe because chroma ratios stay bounded by 1/0.114.
    lum = np.maximum(luminance(rgb), 1e-12)
    if tp.lambdas is not None:
        out = tonemap_multi(lum, rgb, tp)
    else:
        out = tonemap_single(lum, rgb, tp)
    if was_gray:
        out = MultiImage((out.channels[0],), GRAY)
    write_image(ns.output, out)


def _cmd_clipart(ns):
    # Validate flags before touching the filesystem.
    Welsch(ns.gamma)
    if not (ns.lam > 0.0 and np.isfinite(ns.lam)):
        raise ValueError(f"lambda must be finite and positive, got {ns.lam}")
    img = read_image(ns.input)
    write_image(ns.output, clipart_clean(img, ns.gamma, ns.lam))


def _cmd_texture(ns):
    Welsch(ns.gamma)
    if not (ns.lam > 0.0 and np.isfinite(ns.lam)):
        raise ValueError(f"lambda must be finite and positive, got {ns.lam}")
    if not (ns.sigma_pre >= 0.0 and np.isfinite(ns.sigma_pre)):
        raise ValueError(f"sigma-pre must be finite and >= 0, got {ns.sigma_pre}")
    img = read_image(ns.input)
    write_image(ns.output, texture_smooth(img, ns.gamma, ns.lam, ns.sigma_pre))


def _cmd_hqs(ns):
    params = HqsParams(ns.lam, beta0=ns.beta0, kappa=ns.kappa, iters=ns.iters)
    img = read_image(ns.input)
    planes = tuple(
        hqs_smooth_plane(ch, params, workers=ns.threads) for ch in img.channels
    )
    write_image(ns.output, MultiImage(planes, img.space))


def _cmd_bench(ns):
    if ns.repeat < 1:
        raise ValueError(f"repeat must be >= 1, got {ns.repeat}")
    params = _smooth_params_for_bench(ns)
    rng = np.random.default_rng(20240607)
    print("width,height,channels,threads,mean_ms_per_iter,mean_ms_total")
    for width, height in ns.sizes:
        chans = tuple(rng.random((height, width)) for _ in range(ns.channels))
        img = MultiImage(chans, GRAY if ns.channels == 1 else RGB)
        smooth_color(img, params, workers=ns.threads)  # warm-up, discarded
        total = 0.0
        for _ in range(ns.repeat):
            t0 = time.perf_counter()
            smooth_color(img, params, workers=ns.threads)
            total += time.perf_counter() - t0
        mean_ms = total / ns.repeat * 1000.0
        print(
            f"{width},{height},{ns.channels},{ns.threads},"
            f"{mean_ms / params.iters:.6g},{mean_ms:.6g}"
        )


def _smooth_params_for_bench(ns) -> SmoothParams:
    return SmoothParams(_penalty_from(ns), ns.lam, iters=ns.iters)


def run(argv) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return 1
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        ns.handler(ns)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except NumericalError as e:
        print(f"numerical error: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
