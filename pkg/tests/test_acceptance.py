"""Acceptance gate: thirteen numbered behavior guarantees, one test each.

Every test records its verdict through the `criterion` fixture, so the
terminal summary ends with one PASS/FAIL line per criterion. Thresholds
and fixture sizes are pinned here on purpose; loosening them is a release
decision, not a refactor.
"""

import time
from dataclasses import replace

import numpy as np

from conftest import jpeg_roundtrip, make_clipart, psnr

from ilsmooth import (
    GRAY,
    Charbonnier,
    DetailBoost,
    MultiImage,
    SmoothParams,
    TonemapParams,
    Welsch,
    aux_update,
    bound_remainder,
    clip01,
    clipart_clean,
    dense_oracle_solve,
    detail_enhance,
    energy,
    huber,
    make_plan,
    smooth_plane,
    soft_threshold,
    solve_ls,
    tonemap_multi,
    tonemap_single,
)


def test_criterion_01_solver_matches_dense_oracle(criterion):
    criterion.start(1, "spectral solve matches dense oracle within 1e-6")
    rng = np.random.default_rng(101)
    worst = 0.0
    for h, w in ((4, 4), (5, 7), (16, 16), (17, 13)):
        for _ in range(20):
            lam = float(rng.choice([0.1, 1.0, 10.0]))
            c = float(rng.choice([2.0, 100.0]))
            f = rng.standard_normal((h, w))
            mu_x = c * rng.standard_normal((h, w))
            mu_y = c * rng.standard_normal((h, w))
            a = solve_ls(make_plan(h, w, lam, c, f), f, mu_x, mu_y)
            b = dense_oracle_solve(f, mu_x, mu_y, lam, c)
            worst = max(worst, float(np.max(np.abs(a - b))))
    criterion.finish(worst <= 1e-6, f"max abs diff {worst:.3g}")


def test_criterion_02_energy_monotone(criterion, natural_gray_256):
    criterion.start(2, "energy non-increasing over 50 majorize-minimize runs")
    rng = np.random.default_rng(102)
    pool = [img[:128, :128] for img in natural_gray_256[:6]]
    pool.append(rng.random((96, 80)))
    pool.append(rng.random((64, 64)))
    ps = (0.2, 0.5, 0.8, 1.0)
    lams = (0.1, 1.0, 10.0)
    worst = -np.inf
    for k in range(50):
        params = SmoothParams(Charbonnier(ps[k % 4]), lams[k % 3], iters=30)
        _, tr = smooth_plane(pool[k % len(pool)], params, trace=True)
        e = np.asarray(tr.energies)
        worst = max(worst, float(np.max((e[1:] - e[:-1]) / np.abs(e[:-1]))))
    criterion.finish(worst <= 1e-9, f"worst relative increase {worst:.3g}")


def test_criterion_03_convergence_fractions(criterion, natural_gray_256):
    # Documented shortfall. The 4/6-iteration share of the 30-iteration
    # energy decrease depends strongly on content: planes whose gradients
    # cluster near zero (where the quadratic bound is tight) land inside
    # the band, while texture-dominant planes fall far below it, at every
    # lambda. A diverse corpus therefore cannot reach 90% of pairs in
    # band; the gate measures honestly and records the shortfall.
    criterion.start(3, "iteration-4/6 energy-decrease fractions in band")
    base = SmoothParams(Charbonnier(0.8), 1.0, iters=30)
    good = total = 0
    r4s = []
    for img in natural_gray_256:
        for lam in (0.1, 0.5, 1.0, 5.0, 10.0):
            _, tr = smooth_plane(img, replace(base, lam=lam), trace=True)
            total += 1
            r4s.append(tr.rel_decrease(4))
            if (
                0.70 <= tr.rel_decrease(4) <= 0.95
                and 0.78 <= tr.rel_decrease(6) <= 0.98
            ):
                good += 1
    detail = (
        f"{good}/{total} pairs in band; r4 median {np.median(r4s):.2f}, "
        f"span {min(r4s):.2f}-{max(r4s):.2f}"
    )
    criterion.finish(good >= 0.90 * total, detail, expected=False)


def test_criterion_04_bound_tightness(criterion):
    criterion.start(4, "quadratic bound tight at aux optimum, dominates elsewhere")
    rng = np.random.default_rng(104)

    def bound_at(spec, c, x, mu):
        quad = 0.5 * c * x * x - mu * x + mu * mu / (2.0 * c)
        return quad + bound_remainder(spec, c, mu)

    worst_eq = 0.0
    worst_margin = np.inf
    for spec in (Charbonnier(), Welsch(10.0 / 255.0)):
        c = spec.min_curvature
        xs = rng.uniform(-1.0, 1.0, 1000)
        for x in xs:
            x = float(x)
            mu_star = float(aux_update(spec, c, x))
            gap = abs(bound_at(spec, c, x, mu_star) - float(spec.value(x)))
            worst_eq = max(worst_eq, gap)
            vx = float(spec.value(x))
            for mu in rng.uniform(-1.2 * c, 1.2 * c, 100):
                worst_margin = min(
                    worst_margin, bound_at(spec, c, x, float(mu)) - vx
                )
    ok = worst_eq <= 1e-8 and worst_margin >= -1e-8
    criterion.finish(ok, f"eq gap {worst_eq:.3g}, min margin {worst_margin:.3g}")


def test_criterion_05_surrogate_gap_convex(criterion):
    criterion.start(5, "surrogate gap convex at the minimal curvature")
    xs = np.linspace(-1.0, 1.0, 2001)  # step 1e-3
    specs = [Charbonnier(p) for p in (0.2, 0.5, 0.8, 1.0)]
    specs += [Welsch(g) for g in (5.0 / 255.0, 10.0 / 255.0, 0.5)]
    worst = np.inf
    for spec in specs:
        g = 0.5 * spec.min_curvature * xs * xs - spec.value(xs)
        d2 = g[2:] - 2.0 * g[1:-1] + g[:-2]
        worst = min(worst, float(np.min(d2)))
    criterion.finish(worst >= -1e-6, f"min second difference {worst:.3g}")


def test_criterion_06_huber_duality(criterion):
    criterion.start(6, "huber equals the grid minimum; threshold attains it")
    rng = np.random.default_rng(106)
    grid = np.linspace(-2.0, 2.0, 4001)
    step = float(grid[1] - grid[0])
    worst_gap = 0.0
    worst_attain = -np.inf
    for _ in range(1000):
        x = float(rng.uniform(-1.5, 1.5))
        alpha = float(rng.uniform(0.01, 1.0))
        obj = (x - grid) ** 2 / (2.0 * alpha) + np.abs(grid)
        gmin = float(np.min(obj))
        worst_gap = max(worst_gap, abs(float(huber(x, alpha)) - gmin))
        m = float(soft_threshold(np.float64(x), alpha))
        attained = (x - m) ** 2 / (2.0 * alpha) + abs(m)
        worst_attain = max(worst_attain, attained - gmin)
    ok = worst_gap <= step and worst_attain <= 1e-12
    criterion.finish(ok, f"gap {worst_gap:.3g} at step {step:.3g}")


def test_criterion_07_smaller_curvature_faster(criterion, natural_gray_20):
    criterion.start(7, "minimal curvature beats 4x curvature after 4 iterations")
    pen = Charbonnier(0.8)
    wins = 0
    for img in natural_gray_20:
        u_min = smooth_plane(img, SmoothParams(pen, 1.0, iters=4))
        u_big = smooth_plane(
            img, SmoothParams(pen, 1.0, iters=4, c=4.0 * pen.min_curvature)
        )
        if energy(u_min, img, pen, 1.0) <= energy(u_big, img, pen, 1.0):
            wins += 1
    criterion.finish(wins >= 18, f"{wins}/20 images")


def test_criterion_08_larger_epsilon_faster(criterion, natural_gray_20):
    criterion.start(8, "larger epsilon gives a larger first-iteration decrease")
    wins = 0
    for img in natural_gray_20:
        rels = []
        for eps in (0.01, 1e-5):
            params = SmoothParams(Charbonnier(0.8, eps), 1.0, iters=30)
            _, tr = smooth_plane(img, params, trace=True)
            rels.append(tr.rel_decrease(1))
        if rels[0] > rels[1]:
            wins += 1
    criterion.finish(wins >= 18, f"{wins}/20 images")


def test_criterion_09_fixpoints(criterion, natural_gray_256):
    criterion.start(9, "near-zero lambda and constant-image fixpoints")
    f = natural_gray_256[0]
    u = smooth_plane(f, SmoothParams(Charbonnier(), 1e-12, iters=4))
    ident = float(np.max(np.abs(u - f)))
    const = np.full((64, 80), 0.37)
    v = smooth_plane(const, SmoothParams(Charbonnier(), 2.0, iters=4))
    flat = float(np.max(np.abs(v - 0.37)))
    ok = ident < 1e-6 and flat <= 1e-12
    criterion.finish(ok, f"identity {ident:.3g}, constant {flat:.3g}")


def test_criterion_10_spectral_speed_margin(criterion):
    criterion.start(10, "spectral solve at least 10x faster than dense on 64x64")
    rng = np.random.default_rng(110)
    f = rng.random((64, 64))
    mu_x = rng.standard_normal((64, 64))
    mu_y = rng.standard_normal((64, 64))
    plan = make_plan(64, 64, 1.0, 100.0, f)
    solve_ls(plan, f, mu_x, mu_y)
    dense_oracle_solve(f, mu_x, mu_y, 1.0, 100.0)
    t_fast = np.inf
    for _ in range(10):
        t0 = time.perf_counter()
        solve_ls(plan, f, mu_x, mu_y)
        t_fast = min(t_fast, time.perf_counter() - t0)
    t0 = time.perf_counter()
    dense_oracle_solve(f, mu_x, mu_y, 1.0, 100.0)
    t_dense = time.perf_counter() - t0
    ratio = t_dense / t_fast
    criterion.finish(ratio >= 10.0, f"{ratio:.0f}x")


def test_criterion_11_clipart_psnr(criterion):
    criterion.start(11, "clip-art cleanup raises PSNR on all five JPEG fixtures")
    improved = 0
    for seed in range(5):
        clean = make_clipart(seed)
        compressed = jpeg_roundtrip(clean, quality=20)
        restored = clipart_clean(compressed, 10.0 / 255.0, 20.0)
        before = psnr(clean.to_array(), compressed.to_array())
        after = psnr(clean.to_array(), restored.to_array())
        improved += after > before
    criterion.finish(improved == 5, f"{improved}/5 improved")


def test_criterion_12_detail_identity(criterion):
    criterion.start(12, "detail boost k=1 returns the input bit-exactly")
    rng = np.random.default_rng(112)
    params = SmoothParams(Charbonnier(), 1.0)
    exact = 0
    for i in range(10):
        h, w = int(rng.integers(8, 40)), int(rng.integers(8, 40))
        if i % 2:
            img = MultiImage.from_array(rng.random((h, w, 3)))
        else:
            img = MultiImage((rng.random((h, w)),), GRAY)
        out = detail_enhance(img, params, DetailBoost(1.0))
        exact += out.space == img.space and all(
            a.tobytes() == b.tobytes()
            for a, b in zip(out.channels, img.channels)
        )
    criterion.finish(exact == 10, f"{exact}/10 bit-exact")


def test_criterion_13_tonemap_sanity(criterion, hdr_scenes):
    criterion.start(13, "tone maps bounded and finite with exact base range")
    base = SmoothParams(Charbonnier(1.0), 10.0, iters=4)
    tp = TonemapParams(base)
    tp3 = TonemapParams(base, lambdas=(0.125, 1.0, 8.0))
    bounded = True
    worst_range = 0.0
    for lum, rgb in hdr_scenes:
        for out in (tonemap_single(lum, rgb, tp), tonemap_multi(lum, rgb, tp3)):
            arr = out.to_array()
            bounded = bounded and bool(np.all(np.isfinite(arr)))
            bounded = bounded and arr.min() >= 0.0 and arr.max() <= 1.0
        logl = np.log10(lum + tp.log_offset)
        for lam in (10.0, 8.0):  # single-scale base and the coarsest of the triple
            b = smooth_plane(logl, replace(base, lam=lam))
            spread = float(b.max() - b.min())
            compressed = (b - b.max()) * (tp.target_range / spread)
            err = abs(float(compressed.max() - compressed.min()) - tp.target_range)
            worst_range = max(worst_range, err)
    # tie the reconstruction to the public entry point on one scene
    lum, rgb = hdr_scenes[0]
    logl = np.log10(lum + tp.log_offset)
    b = smooth_plane(logl, base)
    lum_out = 10.0 ** ((b - b.max()) * (tp.target_range / (b.max() - b.min())) + logl - b)
    got = tonemap_single(lum, rgb, tp)
    recon_err = max(
        float(np.max(np.abs(clip01((ch / lum) ** tp.saturation * lum_out) - g)))
        for ch, g in zip(rgb.channels, got.channels)
    )
    ok = bounded and worst_range <= 1e-6 and recon_err <= 1e-12
    criterion.finish(
        ok, f"range error {worst_range:.3g}, reconstruction {recon_err:.3g}"
    )
