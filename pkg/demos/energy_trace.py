"""Watching the optimizer converge.

Runs thirty smoothing iterations on a synthetic photo and records the
objective value after each one. The table shows the classic pattern of
this solver: the energy never increases, and the first handful of
iterations deliver the bulk of the total decrease, which is why the
presets run only four. Writes the full trace as CSV, and a PNG plot if
matplotlib happens to be installed.
"""

from pathlib import Path

import numpy as np

from ilsmooth import Charbonnier, SmoothParams, smooth_plane, write_trace

OUT = Path(__file__).parent / "out"


def make_photo(h=192, w=192, seed=3):
    # plateaus and a few blobs, plus mild noise: a stand-in for a photograph
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:h, 0:w] / h
    img = 0.35 + 0.25 * (xx + yy < 0.9)
    for _ in range(6):
        cy, cx, r = rng.random(3) * (0.8, 0.8, 0.15) + (0.1, 0.1, 0.04)
        img += 0.2 * np.exp(-((yy - cy) ** 2 + (xx - cx) ** 2) / r**2)
    img += 0.02 * rng.standard_normal((h, w))
    return np.clip(img, 0.0, 1.0)


def main():
    OUT.mkdir(exist_ok=True)
    f = make_photo()
    params = SmoothParams(Charbonnier(p=0.8), lam=1.0, iters=30)
    _, trace = smooth_plane(f, params, trace=True)

    print("iter   energy      share of total decrease")
    for n in list(range(9)) + [15, 30]:
        print(f"{n:4d}   {trace.energies[n]:9.2f}   {trace.rel_decrease(n):6.1%}")

    csv_path = OUT / "energy_trace.csv"
    write_trace(trace, csv_path)
    print(f"full trace written to {csv_path}")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed, skipping the plot")
        return
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.plot(trace.energies, marker=".")
    ax1.set_xlabel("iteration")
    ax1.set_ylabel("energy")
    ax2.plot([trace.rel_decrease(n) for n in range(len(trace))], marker=".")
    ax2.set_xlabel("iteration")
    ax2.set_ylabel("share of total decrease")
    ax2.axvline(4, color="gray", linestyle=":")
    fig.tight_layout()
    fig.savefig(OUT / "energy_trace.png", dpi=120)
    print(f"plot written to {OUT / 'energy_trace.png'}")


if __name__ == "__main__":
    main()
