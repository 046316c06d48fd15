"""Time the numba and numpy flavours of the hot kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--h 0.0078125] [--sweeps 200] [--points 20000]
"""
import argparse
import time

import numpy as np

from hyplab import kernels
from hyplab.geodesics import disc_grid


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_sor(h, sweeps, repeat):
    g = disc_grid(0.3, 2.5, h)
    args = (*g.stencil, g.inside)
    omega = 1.9
    out = {}
    finals = {}
    for backend in ("numba", "numpy"):
        if backend == "numba" and not kernels.HAVE_NUMBA:
            continue
        kernels.sor_sweeps(g.u.copy(), *args, omega, 1, backend=backend)  # compile / warm up

        def run():
            u = g.u.copy()
            kernels.sor_sweeps(u, *args, omega, sweeps, backend=backend)
            finals[backend] = u
        out[backend] = _best(run, repeat)
    diff = float(np.max(np.abs(finals["numba"] - finals["numpy"]))) if len(finals) == 2 else float("nan")
    return out, diff, g.u.shape


def bench_segments(points, repeat, seed=0):
    rng = np.random.default_rng(seed)
    px, py = rng.uniform(-1, 1, points), rng.uniform(-1, 1, points)
    seg = rng.uniform(-1, 1, (400, 4))
    out, res = {}, {}
    for backend in ("numba", "numpy"):
        if backend == "numba" and not kernels.HAVE_NUMBA:
            continue
        kernels.segment_distance(px[:4], py[:4], seg, backend=backend)
        out[backend] = _best(lambda: res.__setitem__(backend, kernels.segment_distance(px, py, seg, backend=backend)),
                             repeat)
    diff = float(np.max(np.abs(res["numba"] - res["numpy"]))) if len(res) == 2 else float("nan")
    return out, diff


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--h", type=float, default=1 / 128)
    ap.add_argument("--sweeps", type=int, default=200)
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    t, diff, shape = bench_sor(a.h, a.sweeps, a.repeat)
    print(f"SOR {a.sweeps} sweeps on a {shape[0]}x{shape[1]} grid")
    for k, v in t.items():
        print(f"  {k:6s} {v * 1e3:9.1f} ms")
    if len(t) == 2:
        print(f"  speed-up {t['numpy'] / t['numba']:.1f}x, max |difference| {diff:.2e}")
    t, diff = bench_segments(a.points, a.repeat)
    print(f"segment distance, {a.points} points x 400 segments")
    for k, v in t.items():
        print(f"  {k:6s} {v * 1e3:9.1f} ms")
    if len(t) == 2:
        print(f"  speed-up {t['numpy'] / t['numba']:.1f}x, max |difference| {diff:.2e}")


if __name__ == "__main__":
    main()
