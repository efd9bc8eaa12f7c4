"""Timing comparison between the compiled kernels and the numpy fallback.

Run as a script::

    python benchmarks/bench_kernels.py [--sizes 64,256,1024] [--repeats 7]

Each kernel is timed on a broad random photon-number distribution over a
dense phase grid; the table reports the best-of-N wall time per backend and
the speedup of the compiled extension.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from phasecraft import _kernels_py

try:
    from phasecraft import _fastkernels
except ImportError:
    _fastkernels = None


def make_distribution(n_max: int, seed: int = 7) -> tuple[np.ndarray, float]:
    rng = np.random.default_rng(seed)
    p = rng.exponential(size=n_max + 1)
    p /= p.sum()
    return p, float(p[0])


def bench_backend(impl, p, p0, phis, repeats):
    results = {}
    for name, call in [
        ("parity_curve", lambda: impl.parity_curve(p, p0, 0.9, phis)),
        ("fi_curve", lambda: impl.fi_curve(p, p0, 0.9, phis)),
        ("loss_background_weights", lambda: impl.loss_background_weights(p, p0, 0.9)),
    ]:
        results[name] = min(timeit.repeat(call, number=10, repeat=repeats)) / 10.0
    return results


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="64,256,1024",
                    help="comma-separated photon-number cutoffs")
    ap.add_argument("--repeats", type=int, default=7)
    ap.add_argument("--phi-points", type=int, default=2000)
    args = ap.parse_args()

    phis = np.linspace(0.0, 2.0 * np.pi, args.phi_points)
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"{'kernel':<24} {'n_max':>6} {'python [ms]':>12} "
          f"{'cython [ms]':>12} {'speedup':>8}")
    for n_max in sizes:
        p, p0 = make_distribution(n_max)
        t_py = bench_backend(_kernels_py, p, p0, phis, args.repeats)
        t_cy = (bench_backend(_fastkernels, p, p0, phis, args.repeats)
                if _fastkernels is not None else None)
        for name in t_py:
            py_ms = t_py[name] * 1e3
            if t_cy is None:
                print(f"{name:<24} {n_max:>6} {py_ms:>12.3f} {'n/a':>12} {'n/a':>8}")
            else:
                cy_ms = t_cy[name] * 1e3
                print(f"{name:<24} {n_max:>6} {py_ms:>12.3f} "
                      f"{cy_ms:>12.3f} {py_ms / cy_ms:>7.1f}x")
    if _fastkernels is None:
        print("\ncompiled extension not available; showing fallback only")


if __name__ == "__main__":
    main()
