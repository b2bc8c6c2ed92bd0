"""Compare the compiled and pure-Python kernels on the same workloads.

    python benchmarks/bench_backends.py --sizes 32,64,128 --reps 3

Prints one line per (algorithm, size) with the best wall time of each
backend and the speedup; results are checked for equality on the way.
"""
import argparse
import time

import numpy as np

from distfield import _backend, chamfer34, cityblock_sequential, danielsson, edt, generate_random_image

ALGORITHMS = {
    "envelope": lambda img: edt(img, "envelope").values,
    "improved": lambda img: edt(img, "improved", "rows").values,
    "simple": lambda img: edt(img, "simple", "rows").values,
    "danielsson": lambda img: danielsson(img)[0].values,
    "cityblock": lambda img: cityblock_sequential(img).values,
    "chamfer34": lambda img: chamfer34(img).values,
}


def best_time(fn, img, reps):
    best, out = float("inf"), None
    for _ in range(reps):
        t0 = time.perf_counter()
        out = fn(img)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="32,64,128")
    ap.add_argument("--density", type=float, default=0.02)
    ap.add_argument("--algorithms", default=",".join(ALGORITHMS))
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    if "compiled" not in _backend.available():
        ap.error("compiled extension not built; run `pip install -e . --no-build-isolation`")
    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'algorithm':<11} {'size':>5} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name in args.algorithms.split(","):
        fn = ALGORITHMS[name]
        for size in sizes:
            img = generate_random_image(size, size, args.density, args.seed)
            with _backend.use("python"):
                t_py, out_py = best_time(fn, img, args.reps)
            with _backend.use("compiled"):
                t_c, out_c = best_time(fn, img, args.reps)
            if not np.array_equal(out_py, out_c):
                raise SystemExit(f"backends disagree on {name} at size {size}")
            print(f"{name:<11} {size:>5} {t_py:>10.4f} {t_c:>11.5f} {t_py / t_c:>7.0f}x")


if __name__ == "__main__":
    main()
