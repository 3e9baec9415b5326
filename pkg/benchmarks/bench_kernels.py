"""Benchmark: compiled kernels vs the pure-Python fallback.

Times the three hot loops on representative workloads:

* fraction-free echelon of stacked intertwiner-style integer systems,
* 4x4 integer determinants as fired by the deterministic coefficient grid,
* canonical-orbit minima over a full degree-12 word sweep.

Run:  python benchmarks/bench_kernels.py
"""

import random
import time

from tracesim._kernels import _py

try:
    from tracesim._kernels import _speedups
except ImportError:
    _speedups = None

BACKENDS = [("python", _py)] + ([("compiled", _speedups)] if _speedups else [])


def timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_echelon(mod, rng):
    mats = [[[rng.randint(-9, 9) for _ in range(25)] for _ in range(75)] for _ in range(20)]

    def run():
        for m in mats:
            mod.echelon_int([row[:] for row in m])

    return run


def bench_det4(mod, rng):
    mats = [[[rng.randint(-6, 6) for _ in range(4)] for _ in range(4)] for _ in range(60000)]

    def run():
        for m in mats:
            mod.det_int(m)

    return run


def bench_rotation(mod):
    words = []
    for k in range(1, 13):
        for _ in range(4000):
            words.append(tuple(random.Random(k * 7919 + len(words)).choices(range(4), k=k)))

    def run():
        for w in words:
            mod.min_rotation(w)

    return run


def main():
    rng = random.Random(0)
    rows = []
    for label, maker in (
        ("echelon 75x25 int (x20)", lambda mod: bench_echelon(mod, random.Random(1))),
        ("det 4x4 int (x60000)", lambda mod: bench_det4(mod, random.Random(2))),
        ("min_rotation sweep (x48000)", bench_rotation),
    ):
        times = {}
        for name, mod in BACKENDS:
            times[name] = timeit(maker(mod))
        rows.append((label, times))
    width = max(len(r[0]) for r in rows)
    print("%-*s  %10s  %10s  %8s" % (width, "workload", "python", "compiled", "speedup"))
    for label, times in rows:
        py = times["python"]
        if "compiled" in times:
            cy = times["compiled"]
            print("%-*s  %9.3fs  %9.3fs  %7.1fx" % (width, label, py, cy, py / cy))
        else:
            print("%-*s  %9.3fs  %10s  %8s" % (width, label, py, "n/a", "-"))
    if _speedups is None:
        print("\ncompiled kernel not built; showing fallback only")


if __name__ == "__main__":
    main()
