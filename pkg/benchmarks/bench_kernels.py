"""Time the search kernels compiled with numba against their plain bodies.

    python benchmarks/bench_kernels.py [--repeat 3]

Both paths run in one process: the compiled kernels are swapped for their
``py_func`` bodies for the second column. Compilation happens in a warm-up
call and is not timed.
"""
import argparse
import time
from contextlib import contextmanager

import numpy as np

from kurindex import _jit, kernels
from kurindex.cubes import blev, bm
from kurindex.dimension import dim_exact, n_suitable_exact
from kurindex.poset import breadth, from_le, powerset, width

NAMES = ["reflexive_transitive_closure", "max_bipartite_matching", "_is_breadth_witness",
         "breadth_step", "color_step", "cover_step", "embed_step"]


@contextmanager
def pure():
    saved = {n: getattr(kernels, n) for n in NAMES}
    try:
        for n in NAMES:
            setattr(kernels, n, _jit.py_func(saved[n]))
        yield
    finally:
        for n, f in saved.items():
            setattr(kernels, n, f)


def random_poset(n, p, seed):
    rng = np.random.default_rng(seed)
    le = np.triu(rng.random((n, n)) < p, 1) | np.eye(n, dtype=bool)
    for k in range(n):
        le |= le[:, [k]] & le[[k], :]
    return from_le(le)


def workloads():
    big = random_poset(120, 0.05, 1)
    return [
        ("width, 120-element poset", lambda: width(big)),
        ("breadth, 2^6 lattice", lambda: breadth(powerset(6))),
        ("dim B_5(1,3)", lambda: dim_exact(blev(5, 1, 3))),
        ("dim B_6(<=2)", lambda: dim_exact(bm(6, 2))),
        ("N(6,4) set cover", lambda: n_suitable_exact(6, 4)),
    ]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _jit.JIT_ENABLED:
        print("numba disabled (KURINDEX_JIT=0 or numba missing); both columns use plain numpy")
    print(f"{'workload':<28}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for name, fn in workloads():
        fn()  # compile
        t_jit = best_of(fn, args.repeat)
        with pure():
            t_py = best_of(fn, max(1, args.repeat // 3))
        print(f"{name:<28}{t_jit:>12.4f}{t_py:>12.4f}{t_py / t_jit:>10.1f}x")


if __name__ == "__main__":
    main()
