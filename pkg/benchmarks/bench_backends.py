"""Compare the numba and pure-python census kernels.

    python benchmarks/bench_backends.py [--family T --n 3] [--repeat 3]

Times the three kernel-bound census phases (closed-set search, minimal
images, per-representative statistics) on one ambient monoid with each
available backend.  DIAGSEMI_NO_NUMBA=1 removes the numba row entirely.
"""

import argparse
import time

from diagsemi.catalog import standard_generators
from diagsemi.census import all_subsemigroup_masks, symmetry_group
from diagsemi.engine import enumerate_family
from diagsemi.kernels import Backend, available_backends


def bench_once(S, G, backend):
    table = S.multiplication_table()
    t0 = time.perf_counter()
    masks = all_subsemigroup_masks(S, backend=backend)
    t_search = time.perf_counter() - t0

    t0 = time.perf_counter()
    reps = sorted({backend.min_image(m, G.index_perms)[0] for m in masks})
    t_min = time.perf_counter() - t0

    t0 = time.perf_counter()
    for m in reps:
        backend.count_dclasses(table, m)
        backend.count_idempotents(table, m)
    t_stats = time.perf_counter() - t0
    return len(masks), len(reps), t_search, t_min, t_stats


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default="T")
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    S = enumerate_family(standard_generators(args.family, args.n))
    G = symmetry_group(S)
    print(f"ambient {args.family}_{args.n}: {len(S)} elements, |G| = {len(G)}")

    header = f"{'backend':<8} {'masks':>7} {'classes':>7} " \
             f"{'search':>9} {'min-image':>10} {'stats':>9}"
    print(header)
    print("-" * len(header))
    for name in available_backends():
        backend = Backend(name)
        if backend.max_width() is not None and len(S) > backend.max_width():
            print(f"{name:<8} (skipped: ambient wider than {backend.max_width()} bits)")
            continue
        bench_once(S, G, backend)  # warm-up / JIT
        best = None
        for _ in range(args.repeat):
            masks, reps, *times = bench_once(S, G, backend)
            best = times if best is None else [min(a, b) for a, b in zip(best, times)]
        print(f"{name:<8} {masks:>7} {reps:>7} "
              f"{best[0]:>8.3f}s {best[1]:>9.3f}s {best[2]:>8.3f}s")


if __name__ == "__main__":
    main()
