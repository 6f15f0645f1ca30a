"""Compare the numba and numpy backends of the colour-coding DP.

Each cell fills complete strict-mode tables (no early exit) for a fixed
family of random colourings, so both backends do identical work. Tables are
checked for equality before timings are reported.

    python3 benchmarks/bench_accel.py --n 20,60,100 --k 2,3,4 --colorings 64
"""
import argparse
import time

import numpy as np

from maxduo import _accel
from maxduo.colorcoding.dp import Mode, colours_for, kernels, max_block_len, occurrence_blocks
from maxduo.gen import GenSpec, gen_random


def run_family(K, pair, blocks, fam, k, c):
    tables = []
    for row in fam:
        masks = K.block_masks(row, blocks.q, blocks.length, pair.n, True, c)
        _, table, _ = K.strict_table(pair.n, blocks.h, blocks.end, masks, c + 1, k, True, False)
        tables.append(table)
    return tables


def time_backend(name, pair, blocks, fam, k, c, reps):
    K = kernels(name)
    run_family(K, pair, blocks, fam[:1], k, c)  # compile / warm caches
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        tables = run_family(K, pair, blocks, fam, k, c)
        best = min(best, time.perf_counter() - t0)
    return best, tables


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="20,60,100")
    ap.add_argument("--k", default="2,3,4")
    ap.add_argument("--sigma", type=int, default=4)
    ap.add_argument("--colorings", type=int, default=64)
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 1

    print(f"{'n':>5} {'k':>3} {'blocks':>7} {'numpy_ms':>10} {'numba_ms':>10} {'speedup':>8}")
    for n in (int(x) for x in args.n.split(",")):
        pair = gen_random(GenSpec(n, args.sigma, args.seed)).pair
        for k in (int(x) for x in args.k.split(",")):
            c = colours_for(Mode.STRICT, k)
            blocks = occurrence_blocks(pair, max_block_len(Mode.STRICT, k))
            fam = np.random.default_rng(args.seed).integers(0, c, size=(args.colorings, n - 1))
            t_np, tab_np = time_backend("numpy", pair, blocks, fam, k, c, args.reps)
            t_nb, tab_nb = time_backend("numba", pair, blocks, fam, k, c, args.reps)
            assert all(np.array_equal(x, y) for x, y in zip(tab_np, tab_nb)), "backends disagree"
            print(f"{n:>5} {k:>3} {len(blocks):>7} {t_np * 1e3:>10.2f} {t_nb * 1e3:>10.2f} "
                  f"{t_np / t_nb:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
