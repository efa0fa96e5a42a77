"""Benchmark the jitted kernels against their pure-numpy fallbacks.

Times gf2_rref, gf2_matmul, gfp_rref and gfp_charpoly on random inputs of
the requested sizes and prints one table row per (kernel, size).  When numba
is unavailable (or TLSCHUR_PURE_NUMPY=1), only the numpy column is filled.

Usage:
    python3 benchmarks/bench_kernels.py [--sizes 256,512,1024] [--p 5] [--repeats 5]
"""

import argparse
import time

import numpy as np

from tlschur import _kernels as K


def best_of(fn, repeats: int) -> float:
    # best-of timing: robust to scheduler noise on short runs
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def inv_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    return inv


def bench_case(label: str, make_args, impls, repeats: int):
    """Times each implementation on fresh copies of the same input."""
    row = {"case": label}
    for name, fn in impls:
        if fn is None:
            row[name] = None
            continue
        fn(*make_args())  # warm: triggers jit compilation outside the timing
        row[name] = best_of(lambda: fn(*make_args()), repeats)
    return row


def main():
    ap = argparse.ArgumentParser(description="kernel backend comparison")
    ap.add_argument("--sizes", default="256,512,1024", help="comma separated square sizes")
    ap.add_argument("--p", type=int, default=5, help="odd prime for the GF(p) kernels")
    ap.add_argument("--charpoly-size", type=int, default=192, dest="charpoly_size")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    sizes = [int(s) for s in args.sizes.split(",") if s]
    p = args.p
    rng = np.random.default_rng(args.seed)
    inv = inv_table(p)
    has = K.HAS_NUMBA
    print(f"active backend: {K.active_backend()} (numba {'available' if has else 'unavailable'})")

    rows = []
    for n in sizes:
        bits = rng.integers(0, 2, size=(n, n)).astype(np.uint8)
        packed = K.pack_rows(bits)
        ints = rng.integers(0, p, size=(n, n)).astype(np.int64)

        rows.append(
            bench_case(
                f"gf2_rref {n}x{n}",
                lambda: (packed.copy(), n),
                [("numba", K.gf2_rref_numba if has else None), ("numpy", K.gf2_rref_numpy)],
                args.repeats,
            )
        )
        rows.append(
            bench_case(
                f"gf2_matmul {n}x{n}",
                lambda: (packed, n, packed, np.zeros_like(packed)),
                [("numba", K.gf2_matmul_numba if has else None), ("numpy", K.gf2_matmul_numpy)],
                args.repeats,
            )
        )
        rows.append(
            bench_case(
                f"gfp_rref p={p} {n}x{n}",
                lambda: (ints.copy(), p, inv),
                [("numba", K.gfp_rref_numba if has else None), ("numpy", K.gfp_rref_numpy)],
                args.repeats,
            )
        )

    m = args.charpoly_size
    square = rng.integers(0, p, size=(m, m)).astype(np.int64)
    rows.append(
        bench_case(
            f"gfp_charpoly p={p} {m}x{m}",
            lambda: (square.copy(), p, inv),
            [("numba", K.gfp_charpoly_numba if has else None), ("numpy", K.gfp_charpoly_numpy)],
            args.repeats,
        )
    )

    width = max(len(r["case"]) for r in rows)
    print(f"{'case':<{width}}  {'numba (ms)':>12}  {'numpy (ms)':>12}  {'speedup':>8}")
    for r in rows:
        nb, npy = r["numba"], r["numpy"]
        nb_s = f"{nb * 1e3:12.2f}" if nb is not None else f"{'-':>12}"
        ratio = f"{npy / nb:7.1f}x" if nb else f"{'-':>8}"
        print(f"{r['case']:<{width}}  {nb_s}  {npy * 1e3:12.2f}  {ratio}")


if __name__ == "__main__":
    main()
