"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both implementations are called directly, so ANNIGRAPH_JIT does not matter
here.  The first numba call (compilation, or a cache load) is reported
separately from the steady-state timings.
"""
import argparse
import time

import numpy as np

from annigraph import _kernels as K
from annigraph.localization import denominator_mask, _pairs
from annigraph.modules import Module
from annigraph.rings import Integers, ZMod

CASES = [
    ("Z/2+Z/2 over Z", Module(Integers(), [2, 2])),
    ("Z/4+Z/4 over Z/4", Module(ZMod(4), [4, 4])),
    ("Z/2+Z/4+Z/8 over Z", Module(Integers(), [2, 4, 8])),
    ("Z/6+Z/6 over Z/36", Module(ZMod(36), [6, 6])),
    ("Z/8+Z/8 over Z", Module(Integers(), [8, 8])),
    ("Z/2^6 over Z/64", Module(ZMod(64), [2] * 6)),
]


def _inputs(M):
    act = np.ascontiguousarray(M.act, dtype=np.int64)
    T = denominator_mask(M)
    pm, ps, _ = _pairs(T, M.size, M.acting.one_index)
    killed = (M.act[np.flatnonzero(T)] == 0).any(axis=0)
    return {
        "cyclic_closure": (act,),
        "colon_matrix": (act, M.cyclic, np.asarray(M.gens, dtype=np.int64)),
        "kills_matrix": (act, 0),
        "adjacency": (np.ascontiguousarray(M.colon), np.ascontiguousarray(M.killer)),
        "fraction_labels": (killed, np.ascontiguousarray(M.sub_table, dtype=np.int64), act, pm, ps),
    }


def _time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    opts = ap.parse_args()
    if not K.JIT_AVAILABLE:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'module':22} {'kernel':16} {'numpy us':>10} {'numba us':>10} {'ratio':>7} {'first nb ms':>12}")
    for name, M in CASES:
        for kernel, args in _inputs(M).items():
            np_fn, nb_fn = getattr(K, kernel + "_np"), getattr(K, kernel + "_nb")
            t0 = time.perf_counter()
            a = nb_fn(*args)
            first = time.perf_counter() - t0
            b = np_fn(*args)
            assert np.array_equal(a, b), (name, kernel)
            tn, tj = _time(np_fn, args, opts.repeat), _time(nb_fn, args, opts.repeat)
            print(f"{name:22} {kernel:16} {tn * 1e6:10.1f} {tj * 1e6:10.1f} {tn / tj:7.2f} {first * 1e3:12.2f}")


if __name__ == "__main__":
    main()
