"""Compare the numba and numpy kernels.

    python3 benchmarks/bench_kernels.py [--builtin a:2,2] [--sub 1,2,3,4] [--repeat 3] [--full]

Kernel timings call both implementations directly on every block of one
model.  ``--full`` also times a complete Betti computation in a fresh
interpreter per backend, since the backend is fixed at import time.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from treecohom import kernels, lie_algebra, parse_builtin
from treecohom.complex import graded_complex
from treecohom.linalg import PRIMES


def best_of(fn, repeat):
    out = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return min(out)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--builtin", default="a:2,2")
    ap.add_argument("--sub", help="restrict to the subdiagram on these nodes, e.g. 1,2,3,4")
    ap.add_argument("--algebra", default="L0")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--full", action="store_true", help="also time a full betti run per backend")
    args = ap.parse_args(argv)

    T = parse_builtin(args.builtin)
    if args.sub:
        T = T.relabel(int(x) for x in args.sub.split(","))[0]
    L = lie_algebra(T, args.algebra)
    gc = graded_complex(L)
    srcs = [gc.block(p, w) for w in gc.weights for p in range(gc.N + 1)]
    srcs = [s for s in srcs if s.size]
    mats = [gc._dense(p, w, True) for w in gc.weights for p in range(gc.N)]
    mats = [m for m in mats if m.size and m.any()]
    label = args.builtin + (f" sub {args.sub}" if args.sub else "")
    print(f"{label} {args.algebra}: dim {L.dim}, {len(srcs)} blocks, {len(mats)} nonzero D blocks")

    p = np.int64(PRIMES[0])
    jobs = {
        "boundary_coo": lambda fn: [fn(s, gc.brackets, gc.pos) for s in srcs],
        "coboundary_coo": lambda fn: [fn(s, gc.brackets, gc.pos) for s in srcs],
        "rank_mod_p": lambda fn: [fn(m, p) for m in mats],
    }
    print(f"{'kernel':16} {'numba':>10} {'numpy':>10} {'ratio':>7}")
    for name, job in jobs.items():
        fa, fb = getattr(kernels, name + "_numba"), getattr(kernels, name + "_numpy")
        job(fa)  # compile
        ta = best_of(lambda: job(fa), args.repeat)
        tb = best_of(lambda: job(fb), args.repeat)
        print(f"{name:16} {ta:10.4f} {tb:10.4f} {tb / ta:7.1f}x")

    if args.full:
        cmd = [sys.executable, "-c",
               "import time, sys\n"
               "from treecohom import betti, lie_algebra, parse_diagram\n"
               f"L = lie_algebra(parse_diagram({T.render()!r}), {args.algebra!r})\n"
               "t = time.perf_counter(); b = betti(L)\n"
               "print(time.perf_counter() - t, b.total)"]
        for backend in ("numba", "numpy"):
            env = dict(os.environ, TREECOHOM_BACKEND=backend)
            out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True).stdout.split()
            print(f"full betti [{backend}]: {float(out[0]):.3f}s, total {out[1]}")


if __name__ == "__main__":
    main()
