"""Compare the pure-Python and compiled elimination kernels.

Inputs are bar-resolution coboundary matrices, the largest matrices the
package builds.  Both kernels must return identical operation logs.

    python3 benchmarks/bench_kernels.py [--group Q8] [--degrees 2 3 4]
"""

import argparse
import time

from m3link.exactlin import kernels
from m3link.groupcoh.groups import group_from_tag
from m3link.groupcoh.resolution import bar_resolution


def time_backend(mod, rows, ncols, repeat):
    best = None
    out = None
    for _ in range(repeat):
        work = [dict(r) for r in rows]
        t0 = time.perf_counter()
        out = mod.eliminate(work, ncols)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", default="Q8")
    ap.add_argument("--degrees", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args(argv)

    G = group_from_tag(args.group)
    R = bar_resolution(G, max(args.degrees) + 1, bound=1 << 21)
    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled kernel unavailable; timing pure Python only")
    print(f"{'degree':>6} {'shape':>14} {'nnz':>8} " +
          " ".join(f"{name:>10}" for name in backends) + "   speedup")
    for n in args.degrees:
        A = R.coboundary_matrix(n)
        rows = A.row_dicts()
        times = {}
        logs = {}
        for name, mod in backends.items():
            times[name], logs[name] = time_backend(mod, rows, A.cols, args.repeat)
        if len(set(map(repr, logs.values()))) != 1:
            raise SystemExit(f"degree {n}: backends disagree")
        speed = ""
        if "cython" in times:
            speed = f"{times['python'] / times['cython']:8.2f}x"
        shape = f"{A.rows}x{A.cols}"
        print(f"{n:>6} {shape:>14} {A.nnz:>8} " +
              " ".join(f"{times[k]:>9.3f}s" for k in backends) + "   " + speed)


if __name__ == "__main__":
    main()
