"""Compare the compiled and pure-Python scanning kernels.

    python3 benchmarks/bench_kernels.py --bounds 3,4,6 --repeat 3

Each row times one kernel call at height bound B (quadratics with
Mahler measure at most B^2) for both backends, checks the outputs agree,
and prints the speedup.
"""

import argparse
import statistics
import time

from orbitint.kernels import _pykernels

try:
    from orbitint.kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _time(fn, args, repeat):
    out, times = None, []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t)
    return out, statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bounds", default="3,4,6")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; nothing to compare")
        return 1
    cases = []
    for B in (int(b) for b in args.bounds.split(",")):
        X = B * B
        cases.append((f"count_quadratics B={B}", "count_quadratics", (X, 1)))
        cases.append((f"hit_candidates    B={B}", "quadratic_hit_candidates", (X, 1, (-2, 0, 1), ())))
    print(f"{'kernel':<28}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for label, name, call_args in cases:
        slow, t_py = _time(getattr(_pykernels, name), call_args, args.repeat)
        fast, t_c = _time(getattr(_ckernels, name), call_args, args.repeat)
        if slow != fast:
            raise SystemExit(f"{label}: backends disagree")
        print(f"{label:<28}{t_py:>12.4f}{t_c:>12.4f}{t_py / max(t_c, 1e-9):>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
