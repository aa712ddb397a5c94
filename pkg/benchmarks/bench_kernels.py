#!/usr/bin/env python3
"""Time the pure-Python and compiled kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3] [--oracle-n 21] [--json]

Each row reports the best of ``--repeat`` runs per backend and the speed-up.
Results from the two backends are compared before anything is timed.
"""
import argparse
import json
import sys
import time

from skewmorph import _kernels_py
from skewmorph._backend import available_backends
from skewmorph.perm import mult_map, translation
from skewmorph.skew import iterate_admissible, s_ij, s_ijkl
from skewmorph.zmod import Modulus


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(oracle_n):
    m = Modulus(3, 4)
    family = [s_ijkl(t, m).images for t in iterate_admissible(m)]
    gens = [translation(m).images, s_ij(3, 0, m).perm.images]
    big = Modulus(5, 3)
    gens_big = [translation(big).images, mult_map(6, big).images]

    def power_functions(k):
        return lambda: [k.power_function(f) for f in family]

    def closures(k):
        return lambda: (k.closure(gens, 10**6), k.closure(gens_big, 10**6))

    def search(k):
        return lambda: [k.search_branch(oracle_n, v)[0] for v in range(1, oracle_n)]

    return [
        (f"power_function x{len(family)} (n=81)", power_functions),
        ("closure |G|=729 on 81 pts, |G|=3125 on 125 pts", closures),
        (f"pruned search, all branches (n={oracle_n})", search),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--oracle-n", type=int, default=21)
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    args = ap.parse_args(argv)

    backends = available_backends()
    if len(backends) < 2:
        print("compiled kernels not built; only the Python backend is available", file=sys.stderr)

    rows = []
    for label, make in workloads(args.oracle_n):
        outputs = [make(k)() for k in backends]
        if any(repr(o) != repr(outputs[0]) for o in outputs[1:]):
            # lists vs tuples may differ in type only; compare normalised forms
            norm = [json.dumps(o, default=list, sort_keys=True) for o in outputs]
            if len(set(norm)) != 1:
                raise SystemExit(f"backends disagree on: {label}")
        times = {k.BACKEND: best_of(make(k), args.repeat) for k in backends}
        rows.append((label, times))

    if args.json:
        print(json.dumps([{"workload": lbl, "seconds": t} for lbl, t in rows], indent=2))
        return 0
    names = [k.BACKEND for k in backends]
    print(f"{'workload':52s}" + "".join(f"{n:>10s}" for n in names) + ("   speed-up" if len(names) > 1 else ""))
    for label, times in rows:
        line = f"{label:52s}" + "".join(f"{times[n]:10.3f}" for n in names)
        if len(names) > 1:
            line += f"   {times[_kernels_py.BACKEND] / times[names[-1]]:8.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
