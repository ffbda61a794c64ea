"""Compare the pure-Python and compiled copy-search kernels.

    python benchmarks/bench_kernel.py [--repeat 3] [--quick]

Each workload runs on both backends, checks that they return the same
answers, and prints the best wall time of ``--repeat`` runs.
"""

import argparse
import random
import sys
import time

from posetsat import family
from posetsat.constructions import klayer_seed
from posetsat.family import SetFamily, find_induced_copy
from posetsat.percolation import percolating_family, percolation_closure
from posetsat.poset import complete_multilayer, make_poset, poset_classes
from posetsat.saturation import greedy_complete, is_saturated


def random_copies(backend, quick):
    rng = random.Random(1)
    out = []
    for _ in range(300 if quick else 2000):
        n = 8
        F = SetFamily.of(n, rng.sample(range(1 << n), 40))
        p = rng.randint(2, 5)
        pairs = [(i, j) for i in range(p) for j in range(i + 1, p) if rng.random() < 0.4]
        P = make_poset(p, pairs)
        hit = find_induced_copy(F, P, backend=backend)
        out.append(None if hit is None else hit.sets)
    return out


def closure(backend, quick):
    out = []
    posets = poset_classes(3) if quick else poset_classes(4)
    for P in posets:
        n = 3 * P.size - 1
        s = percolating_family(P, n)
        out.append(len(percolation_closure(s.initial, P, backend=backend)))
    return out


def greedy_k22(backend, quick):
    K = complete_multilayer([2, 2])
    n = 8 if quick else 10
    seed, _ = klayer_seed([2, 2], n)
    F = greedy_complete(seed, K, "asc", backend=backend)
    v = is_saturated(F, K, backend=backend)
    return (F.members, v.status)


WORKLOADS = [
    ("find_copy, 2000 random families (n=8, 40 sets)", random_copies),
    ("percolation closure, every poset class (p=4, n=11)", closure),
    ("greedy K22 completion + saturation check (n=10)", greedy_k22),
]


def best_time(fn, backend, quick, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn(backend, quick)
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args(argv)

    if family._csearch is None:
        print("compiled kernel not available; build the package first", file=sys.stderr)
        return 1

    print(f"{'workload':55s} {'python':>9s} {'compiled':>9s} {'speedup':>8s}")
    for name, fn in WORKLOADS:
        tp, rp = best_time(fn, "python", args.quick, args.repeat)
        tc, rc = best_time(fn, "compiled", args.quick, args.repeat)
        if rp != rc:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 2
        print(f"{name:55s} {tp:8.3f}s {tc:8.3f}s {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
