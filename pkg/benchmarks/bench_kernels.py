"""Compiled versus pure-Python kernels on the workloads that dominate runtime.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import itertools
import time

import numpy as np

from siaindex import _kernels
from siaindex.families import cerny_set, wielandt_set
from siaindex.sampling import random_patterns
from siaindex.search import automaton_table


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def workloads():
    rng = np.random.default_rng(7)
    pats = [p.rows for p in random_patterns(16, 2000, rng)]
    table4 = automaton_table(4)
    pairs4 = np.array(list(itertools.combinations(range(len(table4)), 2)), dtype=np.int64)
    cerny = cerny_set(9).maps()
    wiel = wielandt_set(9).maps()
    return {
        "pattern_product x2000 (n=16)": lambda k: [k.pattern_product(a, b) for a, b in zip(pats, pats[1:])],
        "first_pc_power x2000 (n=16)": lambda k: [k.first_pc_power(a, 199) for a in pats],
        "sarymsakov_violation x200 (n=10)": lambda k: [k.sarymsakov_violation(a[:10]) for a in
                                                       (tuple(r & 1023 or 1 for r in p[:10]) for p in pats[:200])],
        "auto_sia_index Cerny n=9": lambda k: k.auto_sia_index(cerny, 200),
        "auto_sia_index Wielandt n=9": lambda k: k.auto_sia_index(wiel, 200),
        "batch_sia_indices all pairs n=4": lambda k: k.batch_sia_indices(table4, pairs4, False, 10),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if "cython" not in _kernels.BACKENDS:
        raise SystemExit("compiled core not built; run `python setup.py build_ext --inplace`")
    py, cy = _kernels.get_backend("python"), _kernels.get_backend("cython")
    print(f"{'workload':40s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, fn in workloads().items():
        a, b = fn(py), fn(cy)
        assert np.array_equal(a, b) if isinstance(a, np.ndarray) else a == b, name
        tp = best_of(lambda: fn(py), args.repeat)
        tc = best_of(lambda: fn(cy), args.repeat)
        print(f"{name:40s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
