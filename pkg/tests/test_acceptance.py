"""Acceptance criteria 1 to 11.

Each test records one PASS/FAIL line; the lines are printed at the end of
the pytest run and by ``python tests/test_acceptance.py``.  Integer targets
are exact.  Pinned tolerances: criterion 1 runtime <= 1800 s for n = 5,
criterion 4 runtime <= 10 s per Cerny member, zero violations or
discrepancies everywhere else.
"""
from __future__ import annotations

import functools
import itertools
import json
import time

import numpy as np
import pytest

from siaindex import _kernels
from siaindex.classes import is_positive_column, is_sarymsakov, is_scrambling, smallest_positive_column_power
from siaindex.families import cerny_set, line_automaton, wielandt_set
from siaindex.indices import naive_sia_index, pc_index, sia_index
from siaindex.patterns import MatrixSet, all_automaton_patterns
from siaindex.reductions import CnfFormula, SetCoverInstance, encode_3sat, encode_set_cover
from siaindex.sampling import (
    check_inclusion_chain,
    check_local_exponents,
    check_power_bounds,
    check_scrambling_closure,
)
from siaindex.search import automaton_table, max_sia_index

COMPILED = "cython" in _kernels.BACKENDS
RUNTIME_LIMIT_N5 = 1800.0
RUNTIME_LIMIT_CERNY = 10.0
SEED = 20240601
TIMING_REPEATS = 5

RESULTS: dict[int, str] = {}
_runs: dict = {}


def record(number: int, ok: bool, detail: str) -> None:
    RESULTS[number] = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    print(RESULTS[number])
    assert ok, RESULTS[number]


def table1(m: int, ic: bool, ns, workers: int = 1):
    """Summaries for one maximum-index sweep, cached per worker count.

    Raw enumeration with the compiled core; up to relabeling otherwise,
    which keeps the pure-Python fallback within the runtime target.
    """
    key = (m, ic, tuple(ns), workers)
    if key not in _runs:
        _runs[key] = [max_sia_index(n, m, ic_only=ic, canonical=not COMPILED, workers=workers) for n in ns]
    return _runs[key]


def test_criterion_01_pairs_all_automata():
    rows = table1(2, False, range(1, 6))
    values = [s.max_index for s in rows]
    wall = rows[-1].wall_time
    ok = values == [0, 1, 3, 5, 8] and wall <= RUNTIME_LIMIT_N5
    record(1, ok, f"pairs max SIA-index n=1..5 {values}; n=5 {'raw' if COMPILED else 'canonical'} {rows[-1].enumerated} sets in {wall:.1f}s")


def test_criterion_02_pairs_ic_automata():
    rows = table1(2, True, range(1, 6))
    values = [s.max_index for s in rows]
    canonical = not COMPILED
    # best of interleaved fresh runs, since single wall times on a shared core are noisy
    times = {True: [], False: []}
    for _ in range(TIMING_REPEATS):
        for ic in (True, False):
            times[ic].append(max_sia_index(5, 2, ic_only=ic, canonical=canonical).wall_time)
    ic_time, all_time = min(times[True]), min(times[False])
    ok = values == [0, 1, 3, 5, 8] and ic_time < all_time
    record(
        2, ok, f"IC pairs n=1..5 {values}; n=5 best of {TIMING_REPEATS}: IC {ic_time:.2f}s vs unfiltered {all_time:.2f}s"
    )


def test_criterion_03_triplets_ic_automata():
    rows = table1(3, True, range(1, 5))
    values = [s.max_index for s in rows]
    ok = values == [0, 1, 3, 5]
    record(3, ok, f"IC triplets n=1..4 {values}; n=4 {rows[-1].enumerated} sets")


def test_criterion_04_cerny_family():
    sia, slowest = [], 0.0
    for n in range(3, 11):
        start = time.perf_counter()
        sia.append(sia_index(cerny_set(n)).value)
        slowest = max(slowest, time.perf_counter() - start)
    pc = [pc_index(cerny_set(n)).value for n in range(3, 8)]
    ok = sia == list(range(3, 11)) and pc == [(n - 1) ** 2 for n in range(3, 8)] and slowest <= RUNTIME_LIMIT_CERNY
    record(4, ok, f"sia(C_n) n=3..10 {sia}; pc(C_n) n=3..7 {pc}; slowest {slowest:.3f}s")


def test_criterion_05_wielandt_family():
    sia, witnesses = [], []
    for n in range(3, 11):
        s = wielandt_set(n)
        sia.append(sia_index(s).value)
        p = s.product([0] + [1] * (n - 2))
        witnesses.append(smallest_positive_column_power(p) is not None)
    ok = sia == [n - 1 for n in range(3, 11)] and all(witnesses)
    record(5, ok, f"sia(W_n) n=3..10 {sia}; AB^(n-2) SIA for all n: {all(witnesses)}")


def test_criterion_06_line_automaton():
    powers = [smallest_positive_column_power(line_automaton(n)) for n in range(2, 13)]
    ok = powers == [n - 1 for n in range(2, 13)]
    record(6, ok, f"smallest positive-column power n=2..12 {powers}")


def test_criterion_07_power_bounds():
    parts, ok = [], True
    for n in range(3, 7):
        bounds = check_power_bounds(n, 100_000, SEED)
        local = check_local_exponents(n, 10_000, SEED)
        ok &= bounds.violations == 0 and local.violations == 0
        ok &= bounds.samples >= 100_000 and local.samples >= 10_000
        parts.append(f"n={n}: {bounds.samples} SIA/{bounds.violations} viol, {local.samples} primitive/{local.violations} viol")
    record(7, ok, "; ".join(parts))


def _oracle_mismatch(s: MatrixSet, cutoff: int) -> bool:
    fast = sia_index(s)
    slow = naive_sia_index(s, cutoff)
    if fast.value is not None:
        return fast.value != slow.value
    return slow.value is not None


def test_criterion_08_lyndon_oracle():
    mismatches = compared = 0
    for n in range(1, 5):
        table = automaton_table(n).tolist()
        for i, j in itertools.combinations(range(len(table)), 2):
            compared += 1
            mismatches += _oracle_mismatch(MatrixSet.from_maps([table[i], table[j]]), 10)
    rng = np.random.default_rng([SEED, 8])
    for _ in range(1000):
        maps = rng.integers(0, 5, size=(2, 5))
        while (maps[0] == maps[1]).all():
            maps = rng.integers(0, 5, size=(2, 5))
        compared += 1
        # every SIA pair at n = 5 has index <= 8, so cutoff 10 decides all of them
        mismatches += _oracle_mismatch(MatrixSet.from_maps(maps.tolist()), 10)
    record(8, mismatches == 0, f"{compared} sets compared (exhaustive pairs n<=4, 1000 random n=5), {mismatches} discrepancies")


def test_criterion_09_inclusion_chain_and_closure():
    parts, ok = [], True
    for n in range(2, 9):
        chain = check_inclusion_chain(n, 100_000, SEED)
        closure = check_scrambling_closure(n, 100_000, SEED)
        ok &= chain.violations == 0 and closure.violations == 0
        ok &= chain.samples >= 100_000 and closure.samples >= 100_000
        parts.append(f"n={n}: {chain.violations}+{closure.violations}")
    coincide = 0
    for n in range(1, 6):
        for p in all_automaton_patterns(n):
            pc = is_positive_column(p)
            coincide += not (is_scrambling(p) == pc == is_sarymsakov(p))
    ok &= coincide == 0
    record(9, ok, f"violations chain+closure over 1e5 each {', '.join(parts)}; coincide mismatches n<=5: {coincide}")


@functools.lru_cache(maxsize=None)
def _combinations(pool: int, m: int) -> np.ndarray:
    """All m-subsets of range(pool) as rows, in lexicographic order."""
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    parts = []
    for first in range(pool - m + 1):
        rest = _combinations(pool - first - 1, m - 1) + first + 1
        parts.append(np.hstack([np.full((len(rest), 1), first, dtype=np.int64), rest]))
    return np.vstack(parts) if parts else np.zeros((0, m), dtype=np.int64)


def _min_cover(masks: np.ndarray, full: int) -> np.ndarray:
    """Brute-force optimum for each row of member bitmasks."""
    rows, m = masks.shape
    best = np.full(rows, m + 1, dtype=np.int64)
    ors = [np.zeros(rows, dtype=np.int64)]
    for s in range(1, 1 << m):
        low = s & -s
        ors.append(ors[s ^ low] | masks[:, low.bit_length() - 1])
        hit = ors[s] == full
        best[hit] = np.minimum(best[hit], bin(s).count("1"))
    return best


def set_cover_sweep(n: int, max_family: int) -> tuple[int, int]:
    """Every covering family of distinct subsets of {1..n} with at most
    ``max_family`` members; returns (instances, mismatches)."""
    full = (1 << n) - 1
    subsets = [frozenset(i + 1 for i in range(n) if s >> i & 1) for s in range(1, full + 1)]
    # encoding every subset once gives the automaton of each possible member
    table = encode_set_cover(SetCoverInstance(n, tuple(subsets))).maps()
    masks = np.arange(1, full + 1, dtype=np.int64)
    pool = len(subsets)
    checked = mismatches = 0
    for m in range(1, min(max_family, pool) + 1):
        head = max(0, m - 4)
        for prefix in itertools.combinations(range(pool), head):
            start = prefix[-1] + 1 if prefix else 0
            tail = _combinations(pool - start, m - head) + start
            sets = np.hstack([np.tile(np.array(prefix, dtype=np.int64), (len(tail), 1)), tail])
            member_masks = masks[sets]
            covering = np.bitwise_or.reduce(member_masks, axis=1) == full
            sets, member_masks = sets[covering], member_masks[covering]
            if not len(sets):
                continue
            got = _kernels.batch_sia_indices(table, sets, False, m)
            checked += len(sets)
            mismatches += int(np.count_nonzero(got != _min_cover(member_masks, full)))
    return checked, mismatches


def _set_cover_api_sample(count: int) -> int:
    """Same comparison through the public encoder and sia_index."""
    rng = np.random.default_rng([SEED, 10])
    mismatches = 0
    for _ in range(count):
        n = int(rng.integers(1, 7))
        while True:
            fam = {frozenset(int(x) + 1 for x in np.nonzero(rng.random(n) < 0.4)[0]) for _ in range(int(rng.integers(1, 7)))}
            fam.discard(frozenset())
            if fam and frozenset().union(*fam) == frozenset(range(1, n + 1)):
                break
        inst = SetCoverInstance(n, tuple(sorted(fam, key=sorted)))
        mismatches += sia_index(encode_set_cover(inst)).value != inst.min_cover_size()
    return mismatches


def test_criterion_10_reductions():
    sat_checked = sat_bad = 0
    for v in range(1, 4):
        literals = [lit for i in range(1, v + 1) for lit in (i, -i)]
        clauses = list(itertools.combinations_with_replacement(literals, 3))
        for c in range(1, 4):
            for chosen in itertools.combinations_with_replacement(clauses, c):
                f = CnfFormula(v, chosen)
                s, threshold = encode_3sat(f)
                within = sia_index(s, cutoff=threshold).value is not None
                sat_checked += 1
                sat_bad += within != f.is_satisfiable()
    detail = f"3-SAT {sat_checked} formulas v,c<=3, {sat_bad} disagreements"
    if not COMPILED:
        record(10, False, detail + "; set-cover sweep n<=6 needs the compiled core and was not run")
        return
    cover_checked = cover_bad = 0
    for n in range(1, 7):
        checked, bad = set_cover_sweep(n, 6)
        cover_checked += checked
        cover_bad += bad
    api_bad = _set_cover_api_sample(2000)
    ok = sat_bad == 0 and cover_bad == 0 and api_bad == 0
    record(
        10,
        ok,
        detail + f"; set cover {cover_checked} instances n<=6 |F|<=6, {cover_bad} disagreements"
        f" (+2000 via public API, {api_bad})",
    )


def test_criterion_11_determinism():
    columns = [(2, False, range(1, 6)), (2, True, range(1, 6)), (3, True, range(1, 5))]
    identical = True
    for m, ic, ns in columns:
        one = json.dumps([s.to_dict(False) for s in table1(m, ic, ns, workers=1)], sort_keys=True)
        two = json.dumps([s.to_dict(False) for s in table1(m, ic, ns, workers=2)], sort_keys=True)
        identical &= one == two
    record(11, identical, "criteria 1-3 summaries with 1 and 2 workers byte-identical" if identical else "summaries differ")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
