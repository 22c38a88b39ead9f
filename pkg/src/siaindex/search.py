"""Exhaustive search for the largest SIA-index over sets of automata.

Automata on ``n`` states are encoded as integers: the map ``f`` has code
``sum(f[i] * n**(n-1-i))``, so code order is lexicographic order of
``(f[0], ..., f[n-1])``.  A set of ``m`` automata is a strictly increasing
tuple of codes.

Relabeling states by a permutation ``s`` turns ``f`` into ``s f s^-1``.  In
canonical mode a set is emitted only when its sorted code tuple is the
smallest among all relabelings.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from . import _kernels
from .indices import default_sia_cutoff, sia_index
from .patterns import MatrixSet, dumps_matrix_set, matrix_set_to_dict

DEFAULT_BUDGET = 50_000_000
CHUNK_SIZE = 200_000
WORKERS_ENV = "SIAINDEX_WORKERS"


class BudgetExceededError(RuntimeError):
    def __init__(self, estimate: int, budget: int):
        super().__init__(f"search universe of about {estimate:,} sets exceeds the budget of {budget:,}")
        self.estimate = estimate
        self.budget = budget


@lru_cache(maxsize=None)
def automaton_table(n: int) -> np.ndarray:
    """All ``n**n`` automaton maps as a read-only ``(n**n, n)`` int32 array, in code order."""
    grids = np.indices((n,) * n).reshape(n, -1).T
    table = np.ascontiguousarray(grids, dtype=np.int32)
    table.setflags(write=False)
    return table


def encode(f) -> int:
    n = len(f)
    code = 0
    for v in f:
        code = code * n + int(v)
    return code


@lru_cache(maxsize=None)
def _permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int32).reshape(-1, n)


@lru_cache(maxsize=None)
def conjugation_table(n: int) -> np.ndarray:
    """``C[p, c]`` is the code of automaton ``c`` after relabeling states by permutation ``p``."""
    table = automaton_table(n)
    perms = _permutations(n)
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    out = np.empty((len(perms), len(table)), dtype=np.int64)
    for p, sigma in enumerate(perms):
        relabeled = np.empty_like(table)
        relabeled[:, sigma] = sigma[table]
        out[p] = relabeled @ weights
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _orbit_minima(n: int) -> np.ndarray:
    return conjugation_table(n).min(axis=0)


def canonical_form(codes, n: int) -> tuple[int, ...]:
    """Smallest sorted code tuple among all relabelings of the set."""
    conj = conjugation_table(n)
    images = np.sort(conj[:, list(codes)], axis=1)
    best = min(map(tuple, images.tolist()))
    return tuple(int(c) for c in best)


# -- enumeration -----------------------------------------------------------


def _raw_chunks(count: int, m: int, chunk_size: int) -> Iterator[np.ndarray]:
    if m == 1:
        for start in range(0, count, chunk_size):
            yield np.arange(start, min(count, start + chunk_size), dtype=np.int64)[:, None]
        return
    buf: list[np.ndarray] = []
    size = 0
    for first in range(count):
        rest = np.arange(first + 1, count, dtype=np.int64)
        if len(rest) < m - 1:
            break
        if m == 2:
            tails = rest[:, None]
        elif m == 3:
            i, j = np.triu_indices(len(rest), k=1)
            tails = np.stack([rest[i], rest[j]], axis=1)
        else:
            tails = np.array(list(itertools.combinations(rest.tolist(), m - 1)), dtype=np.int64)
        block = np.concatenate([np.full((len(tails), 1), first, dtype=np.int64), tails], axis=1)
        buf.append(block)
        size += len(block)
        if size >= chunk_size:
            yield np.concatenate(buf)
            buf, size = [], 0
    if buf:
        yield np.concatenate(buf)


def _min_key(conj: np.ndarray, sets: np.ndarray, count: int) -> np.ndarray:
    # smallest sorted image tuple of each set over the given relabelings, as one integer
    imgs = np.sort(conj[:, sets], axis=2)  # (P, K, m)
    key = np.zeros(imgs.shape[:2], dtype=np.int64)
    for col in range(imgs.shape[2]):
        key = key * count + imgs[:, :, col]
    return key.min(axis=0)


def _as_key(sets: np.ndarray, count: int) -> np.ndarray:
    key = np.zeros(len(sets), dtype=np.int64)
    for col in range(sets.shape[1]):
        key = key * count + sets[:, col]
    return key


def _canonical_for_first(n: int, m: int, x: int) -> list[np.ndarray]:
    conj = conjugation_table(n)
    canon = _orbit_minima(n)
    count = conj.shape[1]
    stab = conj[conj[:, x] == x]
    pool = np.flatnonzero((np.arange(count) > x) & (canon >= x))
    in_orbit = canon[pool] == x
    out = []
    if m == 2:
        # no other orbit member: only the stabilizer of x can lower the pair
        plain = pool[~in_orbit]
        ok = (stab[:, plain] >= plain).all(axis=0)
        out.append(np.stack([np.full(ok.sum(), x), plain[ok]], axis=1))
        mixed = pool[in_orbit]
        if len(mixed):
            sets = np.stack([np.full(len(mixed), x), mixed], axis=1)
            keep = _min_key(conj, sets, count) == _as_key(sets, count)
            out.append(sets[keep])
    elif m == 3:
        plain = pool[~in_orbit]
        stab_plain = stab[:, plain]
        for pos in range(len(plain) - 1):
            y = plain[pos]
            zs = plain[pos + 1:]
            a = stab_plain[:, pos][:, None]
            b = stab_plain[:, pos + 1:]
            lo = np.minimum(a, b)
            hi = np.maximum(a, b)
            key = lo * count + hi
            ok = (key >= y * count + zs).all(axis=0)
            if ok.any():
                kept = zs[ok]
                out.append(np.stack([np.full(len(kept), x), np.full(len(kept), y), kept], axis=1))
        orbit_pool = set(pool[in_orbit].tolist())
        for pos, y in enumerate(pool):
            zs = pool[pos + 1:]
            if int(y) not in orbit_pool:
                zs = zs[in_orbit[pos + 1:]]
            if not len(zs):
                continue
            sets = np.stack([np.full(len(zs), x), np.full(len(zs), y), zs], axis=1)
            keep = _min_key(conj, sets, count) == _as_key(sets, count)
            if keep.any():
                out.append(sets[keep])
    else:
        raise NotImplementedError("canonical enumeration supports sets of 2 or 3 automata")
    out = [o.astype(np.int64) for o in out if len(o)]
    if not out:
        return []
    merged = np.concatenate(out)
    order = np.lexsort(merged.T[::-1])
    return [merged[order]]


def _canonical_chunks(n: int, m: int, chunk_size: int) -> Iterator[np.ndarray]:
    if m == 1:
        reps = np.flatnonzero(_orbit_minima(n) == np.arange(n**n))
        yield reps[:, None].astype(np.int64)
        return
    canon = _orbit_minima(n)
    firsts = np.flatnonzero(canon == np.arange(len(canon)))
    buf: list[np.ndarray] = []
    size = 0
    for x in firsts:
        for block in _canonical_for_first(n, m, int(x)):
            buf.append(block)
            size += len(block)
        if size >= chunk_size:
            yield np.concatenate(buf)
            buf, size = [], 0
    if buf:
        yield np.concatenate(buf)


def _set_chunks(n: int, m: int, canonical: bool, chunk_size: int = CHUNK_SIZE) -> Iterator[np.ndarray]:
    if m < 1:
        raise ValueError("set size must be at least 1")
    count = n**n
    if canonical and n > 1:
        yield from _canonical_chunks(n, m, chunk_size)
    else:
        yield from _raw_chunks(count, m, chunk_size)


def enumerate_automaton_sets(n: int, m: int, ic_only: bool = False, canonical: bool = False) -> Iterator[MatrixSet]:
    """All sets of ``m`` distinct automata on ``n`` states.

    With ``canonical`` only one representative per relabeling class is
    produced; with ``ic_only`` sets that are not initially connected are
    skipped.
    """
    table = automaton_table(n)
    for chunk in _set_chunks(n, m, canonical):
        for codes in chunk:
            maps = table[codes]
            if ic_only and not _kernels.auto_is_ic(maps):
                continue
            yield MatrixSet.from_maps(maps.tolist())


def universe_estimate(n: int, m: int, canonical: bool) -> int:
    raw = math.comb(n**n, m)
    if canonical:
        return math.ceil(raw / math.factorial(n))
    return raw


# -- search ----------------------------------------------------------------


@dataclass
class _Partial:
    enumerated: int = 0
    sia_sets: int = 0
    undecided: int = 0
    max_index: int = -1
    extremal: list = field(default_factory=list)

    def merge(self, other: "_Partial") -> "_Partial":
        out = _Partial(
            self.enumerated + other.enumerated,
            self.sia_sets + other.sia_sets,
            self.undecided + other.undecided,
            max(self.max_index, other.max_index),
        )
        for part in (self, other):
            if part.max_index == out.max_index:
                out.extremal.extend(part.extremal)
        return out


def _process_chunk(args) -> _Partial:
    n, chunk, ic_only, cutoff = args
    values = _kernels.batch_sia_indices(automaton_table(n), chunk, ic_only, cutoff)
    part = _Partial()
    kept = values != _kernels.NOT_IC
    part.enumerated = int(kept.sum())
    part.undecided = int((values == _kernels.CUTOFF_REACHED).sum())
    sia = values >= 0
    part.sia_sets = int(sia.sum())
    if part.sia_sets:
        best = int(values[sia].max())
        part.max_index = best
        part.extremal = [tuple(int(c) for c in row) for row in chunk[values == best]]
    return part


@dataclass
class SearchSummary:
    n: int
    set_size: int
    ic_only: bool
    canonical: bool
    max_index: int
    extremal_count: int
    extremal_examples: list
    enumerated: int
    sia_sets: int
    undecided: int
    wall_time: float

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "n": self.n,
            "set_size": self.set_size,
            "ic_only": self.ic_only,
            "canonical": self.canonical,
            "max_index": self.max_index,
            "extremal_count": self.extremal_count,
            "enumerated": self.enumerated,
            "sia_sets": self.sia_sets,
            "undecided": self.undecided,
            "extremal_examples": self.extremal_examples,
        }
        if include_timing:
            out["wall_time_ms"] = round(self.wall_time * 1000, 3)
        return out

    def csv_row(self, include_timing: bool = True) -> list:
        wall = round(self.wall_time * 1000, 3) if include_timing else ""
        return [self.n, self.set_size, int(self.ic_only), self.max_index, self.extremal_count, self.enumerated, wall]


CSV_COLUMNS = ["n", "set_size", "ic_only", "max_index", "extremal_count", "enumerated", "wall_time_ms"]


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        workers = int(raw)
        if workers < 1:
            raise ValueError(f"{WORKERS_ENV} must be at least 1")
        return workers
    return 1


def _example(n: int, codes: tuple[int, ...], cutoff: int) -> dict:
    table = automaton_table(n)
    s = MatrixSet.from_maps(table[list(codes)].tolist())
    res = sia_index(s, cutoff)
    doc = matrix_set_to_dict(s)
    doc["codes"] = list(codes)
    doc["witness"] = s.format_word(res.witness) if res.witness is not None else None
    return doc


def max_sia_index(
    n: int,
    m: int = 2,
    ic_only: bool = False,
    cutoff: Optional[int] = None,
    canonical: bool = False,
    workers: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
    max_examples: int = 3,
    chunk_size: int = CHUNK_SIZE,
) -> SearchSummary:
    """Largest SIA-index over all sets of ``m`` distinct automata on ``n`` states.

    Sets without an SIA product are skipped.  ``extremal_count`` counts
    maximizing sets up to relabeling.  The summary does not depend on
    ``workers`` or ``chunk_size``.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    estimate = universe_estimate(n, m, canonical)
    if estimate > budget:
        raise BudgetExceededError(estimate, budget)
    if cutoff is None:
        cutoff = default_sia_cutoff(n)
    workers = workers or default_workers()
    start = time.perf_counter()
    jobs = ((n, chunk, ic_only, cutoff) for chunk in _set_chunks(n, m, canonical, chunk_size))
    total = _Partial()
    if workers == 1:
        for job in jobs:
            total = total.merge(_process_chunk(job))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_process_chunk, jobs):
                total = total.merge(part)
    if total.max_index < 0:
        # no set has an SIA product (or the universe is empty, e.g. n = 1)
        max_index, classes = 0, []
    else:
        max_index = total.max_index
        if canonical and n > 1:
            classes = sorted(set(total.extremal))
        else:
            classes = sorted({canonical_form(c, n) for c in total.extremal}) if n > 1 else sorted(set(total.extremal))
    examples = [_example(n, c, cutoff) for c in classes[:max_examples]]
    return SearchSummary(
        n=n,
        set_size=m,
        ic_only=ic_only,
        canonical=canonical,
        max_index=max_index,
        extremal_count=len(classes),
        extremal_examples=examples,
        enumerated=total.enumerated,
        sia_sets=total.sia_sets,
        undecided=total.undecided,
        wall_time=time.perf_counter() - start,
    )


def summaries_csv(summaries, include_timing: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for s in summaries:
        writer.writerow(s.csv_row(include_timing))
    return buf.getvalue()


def emit_growth_curve(summaries) -> str:
    """CSV of ``n, max_index, 2n`` for plotting against the linear reference curve."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "max_index", "two_n"])
    for s in summaries:
        writer.writerow([s.n, s.max_index, 2 * s.n])
    return buf.getvalue()


def dump_extremal(summary: SearchSummary, directory: str) -> list[str]:
    """Write each extremal example as a matrix-set JSON file; returns the paths."""
    from .patterns import matrix_set_from_dict

    os.makedirs(directory, exist_ok=True)
    paths = []
    for k, doc in enumerate(summary.extremal_examples):
        s = matrix_set_from_dict(doc)
        path = os.path.join(directory, f"n{summary.n}_m{summary.set_size}_extremal_{k}.json")
        with open(path, "w") as fh:
            fh.write(dumps_matrix_set(s, witness=doc["witness"], sia_index=summary.max_index))
        paths.append(path)
    return paths
