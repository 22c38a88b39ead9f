"""Seeded random patterns and the randomized property experiments built on them."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .classes import (
    eventually_positive_columns,
    is_positive_column,
    is_primitive,
    is_sarymsakov,
    is_scrambling,
    is_sia,
    local_exponent,
)
from .patterns import BooleanPattern

DEFAULT_SEED = 20240601


def random_patterns(n: int, count: int, rng: np.random.Generator, density=(0.05, 0.6)) -> list[BooleanPattern]:
    """Row-allowable patterns whose density is itself drawn per pattern.

    Mixing sparse and dense patterns spreads samples over all four classes;
    an all-zero row gets one random entry.
    """
    if n > 62:
        raise ValueError("random patterns are limited to n <= 62")
    lo, hi = density
    dens = rng.uniform(lo, hi, size=(count, 1, 1))
    bits = rng.random((count, n, n)) < dens
    empty = ~bits.any(axis=2)
    if empty.any():
        idx = np.nonzero(empty)
        cols = rng.integers(0, n, size=len(idx[0]))
        bits[idx[0], idx[1], cols] = True
    weights = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
    rows = (bits.astype(np.int64) * weights).sum(axis=2)
    return [BooleanPattern(n, tuple(int(r) for r in row)) for row in rows.tolist()]


def random_automaton_maps(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, n, size=(m, n), dtype=np.int32)


@dataclass
class Tally:
    samples: int = 0
    violations: int = 0
    counts: dict = field(default_factory=dict)
    examples: list = field(default_factory=list)

    def bump(self, key: str, by: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + by

    def violate(self, what: str, p: BooleanPattern) -> None:
        self.violations += 1
        if len(self.examples) < 5:
            self.examples.append((what, p.rows))


def check_inclusion_chain(n: int, samples: int, seed: int = DEFAULT_SEED) -> Tally:
    """positive-column => scrambling => Sarymsakov => SIA on random patterns."""
    rng = np.random.default_rng([seed, n, 1])
    tally = Tally()
    for p in random_patterns(n, samples, rng):
        pc = is_positive_column(p)
        scr = is_scrambling(p)
        sar = is_sarymsakov(p)
        sia = is_sia(p)[0]
        tally.samples += 1
        for name, flag in (("pc", pc), ("scr", scr), ("sar", sar), ("sia", sia)):
            tally.bump(name, int(flag))
        if (pc and not scr) or (scr and not sar) or (sar and not sia):
            tally.violate("chain", p)
    return tally


def check_scrambling_closure(n: int, samples: int, seed: int = DEFAULT_SEED) -> Tally:
    """Products of two scrambling patterns are scrambling."""
    rng = np.random.default_rng([seed, n, 2])
    tally = Tally()
    pool: list[BooleanPattern] = []
    while tally.samples < samples:
        pool.extend(p for p in random_patterns(n, 4 * samples, rng, density=(0.3, 0.8)) if is_scrambling(p))
        while len(pool) >= 2 and tally.samples < samples:
            a, b = pool.pop(), pool.pop()
            tally.samples += 1
            if not is_scrambling(a @ b):
                tally.violate("closure", a)
    return tally


def random_sia_patterns(n: int, count: int, rng: np.random.Generator) -> list[BooleanPattern]:
    out: list[BooleanPattern] = []
    while len(out) < count:
        out.extend(p for p in random_patterns(n, count, rng, density=(0.02, 0.45)) if is_sia(p)[0])
    return out[:count]


def check_power_bounds(n: int, samples: int, seed: int = DEFAULT_SEED) -> Tally:
    """For SIA patterns with k eventually positive columns, powers
    ``k**2 - 4k + 3 + n`` and ``n**2 - 3n + 3`` are positive-column."""
    rng = np.random.default_rng([seed, n, 3])
    tally = Tally()
    corollary = n * n - 3 * n + 3
    for p in random_sia_patterns(n, samples, rng):
        k = len(eventually_positive_columns(p))
        tally.samples += 1
        tally.bump(f"k={k}")
        if not is_positive_column(p.power(k * k - 4 * k + 3 + n)):
            tally.violate("eventual-columns bound", p)
        if not is_positive_column(p.power(corollary)):
            tally.violate("quadratic bound", p)
    return tally


def random_primitive_patterns(n: int, count: int, rng: np.random.Generator) -> list[BooleanPattern]:
    out: list[BooleanPattern] = []
    while len(out) < count:
        out.extend(p for p in random_patterns(n, count, rng, density=(0.02, 0.4)) if is_primitive(p))
    return out[:count]


def check_local_exponents(n: int, samples: int, seed: int = DEFAULT_SEED) -> Tally:
    """``local_exponent(p, k) <= n**2 - 3n + k + 2`` for primitive ``p`` and every k."""
    rng = np.random.default_rng([seed, n, 4])
    tally = Tally()
    for p in random_primitive_patterns(n, samples, rng):
        tally.samples += 1
        for k in range(1, n + 1):
            e = local_exponent(p, k)
            if e is None or e > n * n - 3 * n + k + 2:
                tally.violate(f"k={k}", p)
    return tally


def check_kernel_agreement(n: int, samples: int, seed: int = DEFAULT_SEED) -> Tally:
    """Compiled and pure-Python kernels give identical answers on random input."""
    rng = np.random.default_rng([seed, n, 5])
    tally = Tally()
    if "cython" not in _kernels.BACKENDS:
        return tally
    py, cy = _kernels.get_backend("python"), _kernels.get_backend("cython")
    pats = random_patterns(n, samples, rng)
    for a, b in zip(pats, pats[1:] + pats[:1]):
        tally.samples += 1
        cap = max(1, n * n - 3 * n + 3)
        pairs = [
            (py.pattern_product(a.rows, b.rows), cy.pattern_product(a.rows, b.rows)),
            (py.first_pc_power(a.rows, cap), cy.first_pc_power(a.rows, cap)),
            (py.eventual_pc_mask(a.rows), cy.eventual_pc_mask(a.rows)),
            (py.sarymsakov_violation(a.rows), cy.sarymsakov_violation(a.rows)),
            (py.pattern_power(a.rows, 7), cy.pattern_power(a.rows, 7)),
        ]
        if any(x != y for x, y in pairs):
            tally.violate("pattern kernels", a)
    return tally
