"""Membership tests for the positive-column, scrambling, Sarymsakov and SIA classes.

All tests act on zero patterns only; the numeric values of a stochastic
matrix never change its class.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from . import _kernels
from .patterns import BooleanPattern, PatternError, bits_of, is_row_allowable

SARYMSAKOV_LIMIT = 16


class SizeLimitError(PatternError):
    """The requested check is exponential in ``n`` and ``n`` is over the limit."""


@dataclass(frozen=True)
class ClassReport:
    is_positive_column: bool
    is_scrambling: bool
    is_sarymsakov: bool
    is_sia: bool
    sia_witness_power: Optional[int] = None

    def as_dict(self) -> dict:
        return asdict(self)


def _require_row_allowable(p: BooleanPattern) -> None:
    if not is_row_allowable(p):
        raise PatternError("pattern has an all-zero row (not row-allowable)")


def sia_power_cap(n: int) -> int:
    """Power by which every n x n SIA pattern already has a positive column."""
    return max(1, n * n - 3 * n + 3)


def is_positive_column(p: BooleanPattern) -> bool:
    return p.positive_columns() != 0


def is_scrambling(p: BooleanPattern) -> bool:
    rows = p.rows
    for i in range(p.n):
        ri = rows[i]
        for j in range(i + 1, p.n):
            if not ri & rows[j]:
                return False
    return True


def sarymsakov_violation(p: BooleanPattern, limit: int = SARYMSAKOV_LIMIT):
    """A disjoint pair ``(S, S')`` (as index sets) violating both conditions, or None."""
    if p.n > limit:
        raise SizeLimitError(f"Sarymsakov check is exponential; n={p.n} exceeds limit {limit}")
    hit = _kernels.sarymsakov_violation(p.rows)
    if hit is None:
        return None
    return frozenset(bits_of(hit[0])), frozenset(bits_of(hit[1]))


def is_sarymsakov(p: BooleanPattern, limit: int = SARYMSAKOV_LIMIT) -> bool:
    """Brute force over all pairs of disjoint nonempty row subsets (3**n pairs)."""
    return sarymsakov_violation(p, limit) is None


def smallest_positive_column_power(p: BooleanPattern) -> Optional[int]:
    """Smallest ``t`` with ``p**t`` positive-column, ``None`` when ``p`` is not SIA."""
    _require_row_allowable(p)
    t = _kernels.first_pc_power(p.rows, sia_power_cap(p.n))
    return t or None


def is_sia(p: BooleanPattern) -> tuple[bool, Optional[int]]:
    """SIA membership plus the first power with a positive column.

    The power sequence is walked until a positive column shows up or the
    sequence repeats; the walk never goes past ``max(1, n**2 - 3n + 3)``.
    """
    t = smallest_positive_column_power(p)
    return (t is not None, t)


def eventually_positive_columns(p: BooleanPattern) -> frozenset[int]:
    _require_row_allowable(p)
    return frozenset(bits_of(_kernels.eventual_pc_mask(p.rows)))


def is_primitive(p: BooleanPattern) -> bool:
    full = (1 << p.n) - 1
    q = p.power((p.n - 1) ** 2 + 1)
    return all(r == full for r in q.rows)


def local_exponent(p: BooleanPattern, k: int) -> Optional[int]:
    """Smallest power with at least ``k`` all-ones rows; ``None`` if ``p`` is not primitive."""
    if not 1 <= k <= p.n:
        raise ValueError(f"k must lie in 1..{p.n}")
    if not is_primitive(p):
        return None
    full = (1 << p.n) - 1
    q = p
    t = 1
    while sum(r == full for r in q.rows) < k:
        q = q @ p
        t += 1
    return t


def classify(p: BooleanPattern, sarymsakov_limit: int = SARYMSAKOV_LIMIT) -> ClassReport:
    _require_row_allowable(p)
    sia, power = is_sia(p)
    return ClassReport(
        is_positive_column=is_positive_column(p),
        is_scrambling=is_scrambling(p),
        is_sarymsakov=is_sarymsakov(p, sarymsakov_limit),
        is_sia=sia,
        sia_witness_power=power,
    )
