"""Zero/nonzero patterns of stochastic matrices and their arithmetic.

A :class:`BooleanPattern` stores one Python ``int`` per row; bit ``j`` of row
``i`` is set when entry ``(i, j)`` is nonzero.  Python integers are unbounded,
so rows wider than 64 columns need no special handling here; the compiled
kernels take the ``uint64`` fast path up to 64 columns.

States, rows and columns are numbered from 0.
"""
from __future__ import annotations

import json
import string
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _cartesian
from typing import Iterable, Sequence

from . import _kernels

SCHEMA_VERSION = "1.0"


class PatternError(ValueError):
    """Raised for malformed or incompatible patterns and matrices."""


class MatrixFormatError(PatternError):
    """Raised when a matrix-set document cannot be parsed."""


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits_of(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class BooleanPattern:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise PatternError("dimension must be at least 1")
        if len(self.rows) != self.n:
            raise PatternError(f"expected {self.n} rows, got {len(self.rows)}")
        limit = 1 << self.n
        for r in self.rows:
            if not 0 <= r < limit:
                raise PatternError(f"row bitset {r!r} out of range for n={self.n}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BooleanPattern":
        """Build from a square 0/1 (or truthy/falsy) nested list."""
        n = len(rows)
        bits = []
        for i, row in enumerate(rows):
            if len(row) != n:
                raise PatternError(f"row {i} has length {len(row)}, expected {n}")
            bits.append(_mask(j for j, v in enumerate(row) if v))
        return cls(n, tuple(bits))

    @classmethod
    def from_supports(cls, supports: Sequence[Iterable[int]]) -> "BooleanPattern":
        """Build from one iterable of nonzero column indices per row."""
        return cls(len(supports), tuple(_mask(s) for s in supports))

    @classmethod
    def from_map(cls, images: Sequence[int]) -> "BooleanPattern":
        """Automaton pattern sending state ``i`` to ``images[i]``."""
        n = len(images)
        return cls(n, tuple(1 << int(j) for j in images))

    @classmethod
    def identity(cls, n: int) -> "BooleanPattern":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, n: int) -> "BooleanPattern":
        full = (1 << n) - 1
        return cls(n, (full,) * n)

    def __getitem__(self, ij: tuple[int, int]) -> bool:
        i, j = ij
        return bool(self.rows[i] >> j & 1)

    def __matmul__(self, other: "BooleanPattern") -> "BooleanPattern":
        return bool_product(self, other)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def transpose(self) -> "BooleanPattern":
        cols = [0] * self.n
        for i, r in enumerate(self.rows):
            for j in bits_of(r):
                cols[j] |= 1 << i
        return BooleanPattern(self.n, tuple(cols))

    def positive_columns(self) -> int:
        """Bitmask of the columns that are nonzero in every row."""
        acc = (1 << self.n) - 1
        for r in self.rows:
            acc &= r
        return acc

    def as_map(self) -> tuple[int, ...]:
        """Image of each state; only defined for automaton patterns."""
        if not is_automaton(self):
            raise PatternError("pattern is not an automaton pattern")
        return tuple(r.bit_length() - 1 for r in self.rows)

    def power(self, e: int) -> "BooleanPattern":
        if e < 0:
            raise PatternError("negative power")
        return BooleanPattern(self.n, _kernels.pattern_power(self.rows, e))

    def __str__(self) -> str:
        return "\n".join("".join("1" if (r >> j) & 1 else "0" for j in range(self.n)) for r in self.rows)


@dataclass(frozen=True)
class StochasticMatrix:
    """Dense nonnegative matrix with unit row sums.

    Entries may be ``Fraction`` (row sums checked exactly) or floats (checked
    to ``tol``).
    """

    entries: tuple[tuple, ...]
    tol: float = field(default=1e-9, compare=False)

    def __post_init__(self):
        n = len(self.entries)
        if n < 1:
            raise PatternError("empty matrix")
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise PatternError(f"row {i} has length {len(row)}, expected {n}")
            if any(v < 0 for v in row):
                raise PatternError(f"row {i} has a negative entry")
            total = sum(row)
            exact = all(isinstance(v, (int, Fraction)) for v in row)
            if (exact and total != 1) or (not exact and abs(total - 1) > self.tol):
                raise PatternError(f"row {i} sums to {total}, not 1")

    @classmethod
    def from_rows(cls, rows, tol: float = 1e-9) -> "StochasticMatrix":
        return cls(tuple(tuple(r) for r in rows), tol)

    @property
    def n(self) -> int:
        return len(self.entries)


def pattern_of(m: StochasticMatrix, zero_tolerance: float = 0) -> BooleanPattern:
    """Zero pattern of ``m``: entry set when it exceeds ``zero_tolerance``."""
    if zero_tolerance < 0:
        raise PatternError("zero_tolerance must be nonnegative")
    rows = []
    for i, row in enumerate(m.entries):
        bits = _mask(j for j, v in enumerate(row) if v > zero_tolerance)
        if not bits:
            raise PatternError(f"row {i} vanishes under tolerance {zero_tolerance}")
        rows.append(bits)
    return BooleanPattern(m.n, tuple(rows))


def uniform_stochastic(p: BooleanPattern) -> StochasticMatrix:
    """Stochastic representative of ``p`` spreading each row's mass evenly."""
    if not is_row_allowable(p):
        raise PatternError("pattern has an all-zero row")
    rows = []
    for r in p.rows:
        w = Fraction(1, r.bit_count())
        rows.append(tuple(w if (r >> j) & 1 else Fraction(0) for j in range(p.n)))
    return StochasticMatrix(tuple(rows))


def bool_product(a: BooleanPattern, b: BooleanPattern) -> BooleanPattern:
    if a.n != b.n:
        raise PatternError(f"dimension mismatch: {a.n} vs {b.n}")
    return BooleanPattern(a.n, _kernels.pattern_product(a.rows, b.rows))


def consequent(p: BooleanPattern, s: Iterable[int]) -> frozenset[int]:
    """Columns reached from the rows in ``s`` (union of those rows)."""
    return frozenset(bits_of(consequent_mask(p, _mask(s))))


def consequent_mask(p: BooleanPattern, s: int) -> int:
    acc = 0
    for i in bits_of(s):
        acc |= p.rows[i]
    return acc


def is_automaton(p: BooleanPattern) -> bool:
    return all(r and not (r & (r - 1)) for r in p.rows)


def is_row_allowable(p: BooleanPattern) -> bool:
    return all(p.rows)


def all_automaton_patterns(n: int):
    """Every automaton pattern of dimension ``n``, in lexicographic map order."""
    for images in _cartesian(range(n), repeat=n):
        yield BooleanPattern.from_map(images)


def default_labels(k: int) -> tuple[str, ...]:
    letters = string.ascii_uppercase
    if k <= len(letters):
        return tuple(letters[:k])
    return tuple(f"A{i + 1}" for i in range(k))


@dataclass(frozen=True)
class MatrixSet:
    """Ordered, labelled, non-empty collection of equal-size patterns.

    The list order is the letter order used for words and Lyndon
    enumeration.
    """

    patterns: tuple[BooleanPattern, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        pats = tuple(self.patterns)
        if not pats:
            raise PatternError("a matrix set needs at least one pattern")
        n = pats[0].n
        if any(p.n != n for p in pats):
            raise PatternError("all patterns in a set must share one dimension")
        labels = tuple(self.labels) or default_labels(len(pats))
        if len(labels) != len(pats):
            raise PatternError("one label per pattern is required")
        if len(set(labels)) != len(labels):
            raise PatternError("labels must be distinct")
        object.__setattr__(self, "patterns", pats)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_maps(cls, maps, labels=()) -> "MatrixSet":
        return cls(tuple(BooleanPattern.from_map(m) for m in maps), tuple(labels))

    @property
    def n(self) -> int:
        return self.patterns[0].n

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def is_automaton_set(self) -> bool:
        return all(is_automaton(p) for p in self.patterns)

    def maps(self):
        """``(k, n)`` integer array of automaton images."""
        import numpy as np

        return np.array([p.as_map() for p in self.patterns], dtype=np.int32)

    def product(self, word: Sequence[int]) -> BooleanPattern:
        """Pattern of ``A[w0] @ A[w1] @ ...``; the empty word gives the identity."""
        acc = BooleanPattern.identity(self.n)
        for letter in word:
            acc = bool_product(acc, self.patterns[letter])
        return acc

    def format_word(self, word: Sequence[int]) -> str:
        sep = "" if all(len(lab) == 1 for lab in self.labels) else " "
        return sep.join(self.labels[i] for i in word)

    def union(self) -> BooleanPattern:
        rows = [0] * self.n
        for p in self.patterns:
            for i, r in enumerate(p.rows):
                rows[i] |= r
        return BooleanPattern(self.n, tuple(rows))


# -- JSON matrix-set documents ----------------------------------------------


def _is_bit(v) -> bool:
    return isinstance(v, bool) or (isinstance(v, int) and v in (0, 1))


def _parse_entry(v, where: str):
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            pass
    raise MatrixFormatError(f"{where}: unsupported entry {v!r}")


def _parse_matrix(raw, n: int, where: str, zero_tolerance: float) -> BooleanPattern:
    if not isinstance(raw, list) or len(raw) != n:
        raise MatrixFormatError(f"{where}: expected {n} rows")
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"{where}, row {i}: expected {n} entries")
    if all(_is_bit(v) for row in raw for v in row):
        p = BooleanPattern.from_rows(raw)
        return p
    entries = [[_parse_entry(v, f"{where}, row {i}") for v in row] for i, row in enumerate(raw)]
    try:
        return pattern_of(StochasticMatrix.from_rows(entries), zero_tolerance)
    except PatternError as exc:
        raise MatrixFormatError(f"{where}: {exc}") from None


def matrix_set_from_dict(doc: dict, zero_tolerance: float = 0) -> MatrixSet:
    if not isinstance(doc, dict):
        raise MatrixFormatError("top level must be a JSON object")
    try:
        matrices = doc["matrices"]
    except KeyError:
        raise MatrixFormatError("missing key 'matrices'") from None
    if not isinstance(matrices, list) or not matrices:
        raise MatrixFormatError("'matrices' must be a non-empty list")
    n = doc.get("n", len(matrices[0]) if isinstance(matrices[0], list) else None)
    if not isinstance(n, int) or n < 1:
        raise MatrixFormatError(f"invalid dimension n={n!r}")
    labels = doc.get("labels") or ()
    pats = tuple(_parse_matrix(m, n, f"matrix {k}", zero_tolerance) for k, m in enumerate(matrices))
    try:
        return MatrixSet(pats, tuple(labels))
    except PatternError as exc:
        raise MatrixFormatError(str(exc)) from None


def matrix_set_to_dict(s: MatrixSet) -> dict:
    return {
        "n": s.n,
        "labels": list(s.labels),
        "matrices": [p.to_lists() for p in s.patterns],
    }


def loads_matrix_set(text: str, zero_tolerance: float = 0) -> MatrixSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return matrix_set_from_dict(doc, zero_tolerance)


def dumps_matrix_set(s: MatrixSet, **extra) -> str:
    """Serialize ``s``; rows are written one per line to keep files diffable."""
    doc = matrix_set_to_dict(s)
    doc.update(extra)
    lines = ["{"]
    lines.append(f'  "n": {doc.pop("n")},')
    lines.append(f'  "labels": {json.dumps(doc.pop("labels"))},')
    mats = doc.pop("matrices")
    lines.append('  "matrices": [')
    for k, m in enumerate(mats):
        lines.append("    [")
        for i, row in enumerate(m):
            comma = "," if i < len(m) - 1 else ""
            lines.append(f"      {json.dumps(row)}{comma}")
        lines.append("    ]" + ("," if k < len(mats) - 1 else ""))
    lines.append("  ]" + ("," if doc else ""))
    items = list(doc.items())
    for i, (key, value) in enumerate(items):
        comma = "," if i < len(items) - 1 else ""
        lines.append(f"  {json.dumps(key)}: {json.dumps(value)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"
