"""Shortest products of a matrix set lying in a given class.

Words are tuples of letter indices into the set; the word ``(w0, w1, ...)``
stands for the product ``A[w0] @ A[w1] @ ...``.  For automaton sets this is
"apply ``A[w0]`` first", the usual convention for synchronizing words.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

from . import _kernels
from .classes import (
    SARYMSAKOV_LIMIT,
    is_positive_column,
    is_sarymsakov,
    is_scrambling,
    sia_power_cap,
)
from .patterns import BooleanPattern, MatrixSet, PatternError, bits_of, is_row_allowable
from .words import Word


class ClassTag(str, enum.Enum):
    PC = "PC"
    SCR = "SCR"
    SAR = "SAR"
    SIA = "SIA"


@dataclass(frozen=True)
class IndexResult:
    """Outcome of an index computation.

    ``exists`` is ``False`` when no product of any length lies in the class,
    ``True`` when one is known to exist, ``None`` when the search stopped at
    its cutoff without deciding.
    """

    class_tag: ClassTag
    value: Optional[int]
    witness: Optional[Word]
    explored_up_to: int
    exists: Optional[bool] = None

    @property
    def status(self) -> str:
        if self.value is not None:
            return "found"
        if self.exists is False:
            return "none"
        return "cutoff"

    def to_dict(self, s: Optional[MatrixSet] = None) -> dict:
        out = {
            "class": self.class_tag.value,
            "value": self.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "explored_up_to": self.explored_up_to,
            "status": self.status,
        }
        if s is not None and self.witness is not None:
            out["witness_word"] = s.format_word(self.witness)
        return out


def _check_set(s: MatrixSet) -> None:
    for k, p in enumerate(s.patterns):
        if not is_row_allowable(p):
            raise PatternError(f"pattern {s.labels[k]} has an all-zero row")


def default_sia_cutoff(n: int) -> int:
    return max(1, (n**3 - n) // 6)


def default_bfs_cutoff(n: int) -> int:
    return (2**n) * n


# -- existence -------------------------------------------------------------


def _mergeable_all_pairs(s: MatrixSet) -> bool:
    # merged[i] is the bitmask of states j for which some word can send i and
    # j to a common state, letting each letter pick any support entry per row
    n = s.n
    merged = [1 << i for i in range(n)]
    rows = [p.rows for p in s.patterns]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(i + 1, n):
                if merged[i] >> j & 1:
                    continue
                for r in rows:
                    if any(merged[a] & r[j] for a in bits_of(r[i])):
                        merged[i] |= 1 << j
                        merged[j] |= 1 << i
                        changed = True
                        break
    full = (1 << n) - 1
    return all(m == full for m in merged)


def _reachable_patterns_has_pc(s: MatrixSet) -> bool:
    frontier = list(dict.fromkeys(s.patterns))
    seen = set(frontier)
    while frontier:
        nxt = []
        for q in frontier:
            if is_positive_column(q):
                return True
            for a in s.patterns:
                r = q @ a
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return False


def exists_sia_product(s: MatrixSet, method: str = "auto") -> bool:
    """Whether some finite product of ``s`` is SIA.

    ``method``:
      * ``"merge"``: every pair of states can be merged.  For automaton sets
        this is the classical synchronizability test; for general sets each
        letter may route a row through any of its support entries, which
        amounts to the test on all automata dominated by the set.
      * ``"patterns"``: breadth-first closure of the product patterns,
        stopping at the first positive-column pattern.  Exact but
        exponential in the worst case.
      * ``"auto"``: ``"merge"`` for automaton sets, ``"patterns"`` otherwise.
    """
    _check_set(s)
    if s.n == 1:
        return True
    if method == "auto":
        method = "merge" if s.is_automaton_set() else "patterns"
    if method == "merge":
        if s.is_automaton_set():
            return bool(_kernels.auto_synchronizing(s.maps()))
        return _mergeable_all_pairs(s)
    if method == "patterns":
        return _reachable_patterns_has_pc(s)
    raise ValueError(f"unknown method {method!r}")


# -- breadth-first class indices -------------------------------------------


def class_predicate(tag: ClassTag, sarymsakov_limit: int = SARYMSAKOV_LIMIT) -> Callable[[BooleanPattern], bool]:
    tag = ClassTag(tag)
    if tag is ClassTag.PC:
        return is_positive_column
    if tag is ClassTag.SCR:
        return is_scrambling
    if tag is ClassTag.SAR:
        return lambda p: is_sarymsakov(p, sarymsakov_limit)
    cap = None

    def _sia(p: BooleanPattern) -> bool:
        nonlocal cap
        if cap is None:
            cap = sia_power_cap(p.n)
        return _kernels.first_pc_power(p.rows, cap) > 0

    return _sia


def _subset_bfs(s: MatrixSet, tag: ClassTag, cutoff: int) -> IndexResult:
    # automaton sets: a product is positive-column iff it maps all states to one
    maps = [p.as_map() for p in s.patterns]
    full = (1 << s.n) - 1
    seen = {full}
    layer = [(full, ())]
    for length in range(1, cutoff + 1):
        nxt = []
        for mask, word in layer:
            states = bits_of(mask)
            for a, f in enumerate(maps):
                img = 0
                for q in states:
                    img |= 1 << f[q]
                if img in seen:
                    continue
                w = word + (a,)
                if img & (img - 1) == 0:
                    return IndexResult(tag, length, w, length, True)
                seen.add(img)
                nxt.append((img, w))
        if not nxt:
            return IndexResult(tag, None, None, length, False)
        layer = nxt
    return IndexResult(tag, None, None, cutoff, None)


def _pattern_bfs(s: MatrixSet, tag: ClassTag, cutoff: int, sarymsakov_limit: int) -> IndexResult:
    pred = class_predicate(tag, sarymsakov_limit)
    seen = set()
    layer = []
    for a, p in enumerate(s.patterns):
        if p in seen:
            continue
        if pred(p):
            return IndexResult(tag, 1, (a,), 1, True)
        seen.add(p)
        layer.append((p, (a,)))
    for length in range(2, cutoff + 1):
        nxt = []
        for q, word in layer:
            for a, p in enumerate(s.patterns):
                r = q @ p
                if r in seen:
                    continue
                w = word + (a,)
                if pred(r):
                    return IndexResult(tag, length, w, length, True)
                seen.add(r)
                nxt.append((r, w))
        if not nxt:
            return IndexResult(tag, None, None, length, False)
        layer = nxt
    return IndexResult(tag, None, None, cutoff, None)


def class_index_bfs(
    s: MatrixSet,
    class_tag: ClassTag | str,
    cutoff: Optional[int] = None,
    sarymsakov_limit: int = SARYMSAKOV_LIMIT,
    method: str = "auto",
) -> IndexResult:
    """Shortest product in the class by breadth-first search over product patterns.

    Patterns are deduplicated; each keeps the lexicographically smallest word
    of its first length.  ``method="subsets"`` (default for automaton sets and
    PC/SCR/SAR, where the three classes coincide) searches images of the
    state set instead; ``method="patterns"`` forces the general search.
    """
    tag = ClassTag(class_tag)
    _check_set(s)
    if cutoff is None:
        cutoff = default_bfs_cutoff(s.n)
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    if s.n == 1:
        return IndexResult(tag, 0, (), 0, True)
    if method == "auto":
        use_subsets = tag is not ClassTag.SIA and s.is_automaton_set()
    elif method in ("subsets", "patterns"):
        use_subsets = method == "subsets"
        if use_subsets and (tag is ClassTag.SIA or not s.is_automaton_set()):
            raise ValueError("subset search needs an automaton set and a PC/SCR/SAR class")
    else:
        raise ValueError(f"unknown method {method!r}")
    if use_subsets:
        return _subset_bfs(s, tag, cutoff)
    return _pattern_bfs(s, tag, cutoff, sarymsakov_limit)


def pc_index(s: MatrixSet, cutoff: Optional[int] = None, **kw) -> IndexResult:
    return class_index_bfs(s, ClassTag.PC, cutoff, **kw)


def scr_index(s: MatrixSet, cutoff: Optional[int] = None, **kw) -> IndexResult:
    return class_index_bfs(s, ClassTag.SCR, cutoff, **kw)


def sar_index(s: MatrixSet, cutoff: Optional[int] = None, **kw) -> IndexResult:
    return class_index_bfs(s, ClassTag.SAR, cutoff, **kw)


# -- SIA index ---------------------------------------------------------------


def _general_sia_lyndon(s: MatrixSet, length: int) -> Optional[Word]:
    k = len(s)
    rows = [p.rows for p in s.patterns]
    cap = sia_power_cap(s.n)
    word = [0] * (length + 1)
    prefix: list = [tuple(1 << i for i in range(s.n))] + [None] * length
    product = _kernels.pattern_product
    first_pc = _kernels.first_pc_power

    def gen(t: int, p: int):
        if t > length:
            if p == length and first_pc(prefix[length], cap):
                return tuple(word[1:])
            return None
        start = word[t - p]
        for j in range(start, k):
            word[t] = j
            prefix[t] = product(prefix[t - 1], rows[j])
            hit = gen(t + 1, p if j == start else t)
            if hit is not None:
                return hit
        return None

    return gen(1, 1)


def sia_index(s: MatrixSet, cutoff: Optional[int] = None) -> IndexResult:
    """Shortest SIA product, searched over Lyndon words only.

    A shortest SIA product can always be rotated into a Lyndon word, so
    lengths are tried in increasing order and, within a length, Lyndon words
    in lexicographic order.  Sets with no SIA product at all are detected up
    front.  The default cutoff ``(n**3 - n) / 6`` bounds the index of every
    SIA set.
    """
    _check_set(s)
    if s.n == 1:
        return IndexResult(ClassTag.SIA, 0, (), 0, True)
    if not exists_sia_product(s):
        return IndexResult(ClassTag.SIA, None, None, 0, False)
    if cutoff is None:
        cutoff = default_sia_cutoff(s.n)
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    if s.is_automaton_set():
        length, word = _kernels.auto_sia_index(s.maps(), cutoff)
        if length:
            return IndexResult(ClassTag.SIA, length, word, length, True)
        return IndexResult(ClassTag.SIA, None, None, cutoff, True)
    for length in range(1, cutoff + 1):
        word = _general_sia_lyndon(s, length)
        if word is not None:
            return IndexResult(ClassTag.SIA, length, word, length, True)
    return IndexResult(ClassTag.SIA, None, None, cutoff, True)


def naive_sia_index(s: MatrixSet, cutoff: Optional[int] = None) -> IndexResult:
    """Shortest SIA product by trying every word, shortest and smallest first.

    No Lyndon restriction and no existence pre-check; meant as a reference
    for :func:`sia_index`.
    """
    _check_set(s)
    if s.n == 1:
        return IndexResult(ClassTag.SIA, 0, (), 0, True)
    if cutoff is None:
        cutoff = default_sia_cutoff(s.n)
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    sia = class_predicate(ClassTag.SIA)
    layer: list[tuple[Word, BooleanPattern]] = [((), BooleanPattern.identity(s.n))]
    for length in range(1, cutoff + 1):
        nxt = []
        for word, q in layer:
            for a, p in enumerate(s.patterns):
                r = q @ p
                w = word + (a,)
                if sia(r):
                    return IndexResult(ClassTag.SIA, length, w, length, True)
                nxt.append((w, r))
        layer = nxt
    return IndexResult(ClassTag.SIA, None, None, cutoff, None)


def all_indices(s: MatrixSet, sia_cutoff: Optional[int] = None, bfs_cutoff: Optional[int] = None) -> dict[ClassTag, IndexResult]:
    out = {ClassTag.SIA: sia_index(s, sia_cutoff)}
    for tag in (ClassTag.SAR, ClassTag.SCR, ClassTag.PC):
        out[tag] = class_index_bfs(s, tag, bfs_cutoff)
    return out
