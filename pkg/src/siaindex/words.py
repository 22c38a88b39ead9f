"""Words over a finite ordered alphabet and Lyndon word generation.

Letters are integers ``0..k-1``; their numeric order is the alphabet order.
Tuples of letters compare lexicographically with a proper prefix counting as
smaller, which is exactly Python's tuple ordering.
"""
from __future__ import annotations

from typing import Iterator

Word = tuple[int, ...]


def cyclic_shifts(w: Word) -> list[Word]:
    return [w[i:] + w[:i] for i in range(len(w))]


def is_lyndon(w: Word) -> bool:
    """Nonempty and strictly smaller than each of its proper cyclic shifts."""
    if not w:
        return False
    return all(w < s for s in cyclic_shifts(w)[1:])


def lyndon_words(k: int, max_len: int) -> Iterator[Word]:
    """Lyndon words of length ``<= max_len`` over ``k`` letters, in lexicographic order.

    Duval's successor rule: repeat the current word up to ``max_len``, drop
    trailing maximal letters, bump the last remaining letter.
    """
    if k < 1 or max_len < 1:
        raise ValueError("alphabet size and maximum length must be positive")
    w = [0]
    while w:
        yield tuple(w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
        if w:
            w[-1] += 1


def lyndon_words_of_length(k: int, length: int) -> Iterator[Word]:
    """Lyndon words of exactly ``length`` letters, in lexicographic order.

    Generated by the recursive prenecklace scheme, which walks a prefix tree.
    """
    if k < 1 or length < 1:
        raise ValueError("alphabet size and length must be positive")
    a = [0] * (length + 1)

    def gen(t: int, p: int):
        if t > length:
            if p == length:
                yield tuple(a[1:])
            return
        a[t] = a[t - p]
        yield from gen(t + 1, p)
        for j in range(a[t - p] + 1, k):
            a[t] = j
            yield from gen(t + 1, t)

    yield from gen(1, 1)


def necklace_count(k: int, length: int) -> int:
    """Number of Lyndon words of exactly ``length`` letters (Moebius formula)."""
    total = 0
    for d in range(1, length + 1):
        if length % d == 0:
            total += _moebius(length // d) * k**d
    return total // length


def _moebius(m: int) -> int:
    result = 1
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result
