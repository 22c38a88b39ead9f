"""Pure-Python implementations of the hot kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same results.  Patterns are tuples of row bitsets (bit ``j`` of row
``i`` set when entry ``(i, j)`` is nonzero).  Automata are integer arrays of
shape ``(k, n)`` where ``maps[a, i]`` is the image of state ``i`` under letter
``a``.
"""
from __future__ import annotations

import numpy as np

NOT_IC = -2
NOT_SYNCHRONIZING = -1
CUTOFF_REACHED = -3


# -- boolean patterns ------------------------------------------------------


def pattern_product(a, b):
    out = []
    for row in a:
        acc = 0
        while row:
            low = row & -row
            acc |= b[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return tuple(out)


def pattern_power(a, e):
    n = len(a)
    result = tuple(1 << i for i in range(n))
    base = a
    while e:
        if e & 1:
            result = pattern_product(result, base)
        e >>= 1
        if e:
            base = pattern_product(base, base)
    return result


def _column_mask(rows):
    acc = -1
    for r in rows:
        acc &= r
    return acc if rows else 0


def first_pc_power(a, cap):
    """Smallest ``t <= cap`` with ``a**t`` positive-column, else 0.

    Stops early once the power sequence revisits a pattern, since positive
    columns are monotone in ``t`` for row-allowable patterns.
    """
    q = a
    checkpoint = None
    lam = 1
    span = 1
    t = 1
    while True:
        if _column_mask(q):
            return t
        if t >= cap:
            return 0
        if q == checkpoint:
            return 0
        if lam == span:
            checkpoint = q
            span *= 2
            lam = 0
        q = pattern_product(q, a)
        t += 1
        lam += 1


def eventual_pc_mask(a):
    """Mask of columns positive in every sufficiently large power."""
    q = a
    checkpoint = None
    lam = 1
    span = 1
    while q != checkpoint:
        if lam == span:
            checkpoint = q
            span *= 2
            lam = 0
        q = pattern_product(q, a)
        lam += 1
    return _column_mask(q)


def sarymsakov_violation(a):
    """First disjoint pair ``(S, S')`` breaking both Sarymsakov conditions.

    Returns ``None`` when the pattern is Sarymsakov.  Pairs are scanned with
    ``S < S'`` as bitmasks.
    """
    n = len(a)
    size = 1 << n
    cons = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        cons[mask] = cons[mask ^ low] | a[low.bit_length() - 1]
    full = size - 1
    for s in range(1, size):
        fs = cons[s]
        comp = full & ~s
        t = comp
        while t:
            if t > s:
                ft = cons[t]
                if not (fs & ft) and (fs | ft).bit_count() <= (s | t).bit_count():
                    return (s, t)
            t = (t - 1) & comp
    return None


# -- automata --------------------------------------------------------------


def _is_sia_map(g, n):
    # images of the full state set shrink until they reach the union of cycles
    mask = (1 << n) - 1
    while True:
        if mask & (mask - 1) == 0:
            return True
        img = 0
        m = mask
        while m:
            low = m & -m
            img |= 1 << g[low.bit_length() - 1]
            m ^= low
        if img == mask:
            return False
        mask = img


def auto_is_sia(g):
    return _is_sia_map(list(g), len(g))


def auto_synchronizing(maps):
    maps = [list(map(int, row)) for row in maps]
    n = len(maps[0])
    merged = [[i == j for j in range(n)] for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(i + 1, n):
                if merged[i][j]:
                    continue
                for f in maps:
                    if merged[f[i]][f[j]]:
                        merged[i][j] = merged[j][i] = True
                        changed = True
                        break
    return all(all(row) for row in merged)


def _sia_lyndon_exact(maps, n, k, length):
    word = [0] * (length + 1)
    prefix = [list(range(n))] + [None] * length

    def extend(t, letter):
        f = maps[letter]
        prev = prefix[t - 1]
        prefix[t] = [f[s] for s in prev]

    def gen(t, p):
        if t > length:
            if p == length and _is_sia_map(prefix[length], n):
                return tuple(word[1:])
            return None
        start = word[t - p]
        word[t] = start
        extend(t, start)
        hit = gen(t + 1, p)
        if hit is not None:
            return hit
        for j in range(start + 1, k):
            word[t] = j
            extend(t, j)
            hit = gen(t + 1, t)
            if hit is not None:
                return hit
        return None

    return gen(1, 1)


def auto_sia_index(maps, cutoff):
    """Shortest Lyndon word whose product is SIA, as ``(length, word)``.

    Returns ``(0, None)`` when nothing is found up to ``cutoff``.
    """
    maps = [list(map(int, row)) for row in maps]
    k = len(maps)
    n = len(maps[0])
    for length in range(1, cutoff + 1):
        hit = _sia_lyndon_exact(maps, n, k, length)
        if hit is not None:
            return length, hit
    return 0, None


def _closure(adj, start, allowed):
    reach = frontier = start
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= adj[low.bit_length() - 1]
            m ^= low
        frontier = nxt & allowed & ~reach
        reach |= frontier
    return reach


def _is_ic_adj(adj, n):
    # a unique vertex without in-edges is the only possible root; otherwise
    # the root of the last search tree is
    entered = 0
    for i in range(n):
        entered |= adj[i] & ~(1 << i)
    full = (1 << n) - 1
    sources = full & ~entered
    if sources:
        return not sources & (sources - 1) and _closure(adj, sources, full) == full
    seen = _closure(adj, 1, full)
    bit = 1
    while seen != full:
        rest = ~seen & full
        bit = rest & -rest
        seen |= _closure(adj, bit, rest)
    return _closure(adj, bit, full) == full


def _is_ic(maps, n):
    adj = [0] * n
    for f in maps:
        for i in range(n):
            adj[i] |= 1 << f[i]
    return _is_ic_adj(adj, n)


def auto_is_ic(maps):
    maps = [list(map(int, row)) for row in maps]
    return _is_ic(maps, len(maps[0]))


def batch_sia_indices(table, sets, ic_only, cutoff):
    """SIA-index of every set of automata in ``sets`` (rows index ``table``).

    Codes: ``-2`` filtered as not initially connected, ``-1`` no SIA product,
    ``-3`` none found within ``cutoff``.
    """
    table = np.asarray(table)
    sets = np.asarray(sets)
    n = table.shape[1]
    out = np.empty(len(sets), dtype=np.int16)
    rows = [list(map(int, r)) for r in table]
    for idx, members in enumerate(sets):
        maps = [rows[int(c)] for c in members]
        if n == 1:
            out[idx] = 0
            continue
        if ic_only and not _is_ic(maps, n):
            out[idx] = NOT_IC
            continue
        if not auto_synchronizing(maps):
            out[idx] = NOT_SYNCHRONIZING
            continue
        length, _ = auto_sia_index(maps, cutoff)
        out[idx] = length if length else CUTOFF_REACHED
    return out
