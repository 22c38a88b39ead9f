# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; mirrors ``_pykernels`` function for function.

Pattern kernels run on ``uint64`` rows and hand anything wider than 64
columns back to the pure-Python versions.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

from siaindex import _pykernels as _py

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    C_NOT_IC = -2
    C_NOT_SYNCHRONIZING = -1
    C_CUTOFF_REACHED = -3

NOT_IC = C_NOT_IC
NOT_SYNCHRONIZING = C_NOT_SYNCHRONIZING
CUTOFF_REACHED = C_CUTOFF_REACHED

cdef enum:
    MAXN = 64
    MAXLEN = 512


cdef inline void _prod(const uint64_t* a, const uint64_t* b, uint64_t* out, int n) noexcept nogil:
    cdef int i
    cdef uint64_t row, acc
    for i in range(n):
        row = a[i]
        acc = 0
        while row:
            acc |= b[__builtin_ctzll(row)]
            row &= row - 1
        out[i] = acc


cdef inline uint64_t _colmask(const uint64_t* a, int n) noexcept nogil:
    cdef uint64_t acc = <uint64_t>(-1)
    cdef int i
    for i in range(n):
        acc &= a[i]
    return acc


cdef inline bint _equal(const uint64_t* a, const uint64_t* b, int n) noexcept nogil:
    cdef int i
    for i in range(n):
        if a[i] != b[i]:
            return False
    return True


cdef inline void _copy(const uint64_t* src, uint64_t* dst, int n) noexcept nogil:
    cdef int i
    for i in range(n):
        dst[i] = src[i]


cdef int _load(tuple rows, uint64_t* buf) except -1:
    cdef int i
    cdef int n = len(rows)
    for i in range(n):
        buf[i] = <uint64_t>rows[i]
    return n


cdef tuple _store(const uint64_t* buf, int n):
    return tuple([buf[i] for i in range(n)])


def pattern_product(a, b):
    cdef uint64_t ra[MAXN]
    cdef uint64_t rb[MAXN]
    cdef uint64_t ro[MAXN]
    cdef int n = len(a)
    if n > MAXN:
        return _py.pattern_product(a, b)
    _load(tuple(a), ra)
    _load(tuple(b), rb)
    _prod(ra, rb, ro, n)
    return _store(ro, n)


def pattern_power(a, long e):
    cdef uint64_t base[MAXN]
    cdef uint64_t res[MAXN]
    cdef uint64_t tmp[MAXN]
    cdef int n = len(a)
    cdef int i
    if n > MAXN:
        return _py.pattern_power(a, e)
    _load(tuple(a), base)
    for i in range(n):
        res[i] = (<uint64_t>1) << i
    while e:
        if e & 1:
            _prod(res, base, tmp, n)
            _copy(tmp, res, n)
        e >>= 1
        if e:
            _prod(base, base, tmp, n)
            _copy(tmp, base, n)
    return _store(res, n)


def first_pc_power(a, long cap):
    cdef uint64_t p[MAXN]
    cdef uint64_t q[MAXN]
    cdef uint64_t chk[MAXN]
    cdef uint64_t tmp[MAXN]
    cdef int n = len(a)
    cdef long t = 1, lam = 1, span = 1
    cdef bint have_chk = False
    if n > MAXN:
        return _py.first_pc_power(a, cap)
    _load(tuple(a), p)
    _copy(p, q, n)
    with nogil:
        while True:
            if _colmask(q, n):
                break
            if t >= cap:
                t = 0
                break
            if have_chk and _equal(q, chk, n):
                t = 0
                break
            if lam == span:
                _copy(q, chk, n)
                have_chk = True
                span *= 2
                lam = 0
            _prod(q, p, tmp, n)
            _copy(tmp, q, n)
            t += 1
            lam += 1
    return t


def eventual_pc_mask(a):
    cdef uint64_t p[MAXN]
    cdef uint64_t q[MAXN]
    cdef uint64_t chk[MAXN]
    cdef uint64_t tmp[MAXN]
    cdef int n = len(a)
    cdef long lam = 1, span = 1
    cdef bint have_chk = False
    if n > MAXN:
        return _py.eventual_pc_mask(a)
    _load(tuple(a), p)
    _copy(p, q, n)
    with nogil:
        while not (have_chk and _equal(q, chk, n)):
            if lam == span:
                _copy(q, chk, n)
                have_chk = True
                span *= 2
                lam = 0
            _prod(q, p, tmp, n)
            _copy(tmp, q, n)
            lam += 1
    return _colmask(q, n) if n else 0


def sarymsakov_violation(a):
    cdef int n = len(a)
    cdef uint64_t rows[MAXN]
    cdef uint64_t size, mask, low, s, t, comp, fs, ft, full
    cdef uint64_t* cons
    cdef object found = None
    if n > 24:
        return _py.sarymsakov_violation(a)
    _load(tuple(a), rows)
    size = (<uint64_t>1) << n
    full = size - 1
    cons = <uint64_t*>malloc(size * sizeof(uint64_t))
    if cons == NULL:
        raise MemoryError()
    try:
        cons[0] = 0
        for mask in range(1, size):
            low = mask & (~mask + 1)
            cons[mask] = cons[mask ^ low] | rows[__builtin_ctzll(mask)]
        for s in range(1, size):
            fs = cons[s]
            comp = full & ~s
            t = comp
            while t:
                if t > s:
                    ft = cons[t]
                    if (fs & ft) == 0 and __builtin_popcountll(fs | ft) <= __builtin_popcountll(s | t):
                        found = (int(s), int(t))
                        break
                t = (t - 1) & comp
            if found is not None:
                break
    finally:
        free(cons)
    return found


# -- automata --------------------------------------------------------------


cdef inline bint _is_sia_map(const int* g, int n) noexcept nogil:
    cdef uint64_t mask = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t>(-1)
    cdef uint64_t img, m
    while True:
        if (mask & (mask - 1)) == 0:
            return True
        img = 0
        m = mask
        while m:
            img |= (<uint64_t>1) << g[__builtin_ctzll(m)]
            m &= m - 1
        if img == mask:
            return False
        mask = img


cdef bint _synchronizing(const int* maps, int k, int n) noexcept nogil:
    # merged[i*n+j]; fixed point of "some letter sends the pair to a merged pair"
    cdef char merged[MAXN * MAXN]
    cdef int i, j, a, fi, fj
    cdef bint changed = True
    for i in range(n):
        for j in range(n):
            merged[i * n + j] = (i == j)
    while changed:
        changed = False
        for i in range(n):
            for j in range(i + 1, n):
                if merged[i * n + j]:
                    continue
                for a in range(k):
                    fi = maps[a * n + i]
                    fj = maps[a * n + j]
                    if merged[fi * n + fj]:
                        merged[i * n + j] = 1
                        merged[j * n + i] = 1
                        changed = True
                        break
    for i in range(n):
        for j in range(i + 1, n):
            if not merged[i * n + j]:
                return False
    return True


cdef inline uint64_t _reach(const int* maps, int k, int n, int root, uint64_t seen) noexcept nogil:
    # states reachable from root that are not in seen, plus seen itself
    cdef int stack[MAXN]
    cdef int top = 1, a, v, t
    stack[0] = root
    seen |= (<uint64_t>1) << root
    while top:
        top -= 1
        v = stack[top]
        for a in range(k):
            t = maps[a * n + v]
            if not (seen >> t) & 1:
                seen |= (<uint64_t>1) << t
                stack[top] = t
                top += 1
    return seen


cdef bint _is_ic(const int* maps, int k, int n) noexcept nogil:
    # a unique state without in-edges is the only possible root; otherwise
    # the root of the last search tree is
    cdef uint64_t full = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t>(-1)
    cdef uint64_t entered = 0, sources, seen
    cdef int a, i, t, root
    for a in range(k):
        for i in range(n):
            t = maps[a * n + i]
            if t != i:
                entered |= (<uint64_t>1) << t
    sources = full & ~entered
    if sources:
        if sources & (sources - 1):
            return False
        return _reach(maps, k, n, __builtin_ctzll(sources), 0) == full
    seen = _reach(maps, k, n, 0, 0)
    if seen == full:
        return True
    root = 0
    while seen != full:
        root = __builtin_ctzll(~seen & full)
        seen = _reach(maps, k, n, root, seen)
    return _reach(maps, k, n, root, 0) == full


cdef struct LyndonState:
    const int* maps
    int k
    int n
    int length
    int* word
    int* prefix


cdef bint _gen(LyndonState* st, int t, int p) noexcept nogil:
    cdef int n = st.n
    cdef int j, s, start
    cdef const int* f
    cdef int* prev
    cdef int* cur
    if t > st.length:
        return p == st.length and _is_sia_map(st.prefix + st.length * n, n)
    start = st.word[t - p]
    prev = st.prefix + (t - 1) * n
    cur = st.prefix + t * n
    for j in range(start, st.k):
        st.word[t] = j
        f = st.maps + j * n
        for s in range(n):
            cur[s] = f[prev[s]]
        if j == start:
            if _gen(st, t + 1, p):
                return True
        else:
            if _gen(st, t + 1, t):
                return True
    return False


cdef int _sia_index(const int* maps, int k, int n, int cutoff, int* word_out) noexcept nogil:
    cdef int word[MAXLEN + 1]
    cdef int* prefix
    cdef LyndonState st
    cdef int length, s, i
    if cutoff > MAXLEN:
        cutoff = MAXLEN
    prefix = <int*>malloc((cutoff + 1) * n * sizeof(int))
    if prefix == NULL:
        return -9
    for s in range(n):
        prefix[s] = s
    word[0] = 0
    st.maps = maps
    st.k = k
    st.n = n
    st.word = word
    st.prefix = prefix
    for length in range(1, cutoff + 1):
        st.length = length
        if _gen(&st, 1, 1):
            if word_out != NULL:
                for i in range(length):
                    word_out[i] = word[i + 1]
            free(prefix)
            return length
    free(prefix)
    return 0


def _as_maps(maps):
    arr = np.ascontiguousarray(maps, dtype=np.int32)
    if arr.ndim != 2:
        raise ValueError("maps must be a (k, n) array")
    return arr


def auto_is_sia(g):
    cdef const int[::1] arr = np.ascontiguousarray(g, dtype=np.int32)
    cdef int n = arr.shape[0]
    if n > MAXN:
        return _py.auto_is_sia(g)
    return bool(_is_sia_map(&arr[0], n))


def auto_synchronizing(maps):
    cdef const int[:, ::1] arr = _as_maps(maps)
    cdef int k = arr.shape[0], n = arr.shape[1]
    if n > MAXN:
        return _py.auto_synchronizing(maps)
    return bool(_synchronizing(&arr[0, 0], k, n))


def auto_is_ic(maps):
    cdef const int[:, ::1] arr = _as_maps(maps)
    cdef int k = arr.shape[0], n = arr.shape[1]
    if n > MAXN:
        return _py.auto_is_ic(maps)
    return bool(_is_ic(&arr[0, 0], k, n))


def auto_sia_index(maps, int cutoff):
    cdef const int[:, ::1] arr = _as_maps(maps)
    cdef int k = arr.shape[0], n = arr.shape[1]
    cdef int word[MAXLEN]
    cdef int length
    if n > MAXN or cutoff > MAXLEN:
        return _py.auto_sia_index(maps, cutoff)
    with nogil:
        length = _sia_index(&arr[0, 0], k, n, cutoff, word)
    if length < 0:
        raise MemoryError()
    if length == 0:
        return 0, None
    return length, tuple([word[i] for i in range(length)])


def batch_sia_indices(table, sets, bint ic_only, int cutoff):
    cdef const int[:, ::1] tab = np.ascontiguousarray(table, dtype=np.int32)
    cdef const cnp.int64_t[:, ::1] ss = np.ascontiguousarray(sets, dtype=np.int64).reshape(len(sets), -1)
    cdef int n = tab.shape[1]
    cdef Py_ssize_t count = ss.shape[0], idx
    cdef int m = ss.shape[1]
    cdef int a, s, length
    cdef int maps[16 * MAXN]
    out_arr = np.empty(count, dtype=np.int16)
    cdef cnp.int16_t[::1] out = out_arr
    if n > MAXN or m > 16 or cutoff > MAXLEN:
        return _py.batch_sia_indices(table, sets, ic_only, cutoff)
    if count == 0:
        return out_arr
    succ_arr, ent_arr = _succ_tables(table) if ic_only else (np.zeros((1, 1), np.uint64), np.zeros(1, np.uint64))
    cdef const uint64_t[:, ::1] sc = succ_arr
    cdef const uint64_t[::1] en = ent_arr
    cdef const uint64_t* scp = &sc[0, 0]
    cdef const uint64_t* entp = &en[0]
    cdef uint64_t full = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t>(-1)
    with nogil:
        for idx in range(count):
            if n == 1:
                out[idx] = 0
                continue
            if ic_only and not _ic_succ(scp, entp, &ss[idx, 0], m, n, full):
                out[idx] = C_NOT_IC
                continue
            for a in range(m):
                for s in range(n):
                    maps[a * n + s] = tab[ss[idx, a], s]
            if not _synchronizing(maps, m, n):
                out[idx] = C_NOT_SYNCHRONIZING
                continue
            length = _sia_index(maps, m, n, cutoff, NULL)
            out[idx] = length if length > 0 else C_CUTOFF_REACHED
    return out_arr


cdef inline uint64_t _reach_adj(const uint64_t* sc, const cnp.int64_t* codes, int m, int n,
                                uint64_t seen, uint64_t frontier) noexcept nogil:
    # successors of v are read straight from the per-code image bits
    cdef uint64_t new
    cdef int v, a
    seen |= frontier
    while frontier:
        v = __builtin_ctzll(frontier)
        frontier &= frontier - 1
        new = 0
        for a in range(m):
            new |= sc[codes[a] * n + v]
        new &= ~seen
        seen |= new
        frontier |= new
    return seen


cdef inline bint _ic_succ(const uint64_t* sc, const uint64_t* ent, const cnp.int64_t* codes, int m, int n, uint64_t full) noexcept nogil:
    # a unique state without in-edges is the only possible root; otherwise
    # the root of the last search tree is
    cdef uint64_t entered = 0, sources, seen, rest, bit = 1
    cdef int a
    for a in range(m):
        entered |= ent[codes[a]]
    sources = full & ~entered
    if sources:
        return not (sources & (sources - 1)) and _reach_adj(sc, codes, m, n, 0, sources) == full
    seen = _reach_adj(sc, codes, m, n, 0, 1)
    while seen != full:
        rest = ~seen & full
        bit = rest & (~rest + 1)
        seen = _reach_adj(sc, codes, m, n, seen, bit)
    return _reach_adj(sc, codes, m, n, 0, bit) == full


def _succ_tables(table):
    # per code: image bit of each state, and the states entered from another state
    table = np.asarray(table)
    succ = np.left_shift(np.uint64(1), table.astype(np.uint64))
    moved = table != np.arange(table.shape[1])
    entered = np.bitwise_or.reduce(np.where(moved, succ, np.uint64(0)), axis=1)
    return np.ascontiguousarray(succ), np.ascontiguousarray(entered)
