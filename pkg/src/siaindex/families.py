"""Named matrix families with known indices, and the initially-connected test."""
from __future__ import annotations

from .patterns import BooleanPattern, MatrixSet, bits_of


def cerny_set(n: int) -> MatrixSet:
    """Cerny automaton: ``A`` is the cycle ``i -> i+1 (mod n)``, ``B`` merges 0 into 1.

    SIA-index ``n`` and positive-column index ``(n-1)**2``.
    """
    if n < 2:
        raise ValueError("the Cerny set needs n >= 2")
    a = [(i + 1) % n for i in range(n)]
    b = [1] + list(range(1, n))
    return MatrixSet.from_maps([a, b], ("A", "B"))


def wielandt_set(n: int) -> MatrixSet:
    """Two colourings of the Wielandt digraph.

    Both letters shift ``i -> i+1`` for ``i < n-1``; the last state goes to
    state 1 under ``A`` and to state 0 under ``B``.
    """
    if n < 3:
        raise ValueError("the Wielandt set needs n >= 3")
    shift = list(range(1, n))
    return MatrixSet.from_maps([shift + [1], shift + [0]], ("A", "B"))


def wielandt_matrix(n: int) -> BooleanPattern:
    """The n-cycle plus the chord ``n-1 -> 1``; primitive with exponent ``n**2 - 2n + 2``."""
    if n < 2:
        raise ValueError("the Wielandt matrix needs n >= 2")
    supports = [[i + 1] for i in range(n - 1)] + [[0, 1]]
    return BooleanPattern.from_supports(supports)


def line_automaton(n: int) -> BooleanPattern:
    """State 0 loops, every other state ``i`` steps to ``i-1``.

    SIA, and its first power with a positive column is exactly ``n - 1``.
    """
    if n < 2:
        raise ValueError("the line automaton needs n >= 2")
    return BooleanPattern.from_map([0] + list(range(n - 1)))


FAMILIES = {
    "cerny": cerny_set,
    "wielandt": wielandt_set,
    "line": lambda n: MatrixSet((line_automaton(n),), ("A",)),
}


def family(name: str, n: int) -> MatrixSet:
    try:
        build = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return build(n)


def _reach(adj: list[int], start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for q in bits_of(frontier):
            nxt |= adj[q]
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def is_initially_connected(s: MatrixSet) -> bool:
    """Some state reaches every state in the union digraph of the set."""
    adj = list(s.union().rows)
    full = (1 << s.n) - 1
    return any(_reach(adj, q) == full for q in range(s.n))


def is_strongly_connected(s: MatrixSet) -> bool:
    adj = list(s.union().rows)
    full = (1 << s.n) - 1
    return all(_reach(adj, q) == full for q in range(s.n))
