"""Matrix-set encodings of 3-SAT and set cover, with brute-force oracles.

3-SAT: variables ``1..v`` and clauses ``1..c`` become states; a product of
length ``v`` has its first column positive exactly when its letters pick a
satisfying assignment.  Set cover: a product is SIA exactly when its letters
cover the universe, so the SIA-index is the optimum cover size.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

from .patterns import BooleanPattern, MatrixSet


class InstanceError(ValueError):
    """Malformed 3-SAT or set-cover instance."""


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF formula; literals are signed variable numbers (DIMACS style)."""

    variable_count: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.variable_count < 1:
            raise InstanceError("a formula needs at least one variable")
        if not self.clauses:
            raise InstanceError("a formula needs at least one clause")
        clauses = tuple(tuple(int(lit) for lit in c) for c in self.clauses)
        for j, clause in enumerate(clauses):
            if len(clause) != 3:
                raise InstanceError(f"clause {j + 1} has {len(clause)} literals, expected 3")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise InstanceError(f"clause {j + 1}: literal {lit} outside 1..{self.variable_count}")
        object.__setattr__(self, "clauses", clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def is_satisfiable(self) -> bool:
        """Truth-table check; exponential in the number of variables."""
        return any(
            self.satisfied_by(bits)
            for bits in itertools.product((False, True), repeat=self.variable_count)
        )


def parse_dimacs(text: str, pad: bool = True) -> CnfFormula:
    """Read DIMACS CNF.  With ``pad`` shorter clauses repeat their last literal."""
    declared_vars = None
    declared_clauses = None
    clauses = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InstanceError(f"line {lineno}: bad problem line {line!r}")
            try:
                declared_vars, declared_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise InstanceError(f"line {lineno}: bad problem line {line!r}") from None
            continue
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise InstanceError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if not current:
                    raise InstanceError(f"line {lineno}: empty clause")
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if declared_vars is None:
        raise InstanceError("missing 'p cnf' problem line")
    if declared_clauses is not None and declared_clauses != len(clauses):
        raise InstanceError(f"problem line declares {declared_clauses} clauses, found {len(clauses)}")
    fixed = []
    for j, c in enumerate(clauses):
        if len(c) > 3:
            raise InstanceError(f"clause {j + 1} has {len(c)} literals; only 3-CNF is supported")
        if len(c) < 3:
            if not pad:
                raise InstanceError(f"clause {j + 1} has {len(c)} literals, expected 3")
            c = c + [c[-1]] * (3 - len(c))
        fixed.append(tuple(c))
    return CnfFormula(declared_vars, tuple(fixed))


def to_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.variable_count} {len(f.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def encode_3sat(f: CnfFormula) -> tuple[MatrixSet, int]:
    """Positive-diagonal matrix set with an SIA product of length <= v iff ``f`` is satisfiable.

    Dimension ``1 + v + c``.  State 0 is the sink; state ``i`` stands for
    variable ``i`` and state ``v + j`` for clause ``j``.  The letter for
    literal ``x_i`` (or ``~x_i``) keeps every diagonal entry and adds column-0
    entries in row ``i`` and in the rows of the clauses it satisfies.
    """
    v, c = f.variable_count, len(f.clauses)
    n = 1 + v + c
    patterns = []
    labels = []
    for i in range(1, v + 1):
        for positive in (True, False):
            hit = {i}
            for j, clause in enumerate(f.clauses, start=1):
                if (i if positive else -i) in clause:
                    hit.add(v + j)
            rows = tuple((1 << r) | (1 if r in hit else 0) for r in range(n))
            patterns.append(BooleanPattern(n, rows))
            labels.append(f"x{i}" if positive else f"~x{i}")
    return MatrixSet(tuple(patterns), tuple(labels)), v


@dataclass(frozen=True)
class SetCoverInstance:
    """Universe ``{1..universe_size}`` and a family of subsets covering it."""

    universe_size: int
    family: tuple[frozenset, ...]

    def __post_init__(self):
        n = self.universe_size
        if n < 1:
            raise InstanceError("the universe must be non-empty")
        fam = tuple(frozenset(int(e) for e in t) for t in self.family)
        if not fam:
            raise InstanceError("the family must be non-empty")
        for k, t in enumerate(fam):
            if not t:
                raise InstanceError(f"set {k + 1} is empty")
            if not t <= set(range(1, n + 1)):
                raise InstanceError(f"set {k + 1} has elements outside 1..{n}")
        if frozenset().union(*fam) != frozenset(range(1, n + 1)):
            raise InstanceError("the family does not cover the universe")
        object.__setattr__(self, "family", fam)

    def min_cover_size(self) -> int:
        """Brute-force optimum."""
        universe = frozenset(range(1, self.universe_size + 1))
        for size in range(1, len(self.family) + 1):
            for combo in itertools.combinations(self.family, size):
                if frozenset().union(*combo) == universe:
                    return size
        raise AssertionError("unreachable: the family covers the universe")


def parse_set_cover(text: str) -> SetCoverInstance:
    """Read ``{"universe": n | [1..n], "sets": [[...], ...]}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "universe" not in doc or "sets" not in doc:
        raise InstanceError("expected an object with keys 'universe' and 'sets'")
    universe = doc["universe"]
    if isinstance(universe, list):
        if sorted(universe) != list(range(1, len(universe) + 1)):
            raise InstanceError("universe list must be 1..n")
        universe = len(universe)
    if not isinstance(universe, int):
        raise InstanceError("universe must be an integer or a list 1..n")
    sets = doc["sets"]
    if not isinstance(sets, list) or not all(isinstance(t, list) for t in sets):
        raise InstanceError("'sets' must be a list of lists")
    return SetCoverInstance(universe, tuple(frozenset(t) for t in sets))


def encode_set_cover(inst: SetCoverInstance) -> MatrixSet:
    """One automaton per set ``T`` on states ``1..n+1`` (stored 0-based).

    Elements of ``T`` jump to the sink ``n+1``; everything else, the sink
    included, stays put.
    """
    n = inst.universe_size
    maps = []
    for t in inst.family:
        maps.append([n if (i + 1) in t else i for i in range(n)] + [n])
    labels = [f"T{k + 1}" for k in range(len(maps))]
    return MatrixSet.from_maps(maps, labels)
