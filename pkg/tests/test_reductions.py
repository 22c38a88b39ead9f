import itertools
import json

import pytest

from siaindex.indices import sia_index
from siaindex.patterns import is_automaton
from siaindex.reductions import (
    CnfFormula,
    InstanceError,
    SetCoverInstance,
    encode_3sat,
    encode_set_cover,
    parse_dimacs,
    parse_set_cover,
    to_dimacs,
)


def test_single_clause_formula():
    s, v = encode_3sat(CnfFormula(1, ((1, 1, 1),)))
    assert (s.n, v, len(s)) == (3, 1, 2)
    assert sia_index(s).value == 1


def test_contradiction_needs_longer_product():
    f = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n")
    assert f.clauses == ((1, 1, 1), (-1, -1, -1))
    s, v = encode_3sat(f)
    assert not f.is_satisfiable()
    assert sia_index(s).value > v


def test_positive_diagonal():
    s, _ = encode_3sat(CnfFormula(2, ((1, -2, 2), (-1, -1, 2))))
    for p in s:
        assert all(p.rows[i] >> i & 1 for i in range(s.n))


def test_3sat_agrees_with_truth_table_v2():
    lits = [1, -1, 2, -2]
    clauses = list(itertools.combinations_with_replacement(lits, 3))
    for c in (1, 2):
        for fs in itertools.combinations(clauses, c):
            f = CnfFormula(2, fs)
            s, v = encode_3sat(f)
            assert (sia_index(s, cutoff=v).value is not None) == f.is_satisfiable()


def test_dimacs_round_trip_and_errors():
    f = CnfFormula(3, ((1, -2, 3), (-1, 2, 2)))
    assert parse_dimacs(to_dimacs(f)) == f
    for text in ("1 2 3 0\n", "p cnf 2 2\n1 2 -1 0\n", "p cnf 2 1\n1 3 2 0\n", "p cnf 2 1\n1 2 x 0\n"):
        with pytest.raises(InstanceError):
            parse_dimacs(text)
    with pytest.raises(InstanceError):
        parse_dimacs("p cnf 2 1\n1 2 0\n", pad=False)


def test_set_cover_small():
    inst = parse_set_cover('{"universe": 2, "sets": [[1], [2]]}')
    s = encode_set_cover(inst)
    assert s.n == 3 and all(is_automaton(p) for p in s)
    assert sia_index(s).value == 2 == inst.min_cover_size()


def test_set_cover_exhaustive_n3():
    subsets = [frozenset(c) for r in range(1, 4) for c in itertools.combinations(range(1, 4), r)]
    checked = 0
    for size in range(1, 5):
        for fam in itertools.combinations(subsets, size):
            try:
                inst = SetCoverInstance(3, fam)
            except InstanceError:
                continue
            assert sia_index(encode_set_cover(inst)).value == inst.min_cover_size()
            checked += 1
    assert checked > 50


@pytest.mark.parametrize(
    "text",
    [
        '{"universe": 3, "sets": [[1, 2]]}',
        '{"universe": 2, "sets": [[1, 5]]}',
        '{"universe": 2, "sets": [[]]}',
        '{"sets": [[1]]}',
        "{",
    ],
)
def test_set_cover_errors(text):
    with pytest.raises(InstanceError):
        parse_set_cover(text)
