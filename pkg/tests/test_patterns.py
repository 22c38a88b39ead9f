import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_product, random_pattern
from siaindex.patterns import (
    BooleanPattern,
    MatrixFormatError,
    MatrixSet,
    PatternError,
    StochasticMatrix,
    all_automaton_patterns,
    consequent,
    dumps_matrix_set,
    is_automaton,
    loads_matrix_set,
    matrix_set_to_dict,
    pattern_of,
)


def patterns(max_n=8):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        rows = [draw(st.integers(1, 2**n - 1)) for _ in range(n)]
        return BooleanPattern(n, tuple(rows))

    return build()


def test_product_matches_triple_loop(rng):
    for _ in range(10_000):
        n = rng.randint(1, 12)
        a, b = random_pattern(rng, n, rng.random()), random_pattern(rng, n, rng.random())
        assert a @ b == naive_product(a, b)


@given(st.data())
@settings(max_examples=200, deadline=None)
def test_product_associative(data):
    n = data.draw(st.integers(1, 7))
    row = st.integers(1, 2**n - 1)
    a, b, c = (BooleanPattern(n, tuple(data.draw(row) for _ in range(n))) for _ in range(3))
    assert (a @ b) @ c == a @ (b @ c)


@given(patterns())
@settings(max_examples=200, deadline=None)
def test_identity_and_transpose(p):
    ident = BooleanPattern.identity(p.n)
    assert p @ ident == p == ident @ p
    assert p.transpose().transpose() == p


@given(st.data())
@settings(max_examples=200, deadline=None)
def test_consequent_of_union_is_union(data):
    p = data.draw(patterns())
    s1 = data.draw(st.frozensets(st.integers(0, p.n - 1)))
    s2 = data.draw(st.frozensets(st.integers(0, p.n - 1)))
    assert consequent(p, s1 | s2) == consequent(p, s1) | consequent(p, s2)
    assert consequent(p, ()) == frozenset()


def test_consequent_composes_with_product(rng):
    for _ in range(500):
        n = rng.randint(1, 7)
        a, b = random_pattern(rng, n), random_pattern(rng, n)
        s = {i for i in range(n) if rng.random() < 0.5}
        assert consequent(a @ b, s) == consequent(b, consequent(a, s))


def test_pattern_of_exact_and_tolerance():
    m = StochasticMatrix.from_rows([[Fraction(1, 2), Fraction(1, 2)], [0, 1]])
    assert pattern_of(m) == BooleanPattern.from_rows([[1, 1], [0, 1]])
    m = StochasticMatrix.from_rows([[0.999999, 1e-6], [0.0, 1.0]])
    assert pattern_of(m) == BooleanPattern.from_rows([[1, 1], [0, 1]])
    assert pattern_of(m, zero_tolerance=1e-3) == BooleanPattern.from_rows([[1, 0], [0, 1]])


@pytest.mark.parametrize(
    "rows",
    [
        [[0.5, 0.6], [0, 1]],
        [[-0.1, 1.1], [0, 1]],
        [[1, 0]],
    ],
)
def test_stochastic_matrix_rejects(rows):
    with pytest.raises(PatternError):
        StochasticMatrix.from_rows(rows)


def test_pattern_of_rejects_zero_row_after_tolerance():
    m = StochasticMatrix.from_rows([[0.5, 0.5], [0.0, 1.0]])
    with pytest.raises(PatternError):
        pattern_of(m, zero_tolerance=0.6)


def test_automaton_patterns_count():
    for n in range(1, 5):
        pats = list(all_automaton_patterns(n))
        assert len(pats) == n**n
        assert all(is_automaton(p) for p in pats)


def test_from_map_and_product_of_maps():
    f = BooleanPattern.from_map([1, 2, 0])
    g = BooleanPattern.from_map([0, 0, 2])
    # apply f first, then g
    assert (f @ g).as_map() == (0, 2, 0)


def test_json_round_trip():
    s = MatrixSet.from_maps([[1, 2, 0], [0, 0, 2]], ["A", "B"])
    text = dumps_matrix_set(s)
    assert loads_matrix_set(text) == s
    doc = json.loads(text)
    assert doc["n"] == 3 and doc["labels"] == ["A", "B"]
    assert matrix_set_to_dict(s)["matrices"][0] == [[0, 1, 0], [0, 0, 1], [1, 0, 0]]


def test_json_accepts_stochastic_entries():
    text = json.dumps({"n": 2, "matrices": [[["1/2", "1/2"], [0, 1]], [[0.25, 0.75], [1, 0]]]})
    s = loads_matrix_set(text)
    assert s.patterns[0] == BooleanPattern.from_rows([[1, 1], [0, 1]])
    assert s.labels == ("A", "B")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"n": 2, "matrices": [[[1, 0], [0, 1]]', "line 1"),
        ('{"n": 2, "matrices": [[[1, 0, 0], [0, 1]]]}', "matrix"),
        ('{"n": 2, "matrices": []}', "matri"),
        ('{"n": 2, "matrices": [[[1, 0], [0, 1]]], "labels": ["A", "A"]}', "label"),
        ('{"n": 2, "matrices": [[["x", 1], [0, 1]]]}', "entry"),
    ],
)
def test_json_errors(text, fragment):
    with pytest.raises(MatrixFormatError) as exc:
        loads_matrix_set(text)
    assert fragment in str(exc.value).lower()


def test_set_rejects_mixed_dimensions():
    with pytest.raises(PatternError):
        MatrixSet((BooleanPattern.identity(2), BooleanPattern.identity(3)))


def test_zero_row_pattern_loads_but_is_not_row_allowable():
    from siaindex.classes import is_sia
    from siaindex.patterns import is_row_allowable

    s = loads_matrix_set('{"n": 2, "matrices": [[[0, 0], [0, 1]]]}')
    assert not is_row_allowable(s.patterns[0])
    with pytest.raises(PatternError):
        is_sia(s.patterns[0])
