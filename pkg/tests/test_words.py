from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from skewring.errors import PreconditionError
from skewring.words import (compare_lex, disjointify, format_word, parse_word, word_key, words_of_degree,
                            words_up_to)

X, Y = 0, 1


def test_degree_comes_first():
    assert compare_lex((Y,), (X, X)) == -1


def test_first_differing_letter_decides():
    assert compare_lex((X, Y), (Y, X)) == -1
    assert compare_lex((Y, X), (X, Y)) == 1


def test_equal_words():
    w = (X, Y, Y)
    assert compare_lex(w, w) == 0


@pytest.mark.parametrize("s", [2, 3])
def test_total_order_exhaustive(s):
    words = words_up_to(s, 3)
    for u, v in itertools.product(words, repeat=2):
        c = compare_lex(u, v)
        assert c == -compare_lex(v, u)
        assert (c == 0) == (u == v)
        assert (c < 0) == (word_key(u) < word_key(v))
    for u, v, w in itertools.product(words_up_to(s, 2), repeat=3):
        if compare_lex(u, v) < 0 and compare_lex(v, w) < 0:
            assert compare_lex(u, w) < 0


def test_monoid_compatibility():
    words = words_up_to(2, 3)
    for u, v in itertools.product(words, repeat=2):
        if len(u) != len(v) or compare_lex(u, v) >= 0:
            continue
        for w in words_up_to(2, 2):
            assert compare_lex(u + w, v + w) == -1
            assert compare_lex(w + u, w + v) == -1


def test_words_of_degree_are_increasing():
    ws = words_of_degree(3, 3)
    assert len(ws) == 27
    assert all(compare_lex(a, b) == -1 for a, b in zip(ws, ws[1:]))


def test_serialization():
    names = ["x", "y"]
    assert format_word((), names) == "1"
    assert format_word((0, 1, 0), names) == "xyx"
    assert parse_word("xyx", names) == (0, 1, 0)
    long = ["x1", "x2"]
    assert format_word((0, 1), long) == "x1·x2"
    assert parse_word("x1·x2", long) == (0, 1)
    with pytest.raises(ValueError):
        parse_word("xz", names)


def test_disjointify_worked_example():
    t, nus = disjointify([{(X, X), (X, Y)}, {(X,)}], 2)
    assert t == 4
    assert nus == [(X, X), (X, X, Y)]
    assert {u + nus[0] for u in [(X, X), (X, Y)]} == {(X, X, X, X), (X, Y, X, X)}
    assert {(X,) + nus[1]} == {(X, X, X, Y)}


def test_disjointify_single_set():
    t, nus = disjointify([{(Y, Y, X)}], 2)
    assert t == 3 + 1 and nus == [(X,)]


def test_disjointify_three_letters_two_sets():
    t, nus = disjointify([{(X,)}, {(Y,)}], 3)
    assert t == 2 and nus == [(X,), (Y,)]


def test_disjointify_keeps_caller_order():
    # the degree-1 set comes first in the input but is processed second
    t, nus = disjointify([{(X,)}, {(X, Y)}], 2)
    assert t == 4
    assert nus == [(X, X, Y), (X, X)]


def test_disjointify_errors():
    with pytest.raises(PreconditionError):
        disjointify([{(X,)}, {(X,)}], 1)
    with pytest.raises(PreconditionError):
        disjointify([set()], 2)
    with pytest.raises(PreconditionError):
        disjointify([{(X,), (X, Y)}], 2)


def family_strategy(d):
    word = st.integers(1, 4).flatmap(lambda n: st.lists(st.integers(0, d - 1), min_size=n, max_size=n).map(tuple))
    same_degree_set = word.flatmap(
        lambda w: st.lists(st.lists(st.integers(0, d - 1), min_size=len(w), max_size=len(w)).map(tuple),
                           min_size=0, max_size=3).map(lambda rest: frozenset([w, *rest])))
    return st.lists(same_degree_set, min_size=1, max_size=6)


@given(st.sampled_from([2, 3]).flatmap(lambda d: st.tuples(st.just(d), family_strategy(d))))
def test_disjointify_properties(args):
    d, family = args
    t, nus = disjointify(family, d)
    assert t >= max(len(next(iter(A))) for A in family)
    translates = []
    for A, nu in zip(family, nus):
        n = len(next(iter(A)))
        assert len(nu) == t - n
        T = {u + nu for u in A}
        assert len(T) == len(A)
        assert all(len(w) == t for w in T)
        translates.append(T)
    for a, b in itertools.combinations(translates, 2):
        assert not a & b
