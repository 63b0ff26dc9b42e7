from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from skewring.errors import NotAnIdeal, PreconditionError, RingAxiomError, RingSpecError
from skewring.rings import (Ideal, annihilators, construct_ring, find_regular_element, ideal_closure,
                            is_ideal, is_regular_in, is_semiprime, jacobson_radical, nilpotency_index,
                            prime_radical, validate_ring)

from oracles import brute_ideal, nil_radical, ops_from_spec

MOD2, MOD3 = {"kind": "mod", "n": 2}, {"kind": "mod", "n": 3}
SPECS = {
    "z4": {"kind": "mod", "n": 4},
    "z6": {"kind": "mod", "n": 6},
    "m2f2": {"kind": "matrix", "k": 2, "base": MOD2},
    "prod23": {"kind": "product", "left": MOD2, "right": MOD3},
    "f3t2": {"kind": "trunc_poly", "p": 3, "k": 2},
    "f2t3": {"kind": "trunc_poly", "p": 2, "k": 3},
    "f5t3": {"kind": "trunc_poly", "p": 5, "k": 3},
    "prod_m2_z4": {"kind": "product", "left": {"kind": "matrix", "k": 2, "base": MOD2}, "right": {"kind": "mod", "n": 4}},
}


def ring(name):
    return construct_ring(SPECS[name])


@pytest.mark.parametrize("name", sorted(SPECS))
def test_tables_match_independent_arithmetic(name):
    R = ring(name)
    add, mul, order = ops_from_spec(SPECS[name])
    assert R.order == order
    for a, b in itertools.product(R.elements(), repeat=2):
        assert R.add(a, b) == add(a, b)
        assert R.mul(a, b) == mul(a, b)


def test_mod4_arithmetic():
    R = ring("z4")
    assert R.order == 4 and R.add(2, 2) == 0 and R.mul(2, 2) == 0


def test_matrix_ring_is_noncommutative():
    R = ring("m2f2")
    assert R.order == 16
    assert any(R.mul(a, b) != R.mul(b, a) for a, b in itertools.product(R.elements(), repeat=2))
    assert not R.is_commutative()


def test_trunc_poly_relation():
    R = ring("f5t3")
    t = R.t
    assert R.order == 125
    assert R.power(t, 3) == R.zero and R.power(t, 2) != R.zero


def test_quotient_ring_cosets():
    R = construct_ring({"kind": "quotient", "base": SPECS["z6"], "ideal_gens": [2]})
    assert R.order == 2
    assert R.reps == [0, 1]
    assert [R.eta(a) for a in range(6)] == [0, 1, 0, 1, 0, 1]


def test_table_ring_and_axiom_failure():
    add = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    mul = [[(a * b) % 3 for b in range(3)] for a in range(3)]
    R = construct_ring({"kind": "table", "order": 3, "add": add, "mul": mul, "one": 1})
    assert R.mul(2, 2) == 1
    bad = [row[:] for row in mul]
    bad[2][2] = 2
    with pytest.raises(RingAxiomError):
        construct_ring({"kind": "table", "order": 3, "add": add, "mul": bad, "one": 1})


@pytest.mark.parametrize("spec", [
    {"kind": "mod", "n": 1},
    {"kind": "trunc_poly", "p": 4, "k": 2},
    {"kind": "matrix", "k": 0, "base": MOD2},
    {"kind": "nonsense"},
    {"kind": "mod"},
    {"kind": "mod", "n": 70000},
])
def test_malformed_specs(spec):
    with pytest.raises(RingSpecError):
        construct_ring(spec)


def test_quotient_needs_an_ideal():
    R = ring("m2f2")
    with pytest.raises(NotAnIdeal):
        from skewring.rings import QuotientRing
        QuotientRing(R, Ideal(R, frozenset({0, 1})))


def test_ideal_closure_examples():
    Z6 = ring("z6")
    assert ideal_closure(Z6, [2]).elements == {0, 2, 4}
    assert ideal_closure(Z6, []).elements == {0}
    assert len(ideal_closure(Z6, [1])) == 6


@pytest.mark.parametrize("name", ["z6", "m2f2", "f3t2", "prod23", "f2t3"])
def test_ideal_closure_matches_brute_force(name):
    R = ring(name)
    add, mul, order = ops_from_spec(SPECS[name])
    for g in R.elements():
        I = ideal_closure(R, [g])
        assert I.elements == brute_ideal(order, add, mul, [g])
        assert ideal_closure(R, I.elements) == I


def test_annihilator_examples():
    Z6 = ring("z6")
    l, r, a = annihilators(Z6, [2])
    assert l == r == a == {0, 3}
    for R in (Z6, ring("m2f2")):
        assert annihilators(R, [0]) == (frozenset(R.elements()),) * 3
        assert annihilators(R, [R.one]) == (frozenset({R.zero}),) * 3


@pytest.mark.parametrize("name, expected", [
    ("z4", {0, 2}),
    ("m2f2", {0}),
    ("f3t2", {0, 3, 6}),
    ("prod23", {0}),
])
def test_radical_examples(name, expected):
    R = ring(name)
    assert jacobson_radical(R).elements == expected
    assert prime_radical(R).elements == expected


@pytest.mark.parametrize("name", sorted(SPECS))
def test_radical_matches_nil_characterization(name):
    R = ring(name)
    add, mul, order = ops_from_spec(SPECS[name])
    J = jacobson_radical(R)
    assert J.elements == nil_radical(order, add, mul)
    assert nilpotency_index(R, J) is not None


def test_field_is_semiprime():
    for p in (2, 3, 7):
        assert prime_radical(construct_ring({"kind": "mod", "n": p})).is_zero()


@pytest.mark.parametrize("name, expected", [("m2f2", True), ("z4", False), ("prod23", True), ("f3t2", False)])
def test_is_semiprime(name, expected):
    assert is_semiprime(ring(name)) is expected


def test_is_regular_in_examples():
    R = ring("prod23")
    I = ideal_closure(R, [R.parse("(1,0)")])
    assert is_regular_in(R, R.parse("(1,0)"), I)
    assert not is_regular_in(R, R.zero, I)
    Z6 = ring("z6")
    assert is_regular_in(Z6, 2, ideal_closure(Z6, [2]))
    with pytest.raises(PreconditionError):
        is_regular_in(Z6, 1, ideal_closure(Z6, [2]))


def test_find_regular_element_examples():
    R = ring("prod23")
    assert find_regular_element(R, R.elements()) == R.parse("(1,1)")
    assert find_regular_element(R, [R.zero]) is None
    I = ideal_closure(R, [R.parse("(1,0)")])
    M = annihilators(R, I.elements)[2]
    from skewring.rings import direct_sum
    e = find_regular_element(R, direct_sum(R, I.elements, M))
    a, b = R.decode(e)
    assert a != 0 and b != 0


@pytest.mark.parametrize("name, gens, n", [("f3t2", ["t"], 2), ("f5t3", ["t"], 3), ("z4", [0], 1)])
def test_nilpotency_index_examples(name, gens, n):
    R = ring(name)
    assert nilpotency_index(R, ideal_closure(R, [R.parse(g) for g in gens])) == n


def test_nilpotency_index_none_for_idempotent_ideal():
    R = ring("prod23")
    assert nilpotency_index(R, ideal_closure(R, [R.parse("(1,0)")])) is None


@pytest.mark.parametrize("name", ["m2f2", "prod23", "prod_m2_z4"])
def test_semiprime_left_and_right_annihilators_of_ideals_agree(name):
    R = ring(name)
    seen = set()
    for g in R.elements():
        I = ideal_closure(R, [g])
        if I.elements in seen:
            continue
        seen.add(I.elements)
        l, r, _ = annihilators(R, I.elements)
        if is_semiprime(R):
            assert l == r
        assert is_ideal(R, l) and is_ideal(R, r)


def test_validate_ring_sampled_path():
    R = ring("f5t3")
    validate_ring(R, samples=200, seed=3)


def test_format_parse_roundtrip():
    for name in SPECS:
        R = ring(name)
        for a in R.elements():
            assert R.parse(R.format(a)) == a
            assert R.parse(str(a)) == a


@given(st.sampled_from(sorted(SPECS)), st.data())
def test_ring_laws_on_random_triples(name, data):
    R = ring(name)
    el = st.integers(0, R.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.add(a, R.neg(a)) == R.zero
    assert R.mul(R.one, a) == a == R.mul(a, R.one)


@given(st.sampled_from(["z6", "m2f2", "f3t2", "prod23"]), st.lists(st.integers(0, 15), max_size=3))
def test_ideal_closure_idempotent(name, raw):
    R = ring(name)
    gens = [g % R.order for g in raw]
    I = ideal_closure(R, gens)
    assert ideal_closure(R, I.elements) == I
    assert is_ideal(R, I.elements)
