from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from skewring import maps as M
from skewring.errors import (CompatibilityViolation, ContextMismatch, DegreeBoundExceeded, NotAutomorphic,
                             PreconditionError, RingSpecError)
from skewring.rings import Ideal, construct_ring, ideal_closure
from skewring.skewpoly import (SkewContext, evaluate_hom, evaluation_hom, format_poly, leading, make_context,
                               operator_rep, parse_poly, pi_of_word, poly_add, poly_from_json, poly_mul,
                               poly_neg, quasi_inverse_nilpotent, quotient_context, random_poly, reduce_poly,
                               scalar_mul_left)
from skewring.words import words_up_to

from conftest import CORPUS_NAMES
from oracles import rewrite_product

F2T2 = {"kind": "trunc_poly", "p": 2, "k": 2}


@pytest.fixture(scope="module")
def euler2():
    R = construct_ring(F2T2)
    return make_context(R, ["x"], [{"kind": "identity"}], [{"kind": "var_derivation", "f": "t"}])


def oracle_product(f, g):
    ctx = f.ctx
    return ctx.poly(rewrite_product(ctx.ring, ctx.sigma, ctx.delta, f.terms, g.terms))


# ------------------------------------------------------------------ construction

def test_context_examples(corpus):
    ctx = corpus("f5t3_qskew").context
    assert ctx.automorphic
    cert = M.q_skew_check(ctx.sigma[0], ctx.delta[0])
    assert cert.q == ctx.ring.encode([3])
    free = corpus("z4").context
    x, y = free.var("x"), free.var("y")
    assert x * y != y * x and x * 3 == 3 * x


def test_context_rejects_bad_input():
    R = construct_ring(F2T2)
    ident, zero = {"kind": "identity"}, {"kind": "zero"}
    with pytest.raises(RingSpecError):
        make_context(R, [], [], [])
    with pytest.raises(RingSpecError):
        make_context(R, ["x", "x"], [ident] * 2, [zero] * 2)
    with pytest.raises(RingSpecError):
        make_context(R, ["x"], [ident, ident], [zero])


def test_context_accepts_non_injective_sigma():
    R = construct_ring({"kind": "product", "left": {"kind": "mod", "n": 2}, "right": {"kind": "mod", "n": 2}})
    table = tuple(R.encode((R.decode(r)[0], R.decode(r)[0])) for r in R.elements())
    ctx = make_context(R, ["x"], [M.RingMap(R, table)], [{"kind": "zero"}])
    assert not ctx.automorphic
    assert ctx.sigma[0].tag == M.ENDOMORPHISM
    with pytest.raises(NotAutomorphic):
        pi_of_word(ctx, (0,), inverse=True)


# ------------------------------------------------------------------ module operations

def test_module_operations(euler2):
    ctx = euler2
    f = ctx.parse("2*x + 1*1")
    g = ctx.parse("2*x + 2*1")
    assert f + (-f) == ctx.zero
    assert scalar_mul_left(ctx.ring.one, f) == f
    assert poly_add(f, g) == ctx.parse("3*1")  # 1 + t
    assert poly_neg(f) == f  # characteristic 2


def test_defining_relation(euler2):
    ctx = euler2
    x, t = ctx.var("x"), ctx.constant(2)
    assert format_poly(x * t) == "2*x + 2*1"
    assert x * t == ctx.parse("2*x + 2*1")
    assert (x * x) * t == ctx.parse("2*xx + 2*1")
    f = ctx.parse("3*xx + 1*x")
    assert ctx.one * f == f == f * ctx.one


def test_leading_examples(corpus):
    ctx = corpus("f3t2_euler").context
    f = ctx.parse("t*xy + t*x + 1")
    c, w, tail = leading(f)
    assert (c, w) == (ctx.ring.t, (0, 1)) and tail == ctx.parse("t*x + 1")
    c, w, tail = leading(ctx.constant(4))
    assert (c, w, tail) == (4, (), ctx.zero)
    c, w, tail = leading(ctx.parse("2*yx + 5*xy"))
    assert (c, w, tail) == (2, (1, 0), ctx.parse("5*xy"))
    with pytest.raises(PreconditionError):
        leading(ctx.zero)


def test_pi_of_word(corpus):
    ctx = corpus("mat2f2_inner").context
    R = ctx.ring
    assert pi_of_word(ctx, ()).is_identity()
    for w in words_up_to(2, 3):
        pi = pi_of_word(ctx, w)
        for s in R.elements():
            prod = ctx.word(w) * ctx.constant(s)
            if pi(s) != R.zero:
                c, lw, _ = leading(prod)
                assert (c, lw) == (pi(s), w)
    # two inner automorphisms compose to the inner automorphism of the product
    u, v = 13, 6
    mk = lambda a: M.construct_map(R, {"kind": "inner_auto", "u": a})
    ctx2 = make_context(R, ["x", "y"], [mk(u), mk(v)], [{"kind": "zero"}] * 2)
    assert pi_of_word(ctx2, (0, 1)).table == mk(R.mul(u, v)).table


# ------------------------------------------------------------------ oracles

@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_product_matches_rewriting_and_operator_oracles(name, corpus):
    ctx = corpus(name).context
    rng = random.Random(11)
    for _ in range(150):
        f, g = random_poly(ctx, rng, 2), random_poly(ctx, rng, 2)
        fg = poly_mul(f, g)
        assert fg == oracle_product(f, g)
        assert fg == operator_rep(ctx, f, g)


def test_exhaustive_oracle_on_euler_context(euler2):
    ctx = euler2
    polys = [ctx.poly(zip(words_up_to(1, 2), cs)) for cs in itertools.product(range(4), repeat=3)]
    for f, g in itertools.product(polys, repeat=2):
        assert poly_mul(f, g) == oracle_product(f, g)


def test_operator_rep_of_one(corpus):
    ctx = corpus("f3t2_euler").context
    assert operator_rep(ctx, ctx.var("x"), ctx.one) == ctx.var("x")
    rng = random.Random(2)
    for _ in range(100):
        f = random_poly(ctx, rng, 3)
        assert operator_rep(ctx, f, ctx.one) == f
        g = random_poly(ctx, rng, 2)
        assert operator_rep(ctx, f, operator_rep(ctx, g, ctx.one)) == f * g


def coeff_polys(ctx, max_degree=2):
    words = words_up_to(ctx.nvars, max_degree)
    return st.dictionaries(st.sampled_from(words), st.integers(0, ctx.ring.order - 1), max_size=4).map(ctx.poly)


@given(st.data())
def test_associativity_property(data):
    ctx = _ctx("mat2f2_inner")
    f, g, h = (data.draw(coeff_polys(ctx)) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(st.data())
def test_degree_law_property(data):
    ctx = _ctx("f5t3_qskew")
    f, g = data.draw(coeff_polys(ctx, 3)), data.draw(coeff_polys(ctx, 3))
    fg = f * g
    if f and g:
        assert fg.degree <= f.degree + g.degree
        cf, wf, _ = leading(f)
        cg, wg, _ = leading(g)
        lead = ctx.ring.mul(cf, pi_of_word(ctx, wf)(cg))
        if lead != ctx.ring.zero:
            assert leading(fg)[:2] == (lead, wf + wg)


def test_exhaustive_associativity_on_smallest_context(euler2):
    ctx = euler2
    polys = [ctx.poly(zip([(), (0,)], cs)) for cs in itertools.product(range(4), repeat=2)]
    for f, g, h in itertools.product(polys, repeat=3):
        assert (f * g) * h == f * (g * h)


def test_sigma_leibniz_at_polynomial_level(corpus):
    ctx = corpus("mat2f2_inner").context
    R = ctx.ring
    for x in range(ctx.nvars):
        X = ctx.var(x)
        for r, s in itertools.product(R.elements(), repeat=2):
            rs = R.mul(r, s)
            assert X * ctx.constant(rs) == (X * ctx.constant(r)) * ctx.constant(s)
            assert (X * ctx.constant(rs)).constant_term == R.add(
                R.mul(ctx.delta[x](r), s), R.mul(ctx.sigma[x](r), ctx.delta[x](s)))


_CTX_CACHE: dict = {}


def _ctx(name):
    if name not in _CTX_CACHE:
        from conftest import load_corpus
        _CTX_CACHE[name] = load_corpus(name).context
    return _CTX_CACHE[name]


# ------------------------------------------------------------------ universal property

def test_identity_evaluation(corpus):
    ctx = corpus("f3t2_euler").context
    hom = evaluation_hom(ctx, ctx.constant, [ctx.var(0), ctx.var(1)], ctx)
    rng = random.Random(5)
    for _ in range(50):
        f = random_poly(ctx, rng, 3)
        assert hom(f) == f


def test_quotient_evaluation_is_coefficientwise_reduction(corpus):
    ctx = corpus("f3t2_euler").context
    qctx = quotient_context(ctx, ideal_closure(ctx.ring, [ctx.ring.t]))
    hom = evaluation_hom(ctx, lambda r: qctx.constant(qctx.ring.eta(r)), {"x": qctx.var(0), "y": qctx.var(1)}, qctx)
    rng = random.Random(6)
    for _ in range(100):
        f, g = random_poly(ctx, rng, 2), random_poly(ctx, rng, 2)
        assert hom(f) == reduce_poly(f, qctx)
        assert hom(f * g) == hom(f) * hom(g)
        assert hom(f + g) == hom(f) + hom(g)


def test_evaluation_into_base_ring(corpus):
    ctx = corpus("z4").context
    R = ctx.ring
    rng = random.Random(7)
    for _ in range(50):
        f = random_poly(ctx, rng, 3)
        assert evaluate_hom(ctx, lambda r: r, [0, 0], f, R) == f.constant_term


def test_evaluation_into_base_ring_is_multiplicative(corpus):
    ctx = corpus("z4").context
    R = ctx.ring
    hom = evaluation_hom(ctx, lambda r: r, [1, 3], R)
    rng = random.Random(8)
    for _ in range(200):
        f, g = random_poly(ctx, rng, 2), random_poly(ctx, rng, 2)
        assert hom(f * g) == R.mul(hom(f), hom(g))


def test_compatibility_violation(euler2):
    ctx = euler2
    # x -> 1 would need 1*r = r + delta(r) for every r
    with pytest.raises(CompatibilityViolation):
        evaluation_hom(ctx, lambda r: r, [ctx.ring.one], ctx.ring)


def test_uniqueness_via_variable_rename(corpus):
    ctx = corpus("mat2f2_inner").context
    swapped = SkewContext(ctx.ring, ["y", "x"], ctx.sigma[::-1], ctx.delta[::-1])
    to_swapped = evaluation_hom(ctx, swapped.constant, [swapped.var("x"), swapped.var("y")], swapped)
    back = evaluation_hom(swapped, ctx.constant, [ctx.var("y"), ctx.var("x")], ctx)
    identity = evaluation_hom(ctx, ctx.constant, [ctx.var(0), ctx.var(1)], ctx)
    rng = random.Random(9)
    for _ in range(100):
        f = random_poly(ctx, rng, 3)
        assert back(to_swapped(f)) == identity(f) == f


# ------------------------------------------------------------------ text forms, bounds, errors

def test_text_and_json_roundtrip(corpus):
    for name in CORPUS_NAMES:
        ctx = corpus(name).context
        rng = random.Random(3)
        for _ in range(30):
            f = random_poly(ctx, rng, 3)
            assert parse_poly(ctx, format_poly(f)) == f
            assert poly_from_json(ctx, f.to_json()) == f


def test_json_order_is_descending(corpus):
    ctx = corpus("z4").context
    f = ctx.parse("1*1 + 2*yx + 3*xy + 1*y")
    assert f.to_json() == [{"word": "yx", "coeff": 2}, {"word": "xy", "coeff": 3},
                           {"word": "y", "coeff": 1}, {"word": "1", "coeff": 1}]


def test_degree_cap(euler2):
    ctx = SkewContext(euler2.ring, euler2.variables, euler2.sigma, euler2.delta, degree_cap=3)
    x = ctx.var(0)
    with pytest.raises(DegreeBoundExceeded):
        (x * x) * (x * x)


def test_context_mismatch(corpus):
    a, b = corpus("z4").context, corpus("prod23").context
    with pytest.raises(ContextMismatch):
        a.var(0) * b.var(0)


def test_parse_errors(corpus):
    ctx = corpus("z4").context
    with pytest.raises(ValueError):
        ctx.parse("1*q")
    with pytest.raises(ValueError):
        ctx.parse("9*x")


# ------------------------------------------------------------------ quasi-inverse

def test_quasi_inverse_examples(euler2):
    ctx = euler2
    assert quasi_inverse_nilpotent(ctx, ctx.zero) == ctx.zero
    a = ctx.parse("t*x")
    assert a * a == ctx.zero
    b = quasi_inverse_nilpotent(ctx, a)
    assert b == a
    assert a + b == ctx.zero == a * b == b * a
    assert quasi_inverse_nilpotent(ctx, ctx.one, 10) is None


@pytest.mark.parametrize("name", ["f3t2_euler", "f5t3_qskew", "z4"])
def test_quasi_inverse_on_radical_polynomials(name, corpus):
    ctx = corpus(name).context
    from skewring.rings import prime_radical
    P = prime_radical(ctx.ring).sorted()
    rng = random.Random(4)
    for _ in range(40):
        a = random_poly(ctx, rng, 2, coeffs=P)
        b = quasi_inverse_nilpotent(ctx, a)
        assert b is not None
        assert a + b == a * b == b * a


def test_quotient_context_rejects_unstable_ideal():
    R = construct_ring(F2T2)
    ctx = make_context(R, ["x"], [{"kind": "identity"}], [{"kind": "var_derivation", "f": 1}])
    from skewring.errors import StabilityViolation
    with pytest.raises(StabilityViolation):
        quotient_context(ctx, Ideal(R, frozenset({0, 2})))
