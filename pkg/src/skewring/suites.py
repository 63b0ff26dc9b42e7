"""Verification suites run by ``skewring verify``.

Each suite takes a loaded LabConfig and returns a Report.  Suites use the
scenarios from the config when present and fall back to defaults derived
from the context otherwise, so every selected suite always emits records.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from typing import Callable

from . import maps as M
from . import radical as RL
from .config import ConfigError, LabConfig
from .errors import CounterexampleFound, DegreeBoundExceeded, RingAxiomError, SkewRingError
from .reports import TRUNCATED, Report
from .rings import Ideal, ideal_closure, is_semiprime, prime_radical, validate_ring
from .skewpoly import (SkewContext, evaluation_hom, leading, operator_rep, parse_poly, poly_mul,
                       quasi_inverse_nilpotent, quotient_context, random_poly)
from .words import compare_lex, disjointify, word_key, words_of_degree, words_up_to

SUITE_NAMES = ("axioms", "order", "skewpoly", "lemma1", "prop2", "corollary", "qskew", "trace")

A_RING = "finite ring axioms"
A_MAPS = "endomorphisms and sigma-derivations"
A_ORDER = "degree-first lexicographic order on words"
A_DISJ = "right translates with pairwise disjoint top monomials"
A_MUL = "operator representation of the skew extension"
A_ASSOC = "associativity of the skew extension"
A_HOM = "universal property of the free skew extension"
A_LEIBNIZ = "defining relation and sigma-Leibniz rule"
A_DEGREE = "degree of a product"
A_DIRECT = "direct sum of the left ideals S x y^i"
A_QI = "quasi-inverse of a nilpotent element"
A_CHAIN = "descending chain condition on annihilators"
A_QFACT = "q-factorial at q = 1"


def _ideal_from_gens(R, gens) -> Ideal:
    return ideal_closure(R, [R.parse(g) for g in gens])


def _wide_context(ctx: SkewContext, cap: int) -> SkewContext:
    if ctx.degree_cap >= cap:
        return ctx
    return SkewContext(ctx.ring, ctx.variables, ctx.sigma, ctx.delta, degree_cap=cap)


# ------------------------------------------------------------------ axioms

def suite_axioms(cfg: LabConfig) -> Report:
    rep = Report()
    R = cfg.ring
    try:
        validate_ring(R, samples=cfg.samples["ring_axioms"], seed=cfg.seed)
        rep.add("axioms.ring", A_RING, True,
                {"order": R.order, "mode": "exhaustive" if R.order <= 64 else "sampled"})
    except RingAxiomError as exc:
        rep.add("axioms.ring", A_RING, False, {"law": exc.law, "witness": exc.witness})
    ctx = cfg.context
    for x, name in enumerate(ctx.variables):
        s, d = ctx.sigma[x], ctx.delta[x]
        for label, m, claim, twist in (("sigma", s, s.tag, None), ("delta", d, M.SIGMA_DERIVATION, s)):
            fresh = M.RingMap(R, m.table, name=m.name)
            try:
                M.validate(R, fresh, claim, sigma=twist)
                rep.add(f"axioms.{label}.{name}", A_MAPS, True, {"map": m.name, "tag": claim})
            except CounterexampleFound as exc:
                rep.add(f"axioms.{label}.{name}", A_MAPS, False, exc.witness())
        cert = M.q_skew_check(s, d) if ctx.automorphic else None
        rep.add(f"axioms.qskew_detect.{name}", A_MAPS, True,
                {"q": R.format(cert.q) if cert else None, "automorphic": s.tag == M.AUTOMORPHISM})
    return rep


# ------------------------------------------------------------------ words

def check_order_axioms(s: int, max_degree: int = 4) -> dict | None:
    """Exhaustive total order and degree-first checks; returns a witness on failure."""
    words = words_up_to(s, max_degree)
    for u in words:
        if compare_lex(u, u) != 0:
            return {"reflexive": list(u)}
    for u, v in itertools.product(words, repeat=2):
        c = compare_lex(u, v)
        if c != -compare_lex(v, u) or (c == 0) != (u == v):
            return {"antisymmetric": [list(u), list(v)]}
        if len(u) < len(v) and c != -1:
            return {"degree_first": [list(u), list(v)]}
        if (word_key(u) < word_key(v)) != (c == -1):
            return {"key_mismatch": [list(u), list(v)]}
    ordered = sorted(words, key=word_key)
    # a sorted list with consistent pairwise comparisons implies transitivity
    for u, v in zip(ordered, ordered[1:]):
        if compare_lex(u, v) != -1:
            return {"not_strictly_increasing": [list(u), list(v)]}
    if any(words_of_degree(s, n) != sorted(words_of_degree(s, n)) for n in range(max_degree + 1)):
        return {"enumeration_order": s}
    return None


def check_disjointify(family, d: int) -> dict | None:
    t, nus = disjointify(family, d)
    translates = []
    for A, nu in zip(family, nus):
        A = list(A)
        if len(nu) != t - len(A[0]):
            return {"degree": [len(nu), t - len(A[0])]}
        T = {u + nu for u in A}
        if any(len(w) != t for w in T):
            return {"uniform_degree": t}
        translates.append(T)
    for i, j in itertools.combinations(range(len(translates)), 2):
        if translates[i] & translates[j]:
            return {"overlap": [i, j]}
    return None


def random_family(rng: random.Random, d: int, max_sets: int = 6, max_degree: int = 4) -> list[frozenset]:
    family = []
    for _ in range(rng.randint(1, max_sets)):
        n = rng.randint(1, max_degree)
        pool = words_of_degree(d, n)
        family.append(frozenset(rng.sample(pool, rng.randint(1, min(4, len(pool))))))
    return family


def suite_order(cfg: LabConfig) -> Report:
    rep = Report()
    for s in sorted({2, 3, cfg.context.nvars}):
        bad = check_order_axioms(s)
        rep.add(f"order.axioms.s{s}", A_ORDER, bad is None, bad or {"alphabet": s, "max_degree": 4})
    worked = disjointify([{(0, 0), (0, 1)}, {(0,)}], 2)
    rep.add("order.disjointify.example", A_DISJ, worked == (4, [(0, 0), (0, 0, 1)]),
            {"t": worked[0], "nu": [list(n) for n in worked[1]]})
    rng = random.Random(cfg.seed)
    n = cfg.samples["families"]
    failure = None
    for _ in range(n):
        d = rng.choice((2, 3))
        fam = random_family(rng, d)
        bad = check_disjointify(fam, d)
        if bad:
            failure = {"family": [sorted(map(list, A)) for A in fam], "d": d, **bad}
            break
    rep.add("order.disjointify.random", A_DISJ, failure is None, failure or {"families": n})
    return rep


# ------------------------------------------------------------------ skew polynomials

def _pairs(ctx: SkewContext, rng: random.Random, n: int, degree: int):
    for _ in range(n):
        yield random_poly(ctx, rng, degree), random_poly(ctx, rng, degree)


def check_oracle(ctx: SkewContext, pairs) -> tuple[int, dict | None]:
    count = 0
    for f, g in pairs:
        count += 1
        fg = poly_mul(f, g)
        if fg != operator_rep(ctx, f, g):
            return count, {"f": str(f), "g": str(g), "product": str(fg), "oracle": str(operator_rep(ctx, f, g))}
    return count, None


def all_polys(ctx: SkewContext, words) -> list:
    R = ctx.ring
    return [ctx.poly(zip(words, cs)) for cs in itertools.product(R.elements(), repeat=len(words))]


def check_associativity(triples) -> tuple[int, dict | None]:
    count = 0
    for f, g, h in triples:
        count += 1
        if (f * g) * h != f * (g * h):
            return count, {"f": str(f), "g": str(g), "h": str(h)}
    return count, None


def check_ring_laws(ctx: SkewContext, triples) -> dict | None:
    one, zero = ctx.one, ctx.zero
    for f, g, h in triples:
        if f * (g + h) != f * g + f * h or (f + g) * h != f * h + g * h:
            return {"distributive": [str(f), str(g), str(h)]}
        if one * f != f or f * one != f or f + zero != f or f + (-f) != zero or f + g != g + f:
            return {"identity_or_group": str(f)}
    return None


def check_degree_law(pairs) -> dict | None:
    for f, g in pairs:
        if not f or not g:
            continue
        fg = f * g
        if fg.degree > f.degree + g.degree:
            return {"f": str(f), "g": str(g)}
        cf, wf, _ = leading(f)
        cg, wg, _ = leading(g)
        pi = RL.pi_of_word(f.ctx, wf)
        lead = f.ctx.ring.mul(cf, pi(cg))
        if lead != f.ctx.ring.zero and (not fg or leading(fg)[:2] != (lead, wf + wg)):
            return {"f": str(f), "g": str(g), "expected_lead": lead}
    return None


def check_leibniz(ctx: SkewContext) -> dict | None:
    R = ctx.ring
    for x in range(ctx.nvars):
        s, d = ctx.sigma[x], ctx.delta[x]
        X = ctx.var(x)
        for r in R.elements():
            expected = ctx.monomial(s(r), (x,)) + ctx.constant(d(r))
            if X * ctx.constant(r) != expected:
                return {"var": ctx.variables[x], "r": R.format(r)}
        for r, t in itertools.product(R.elements(), repeat=2):
            if d(R.mul(r, t)) != R.add(R.mul(d(r), t), R.mul(s(r), d(t))):
                return {"var": ctx.variables[x], "r": R.format(r), "s": R.format(t)}
    return None


def directness(ctx: SkewContext, k: int = 3, degree: int = 1, limit: int = 10 ** 6,
               sample: int = 20000, rng: random.Random | None = None) -> tuple[int, dict | None]:
    """sum_i f_i x y^i != 0 for nonzero f_0..f_{k-1} supported in degree <= ``degree``."""
    words = words_up_to(ctx.nvars, degree)
    nonzero = [f for f in all_polys(ctx, words) if f]
    shifts = [tuple([0] + [1] * i) for i in range(k)]
    products = [[f * ctx.word(sh) for f in nonzero] for sh in shifts]
    shifted = [{w + sh for w in words} for sh in shifts]
    for i, j in itertools.combinations(range(k), 2):
        if shifted[i] & shifted[j]:
            return 0, {"overlapping_shifts": [i, j]}
    total = len(nonzero) ** k
    if total <= limit:
        index_tuples = itertools.product(range(len(nonzero)), repeat=k)
    else:
        rng = rng or random.Random(0)
        total = sample
        index_tuples = (tuple(rng.randrange(len(nonzero)) for _ in range(k)) for _ in range(sample))
    R = ctx.ring
    term_dicts = [[p.terms for p in row] for row in products]
    for idx in index_tuples:
        acc: dict = {}
        for row, i in zip(term_dicts, idx):
            for w, c in row[i].items():
                acc[w] = R.add(acc.get(w, R.zero), c)
        if all(v == R.zero for v in acc.values()):
            return total, {"f": [str(nonzero[i]) for i in idx]}
    return total, None


def configured_homs(cfg: LabConfig, ctx: SkewContext):
    """(label, hom, target description) for the identity and each configured quotient."""
    specs = cfg.scenario("homs", None)
    if specs is None:
        specs = [{"kind": "identity"}]
        gens = cfg.scenario("prop2", [{"gens": [_default_gen(ctx)]}])
        if gens and ctx.automorphic:
            specs.append({"kind": "quotient_by_annihilator", "gens": gens[0]["gens"]})
    out = []
    for spec in specs:
        kind = spec["kind"]
        if kind == "identity":
            hom = evaluation_hom(ctx, ctx.constant, [ctx.var(i) for i in range(ctx.nvars)], ctx)
            out.append(("identity", hom, ctx, None))
            continue
        if kind == "quotient":
            ideal = _ideal_from_gens(ctx.ring, spec["ideal_gens"])
        elif kind == "quotient_by_annihilator":
            lc = RL.leading_coeff_group(ctx, [parse_poly(ctx, g) for g in spec["gens"]],
                                        cfg.bounds["closure_degree"], cfg.bounds["window"])
            ideal = Ideal(ctx.ring, lc.M)
        else:
            raise ValueError(f"unknown hom kind {kind!r}")
        if len(ideal) == ctx.ring.order:
            continue
        qctx = quotient_context(ctx, ideal)
        Rq = qctx.ring
        hom = evaluation_hom(ctx, lambda r, q=qctx: q.constant(q.ring.eta(r)),
                             [qctx.var(i) for i in range(ctx.nvars)], qctx)
        out.append((f"{kind}.{len(ideal)}", hom, qctx, Rq))
    return out


def suite_skewpoly(cfg: LabConfig) -> Report:
    rep = Report()
    base = cfg.context
    ctx = _wide_context(base, 12)
    R = ctx.ring
    rng = random.Random(cfg.seed)
    n_pairs = cfg.samples["mul_pairs"]
    pairs = list(_pairs(ctx, rng, n_pairs, 3))
    count, bad = check_oracle(ctx, pairs)
    rep.add("skewpoly.oracle.random", A_MUL, bad is None, bad or {"pairs": count, "max_degree": 3})

    small_words = words_up_to(ctx.nvars, 2)
    if R.order ** len(small_words) <= 256:
        polys = all_polys(ctx, small_words)
        count, bad = check_oracle(ctx, itertools.product(polys, repeat=2))
        rep.add("skewpoly.oracle.exhaustive", A_MUL, bad is None, bad or {"pairs": count, "max_degree": 2})

    triples = [(random_poly(ctx, rng, 3), random_poly(ctx, rng, 3), random_poly(ctx, rng, 3))
               for _ in range(cfg.samples["triples"])]
    count, bad = check_associativity(triples)
    rep.add("skewpoly.associativity.random", A_ASSOC, bad is None, bad or {"triples": count, "max_degree": 3})
    if R.order <= 4:
        polys = all_polys(ctx, [(), (0,)])
        count, bad = check_associativity(itertools.product(polys, repeat=3))
        rep.add("skewpoly.associativity.exhaustive", A_ASSOC, bad is None,
                bad or {"triples": count, "words": ["1", ctx.variables[0]]})
    bad = check_ring_laws(ctx, triples)
    rep.add("skewpoly.ring_laws", A_ASSOC, bad is None, bad or {"triples": len(triples)})
    bad = check_degree_law(pairs)
    rep.add("skewpoly.degree_law", A_DEGREE, bad is None, bad or {"pairs": len(pairs)})
    bad = check_leibniz(ctx)
    rep.add("skewpoly.leibniz", A_LEIBNIZ, bad is None, bad)

    hom_rng = random.Random(cfg.seed + 1)
    for label, hom, target, _ in configured_homs(cfg, ctx):
        failure = None
        n = cfg.samples["hom_pairs"]
        for f, g in _pairs(ctx, hom_rng, n, 2):
            if hom(f * g) != target.mul(hom(f), hom(g)) or hom(f + g) != target.add(hom(f), hom(g)):
                failure = {"f": str(f), "g": str(g)}
                break
        if failure is None and hom(ctx.one) != target.one:
            failure = {"unit": str(hom(ctx.one))}
        rep.add(f"skewpoly.universal.{label}", A_HOM, failure is None, failure or {"pairs": n})

    if ctx.nvars >= 2:
        total, bad = directness(ctx, sample=cfg.samples["directness"], rng=random.Random(cfg.seed + 2))
        rep.add("skewpoly.directness", A_DIRECT, bad is None, bad or {"tuples": total, "max_degree": 1})

    rep.extend(quasi_inverse_checks(cfg, base).records)
    return rep


def quasi_inverse_checks(cfg: LabConfig, ctx: SkewContext) -> Report:
    rep = Report()
    zero_b = quasi_inverse_nilpotent(ctx, ctx.zero)
    rep.add("skewpoly.quasi_inverse.zero", A_QI, zero_b is not None and not zero_b, None)
    rng = random.Random(cfg.seed + 3)
    P = prime_radical(ctx.ring).sorted()
    candidates = [parse_poly(ctx, t) for t in cfg.scenario("quasi_inverse", [])]
    required = len(candidates)
    candidates += [random_poly(ctx, rng, 2, coeffs=P) for _ in range(50)]
    found, failure = 0, None
    for i, a in enumerate(candidates):
        try:
            b = quasi_inverse_nilpotent(ctx, a)
        except (AssertionError, DegreeBoundExceeded) as exc:
            if i < required or isinstance(exc, AssertionError):
                failure = {"a": str(a), "error": str(exc)}
                break
            continue
        if b is None:
            if i < required:
                failure = {"a": str(a), "error": "not nilpotent within the default bound"}
                break
            continue
        if not (a + b == a * b == b * a):
            failure = {"a": str(a), "b": str(b)}
            break
        found += 1
    rep.add("skewpoly.quasi_inverse.nilpotent", A_QI, failure is None,
            failure or {"checked": len(candidates), "nilpotent": found, "configured": required})
    return rep


# ------------------------------------------------------------------ radical lab

def _default_gen(ctx: SkewContext) -> str:
    return f"1*{ctx.variables[0]}"


def _none_configured(rep: Report, suite: str, anchor: str, R) -> Report:
    """An explicit empty scenario list still leaves one visible record."""
    rep.add(f"{suite}.none_configured", anchor, True, {"scenarios": 0, "semiprime": is_semiprime(R)})
    return rep


def suite_lemma1(cfg: LabConfig) -> Report:
    R = cfg.ring
    rep = Report()
    scenarios = cfg.scenario("lemma1", [{"ideal_gens": [R.format(R.one)], "c": R.format(R.one)}])
    if not scenarios:
        return _none_configured(rep, "lemma1", RL.LEMMA1_ANCHOR, R)
    for i, sc in enumerate(scenarios):
        I = _ideal_from_gens(R, sc["ideal_gens"])
        res = RL.verify_lemma1(R, I, R.parse(sc["c"]), prefix=f"lemma1.{i}")
        rep.extend(res.report.records)
    return rep


def suite_prop2(cfg: LabConfig) -> Report:
    ctx = cfg.context
    rep = Report()
    d, k = cfg.bounds["closure_degree"], cfg.bounds["window"]
    ctx = _wide_context(ctx, d + k)
    for i, sc in enumerate(cfg.scenario("prop2", [{"gens": [_default_gen(ctx)]}])):
        gens = [parse_poly(ctx, g) for g in sc["gens"]]
        lc = RL.leading_coeff_group(ctx, gens, sc.get("d", d), sc.get("k", k))
        data = lc.to_json(ctx.ring)
        p = f"prop2.{i}"
        rep.add(f"{p}.is_ideal", RL.PROP2_ANCHOR, lc.is_ideal and lc.twist_ok,
                {"I": data["I"], "twist_ok": lc.twist_ok, **lc.witnesses})
        rep.add(f"{p}.sigma_stable", RL.PROP2_ANCHOR, all(lc.sigma_stable) and lc.shift_ok, data["sigma_stable"])
        rep.add(f"{p}.M_sigma_fixed", RL.PROP2_ANCHOR, all(lc.M_sigma_fixed), {"M": data["M"]})
        rep.add(f"{p}.M_delta_stable", RL.PROP2_ANCHOR, all(lc.M_delta_stable), data["M_delta_stable"])
        rep.add(f"{p}.stabilized", RL.PROP2_ANCHOR, lc.stabilized,
                {"d": lc.degree_bound, "k": lc.window,
                 "I_extended": [ctx.ring.format(a) for a in sorted(lc.I_extended)]})
        for x, name in enumerate(ctx.variables):
            chain = RL.annihilator_chain(ctx.ring, lc.I, ctx.sigma[x])
            rep.add(f"{p}.ann_chain.{name}", A_CHAIN, chain["stabilized"] and chain["consistent"], chain)
    return rep


def suite_corollary(cfg: LabConfig) -> Report:
    ctx = cfg.context
    sc = cfg.scenario("corollary", {})
    return RL.verify_radical_extension_nilpotent(ctx, sc.get("n_expected"), cfg.samples["corollary"],
                                                 cfg.seed, sc.get("max_degree", 2))


def suite_qskew(cfg: LabConfig) -> Report:
    ctx = cfg.context
    R = ctx.ring
    rep = Report()
    bad = [n for n in range(1, 7) if M.q_factorial(R, R.one, n) != R.multiple(math.factorial(n), R.one)]
    rep.add("qskew.factorial_q1", A_QFACT, not bad, {"n_max": 6} if not bad else {"n": bad[0]})
    scenarios = cfg.scenario("qskew", None)
    detected = scenarios is None
    if detected:
        scenarios = [{"variable": v, "n": 2} for v in ctx.variables]
    for i, sc in enumerate(scenarios):
        x = ctx.variables.index(sc.get("variable", ctx.variables[0]))
        sigma, delta = ctx.sigma[x], ctx.delta[x]
        if "q" in sc:
            q = R.parse(sc["q"])
        else:
            cert = M.q_skew_check(sigma, delta) if sigma.tag == M.AUTOMORPHISM else None
            if cert is None:
                # without a configured scenario a context that is not q-skew is only recorded
                rep.add(f"qskew.{i}.certificate", RL.QSKEW_ANCHOR, detected,
                        {"variable": ctx.variables[x], "q": None, "q_skew": False})
                continue
            q = cert.q
        gens = sc.get("ideal_gens")
        I = _ideal_from_gens(R, gens) if gens else prime_radical(R)
        sub = RL.verify_q_skew_identity(R, sigma, delta, q, I, sc.get("n", 2), cfg.samples["qskew"],
                                        cfg.seed, prefix=f"qskew.{i}")
        rep.extend(sub.records)
    return rep


def suite_trace(cfg: LabConfig) -> Report:
    ctx = cfg.context
    rep = Report()
    scenarios = cfg.scenario("trace", [{"gens": [_default_gen(ctx)]}])
    if not scenarios:
        return _none_configured(rep, "trace", RL.TRACE_ANCHORS["preconditions"], ctx.ring)
    for i, sc in enumerate(scenarios):
        tr = run_trace(cfg, sc["gens"], sc.get("degree"))
        rep.extend(tr.records(prefix=f"trace.{i}"))
    return rep


def run_trace(cfg: LabConfig, gens: list[str], degree: int | None = None) -> RL.TraceReport:
    ctx = cfg.context
    d = degree if degree is not None else cfg.bounds["trace_degree"]
    cd, k = cfg.bounds["closure_degree"], cfg.bounds["window"]
    ctx = _wide_context(ctx, cd + k)
    polys = [parse_poly(ctx, g) for g in gens]
    return RL.semiprimitivity_trace(ctx, polys, d=d, closure_degree=cd, window=k)


SUITES: dict[str, Callable[[LabConfig], Report]] = {
    "axioms": suite_axioms, "order": suite_order, "skewpoly": suite_skewpoly, "lemma1": suite_lemma1,
    "prop2": suite_prop2, "corollary": suite_corollary, "qskew": suite_qskew, "trace": suite_trace,
}


def run_suites(cfg: LabConfig, names: list[str], timing: bool = False) -> Report:
    """Run suites in canonical order; a suite that raises is reported as one failed record.

    Scenario text that does not parse raises ConfigError.
    """
    out = Report()
    for name in SUITE_NAMES:
        if name not in names:
            continue
        start = time.perf_counter()
        try:
            sub = SUITES[name](cfg)
        except SkewRingError as exc:
            sub = Report()
            sub.add(f"{name}.error", "suite aborted", False, {"error": type(exc).__name__, "message": str(exc)})
        except ValueError as exc:
            # unparsable scenario text is a config problem, not a failed check
            raise ConfigError(f"{name} scenario: {exc}") from None
        if timing:
            elapsed = (time.perf_counter() - start) * 1000.0
            for r in sub.records:
                r.timing_ms = round(elapsed, 3)
        out.extend(sub.records)
    return out


def exit_status(report: Report, strict: bool = False) -> int:
    for r in report:
        if r.status == TRUNCATED and strict:
            return 1
        if r.status not in ("pass", TRUNCATED):
            return 1
    return 0
