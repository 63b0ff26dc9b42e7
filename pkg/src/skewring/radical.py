"""Mechanized checks for the semiprimitivity argument on concrete finite instances.

Everything here works with a finite base ring and bounded-degree pieces of
the (infinite) skew extension.  Ideals of the extension are handled through
generator lists and a degree-bounded closure, so the leading-coefficient
ideal computed here is an under-approximation whose convergence is
evidenced by a stabilization window.
"""

from __future__ import annotations

import itertools
import os
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from . import maps as M
from .errors import DegreeBoundExceeded, PreconditionError, StabilityViolation
from .maps import RingMap
from .reports import FAIL, PASS, TRUNCATED, CheckRecord, Report
from .rings import (FiniteRing, Ideal, QuotientRing, additive_closure, annihilators,
                    direct_sum, find_regular_element, ideal_power, is_ideal, is_regular,
                    is_regular_in, is_semiprime, nilpotency_index, prime_radical, ring_generators)
from .skewpoly import (SkewContext, SkewPoly, leading, pi_of_word, quotient_context, reduce_poly,
                       right_word_mul)
from .words import Word, disjointify, word_key, words_up_to

DEFAULT_MAX_SEARCH = 10 ** 7
EXHAUSTIVE_TUPLE_LIMIT = 10 ** 6

NO_SOLUTION = "NO-SOLUTION"
SOLUTION_FOUND = "SOLUTION-FOUND"
SEARCH_TRUNCATED = "SEARCH-TRUNCATED"
PRECONDITION_FAILED = "PRECONDITION-FAILED"


def max_search() -> int:
    value = os.environ.get("SKEWRING_MAX_SEARCH")
    return int(value) if value else DEFAULT_MAX_SEARCH


def _fmt_set(R: FiniteRing, elems) -> list[str]:
    return [R.format(a) for a in sorted(elems)]


# ------------------------------------------------------------------ regular element lemma

LEMMA1_ANCHOR = "regular element of an ideal stays regular modulo its annihilator"


@dataclass
class Lemma1Result:
    report: Report
    M: frozenset | None = None
    quotient: QuotientRing | None = None


def verify_lemma1(R: FiniteRing, I: Ideal, c: int, prefix: str = "lemma1") -> Lemma1Result:
    """Check l.ann(c) = r.ann(c) = ann(I), regularity of c + M in R/M and I n M = 0."""
    rep = Report()
    problems = []
    if not is_semiprime(R):
        problems.append({"semiprime": False, "prime_radical": _fmt_set(R, prime_radical(R).elements)})
    if c not in I:
        problems.append({"c_in_I": False})
    elif not is_regular_in(R, c, I):
        z = R.zero
        bad = next(s for s in I if s != z and (R.mul(c, s) == z or R.mul(s, c) == z))
        problems.append({"regular_in_I": False, "killed": R.format(bad)})
    names = ("annihilators", "quotient_regular", "intersection")
    if problems:
        rep.add(f"{prefix}.precondition", LEMMA1_ANCHOR, False, problems)
        for name in names:
            rep.add(f"{prefix}.{name}", LEMMA1_ANCHOR, False, {"not_evaluated": "precondition failed"})
        return Lemma1Result(rep)
    rep.add(f"{prefix}.precondition", LEMMA1_ANCHOR, True,
            {"c": R.format(c), "I_size": len(I), "goldie": "finite rings are left Goldie"})

    lann_I, rann_I, Mset = annihilators(R, I.elements)
    lann_c, rann_c, _ = annihilators(R, [c])
    ok = lann_c == rann_c == Mset and lann_I == rann_I
    rep.add(f"{prefix}.annihilators", LEMMA1_ANCHOR, ok,
            {"M": _fmt_set(R, Mset), "lann_c": _fmt_set(R, lann_c), "rann_c": _fmt_set(R, rann_c)})

    Rq = QuotientRing(R, Ideal(R, Mset))
    cq = Rq.eta(c)
    qok = is_regular(Rq, cq)
    rep.add(f"{prefix}.quotient_regular", LEMMA1_ANCHOR, qok,
            {"quotient_order": Rq.order, "image_of_c": Rq.format(cq)})
    inter = I.elements & Mset
    rep.add(f"{prefix}.intersection", LEMMA1_ANCHOR, inter == {R.zero}, {"I_cap_M": _fmt_set(R, inter)})
    return Lemma1Result(rep, Mset, Rq)


def annihilator_chain(R: FiniteRing, I: Ideal | frozenset, sigma: RingMap) -> dict:
    """Stabilization of ann(sigma^i(I)) and the rederivation sigma(ann I) = ann I from it."""
    elems = I.elements if isinstance(I, Ideal) else frozenset(I)
    chain = [annihilators(R, elems)[2]]
    images = [elems]
    n = None
    for _ in range(R.order + 1):
        images.append(sigma.image(images[-1]))
        chain.append(annihilators(R, images[-1])[2])
        if chain[-1] == chain[-2]:
            n = len(chain) - 2
            break
    if n is None:
        return {"stabilized": False, "index": None, "consistent": False}
    sig_n_inv = M.inverse(M.power(sigma, n))
    rederived = sig_n_inv.image(chain[n + 1])
    direct = sigma.image(chain[0])
    return {"stabilized": True, "index": n, "consistent": rederived == direct == chain[0]}


# ------------------------------------------------------------------ leading coefficient ideal

class LeadingEchelon:
    """Additive subgroup of bounded-degree polynomials, organized by leading word.

    For each leading word w it keeps the subgroup L_w of leading coefficients
    reached by group elements supported on words <= w, with one
    representative polynomial for every value.
    """

    def __init__(self, ctx: SkewContext):
        self.ctx = ctx
        self.levels: dict[Word, dict[int, SkewPoly]] = {}

    def reduce(self, f: SkewPoly) -> SkewPoly:
        while f:
            c, w, _ = leading(f)
            level = self.levels.get(w)
            if level is None or c not in level:
                return f
            f = f - level[c]
        return f

    def insert(self, f: SkewPoly) -> list[SkewPoly]:
        """Add f to the group; return the residues that enlarged some L_w."""
        R = self.ctx.ring
        grown = []
        stack = [f]
        while stack:
            g = self.reduce(stack.pop())
            if not g:
                continue
            c, w, _ = leading(g)
            level = self.levels.setdefault(w, {R.zero: self.ctx.zero})
            old = dict(level)
            kc, kg = c, g
            while kc not in old:
                for a, rep in old.items():
                    level[R.add(a, kc)] = rep + kg
                kc, kg = R.add(kc, c), kg + g
            # the first multiple of c landing back in L_w gives an element with a lower leading word
            stack.append(kg - old[kc])
            grown.append(g)
        return grown

    def leading_coefficients(self) -> set[int]:
        return {a for level in self.levels.values() for a in level}

    def occurrences(self) -> list[tuple[int, Word, SkewPoly]]:
        """(coefficient, leading word, representative) sorted by word order then coefficient."""
        out = []
        for w in sorted(self.levels, key=word_key):
            for a in sorted(self.levels[w]):
                if a != self.ctx.ring.zero:
                    out.append((a, w, self.levels[w][a]))
        return out


def ideal_closure_bounded(ctx: SkewContext, gens: Sequence[SkewPoly], d: int) -> LeadingEchelon:
    """Degree-<=d part of the two-sided ideal generated by ``gens``, as reached by closure."""
    R = ctx.ring
    rgens = ring_generators(R)
    echelon = LeadingEchelon(ctx)
    queue = deque(g for g in gens if g and g.degree <= d)
    while queue:
        f = queue.popleft()
        for g in echelon.insert(f):
            for r in rgens:
                queue.append(r * g)
                queue.append(g * r)
            if g.degree + 1 <= d:
                for x in range(ctx.nvars):
                    queue.append(ctx.var(x) * g)
                    queue.append(right_word_mul(g, (x,)))
    return echelon


PROP2_ANCHOR = "leading coefficients of an ideal of the extension form a stable ideal"


@dataclass
class LeadingCoeffReport:
    generators: list[str]
    degree_bound: int
    window: int
    I: frozenset
    is_ideal: bool
    sigma_stable: list[bool]
    M: frozenset
    M_sigma_fixed: list[bool]
    M_delta_stable: list[bool]
    stabilized: bool
    twist_ok: bool = True
    shift_ok: bool = True
    I_extended: frozenset | None = None
    echelon: LeadingEchelon | None = field(default=None, repr=False)
    witnesses: dict = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return (self.is_ideal and all(self.sigma_stable) and all(self.M_sigma_fixed)
                and all(self.M_delta_stable) and self.stabilized and self.twist_ok and self.shift_ok)

    def to_json(self, R: FiniteRing) -> dict:
        return {"generators": self.generators, "d": self.degree_bound, "k": self.window,
                "I": _fmt_set(R, self.I), "is_ideal": self.is_ideal, "sigma_stable": self.sigma_stable,
                "M": _fmt_set(R, self.M), "M_sigma_fixed": self.M_sigma_fixed,
                "M_delta_stable": self.M_delta_stable, "stabilized": self.stabilized,
                "twist_ok": self.twist_ok, "shift_ok": self.shift_ok, **self.witnesses}


def leading_coefficient_ideal(ctx: SkewContext, A_gens: Sequence[SkewPoly], d: int) -> tuple[frozenset, LeadingEchelon]:
    echelon = ideal_closure_bounded(ctx, A_gens, d)
    return additive_closure(ctx.ring, echelon.leading_coefficients()), echelon


def leading_coeff_group(ctx: SkewContext, A_gens: Sequence[SkewPoly], d: int = 3, k: int = 2) -> LeadingCoeffReport:
    """Leading-coefficient group I of the ideal generated by A_gens, and the stability of I and ann(I)."""
    if not ctx.automorphic:
        raise PreconditionError("the radical lab needs every sigma to be an automorphism")
    if not A_gens:
        raise PreconditionError("need at least one generator")
    if d + k > ctx.degree_cap:
        raise DegreeBoundExceeded(d + k, ctx.degree_cap)
    R = ctx.ring
    I, echelon = leading_coefficient_ideal(ctx, A_gens, d)
    I_ext, _ = leading_coefficient_ideal(ctx, A_gens, d + k)
    witnesses: dict = {}
    ideal_ok = is_ideal(R, I)
    sigma_stable = [s.image(I) <= I for s in ctx.sigma]
    _, _, Mset = annihilators(R, I)
    M_fixed = [s.image(Mset) == Mset for s in ctx.sigma]
    M_delta = [dl.image(Mset) <= Mset for dl in ctx.delta]
    for x, (s_ok, dl) in enumerate(zip(sigma_stable, ctx.delta)):
        if not s_ok:
            bad = min(a for a in I if ctx.sigma[x](a) not in I)
            witnesses.setdefault("sigma_escape", []).append({"var": ctx.variables[x], "a": R.format(bad)})
        if not M_delta[x]:
            bad = min(m for m in Mset if dl(m) not in Mset)
            witnesses.setdefault("delta_escape", []).append({"var": ctx.variables[x], "m": R.format(bad)})

    # right multiplication by pi^-1(r) realizes a r as a leading coefficient on the same word
    twist_ok = True
    shift_ok = True
    for a, w, rep in echelon.occurrences():
        pinv = pi_of_word(ctx, w, inverse=True)
        for r in R.elements():
            prod = rep * pinv(r)
            if prod.coeff(w) != R.mul(a, r) or (prod and word_key(leading(prod)[1]) > word_key(w)):
                twist_ok = False
                witnesses.setdefault("twist_failure", {"a": R.format(a), "r": R.format(r)})
        if len(w) + 1 <= d:
            for x in range(ctx.nvars):
                c, lw, _ = leading(ctx.var(x) * rep)
                if (c, lw) != (ctx.sigma[x](a), (x,) + w):
                    shift_ok = False
                    witnesses.setdefault("shift_failure", {"a": R.format(a), "var": ctx.variables[x]})
    return LeadingCoeffReport(
        generators=[str(g) for g in A_gens], degree_bound=d, window=k, I=I, is_ideal=ideal_ok,
        sigma_stable=sigma_stable, M=Mset, M_sigma_fixed=M_fixed, M_delta_stable=M_delta,
        stabilized=I == I_ext, twist_ok=twist_ok, shift_ok=shift_ok, I_extended=I_ext,
        echelon=echelon, witnesses=witnesses)


# ------------------------------------------------------------------ nilpotent radical of the extension

COROLLARY_ANCHOR = "nilpotent stable prime radical gives a nilpotent Jacobson radical"


def _nilpotent_element(R: FiniteRing, a: int) -> bool:
    p = a
    for _ in range(R.order + 1):
        if p == R.zero:
            return True
        p = R.mul(p, a)
    return False


def _coefficient_tuples(rng: random.Random, pool: list[int], n_words: int, n: int, sample: int):
    total = len(pool) ** (n_words * n)
    if total <= EXHAUSTIVE_TUPLE_LIMIT:
        polys = list(itertools.product(pool, repeat=n_words))
        return True, total, itertools.product(polys, repeat=n)
    def gen():
        for _ in range(sample):
            yield tuple(tuple(rng.choice(pool) for _ in range(n_words)) for _ in range(n))
    return False, sample, gen()


def verify_radical_extension_nilpotent(ctx: SkewContext, n_expected: int | None = None, sample: int = 10 ** 4,
                                       seed: int = 0, max_degree: int = 2, prefix: str = "corollary") -> Report:
    """(P(R)[X])^n = 0 where n is the nilpotency index of the prime radical of R."""
    R = ctx.ring
    rep = Report()
    P = prime_radical(R)
    stab_witness = []
    for x in range(ctx.nvars):
        name = ctx.variables[x]
        if ctx.sigma[x].image(P.elements) != P.elements:
            stab_witness.append({"var": name, "map": "sigma", "image": _fmt_set(R, ctx.sigma[x].image(P.elements))})
        try:
            M.check_stable(ctx.delta[x], P, "delta")
        except StabilityViolation as exc:
            stab_witness.append({"var": name, "map": "delta", "a": R.format(exc.a), "image": R.format(exc.image)})
    rep.add(f"{prefix}.stability", COROLLARY_ANCHOR, not stab_witness,
            stab_witness or {"P": _fmt_set(R, P.elements)})
    nil_witness = []
    for x in range(ctx.nvars):
        for a in P:
            if not _nilpotent_element(R, ctx.delta[x](a)):
                nil_witness.append({"var": ctx.variables[x], "a": R.format(a), "delta_a": R.format(ctx.delta[x](a))})
                break
    rep.add(f"{prefix}.delta_nilpotent", COROLLARY_ANCHOR, not nil_witness, nil_witness or None)

    n = nilpotency_index(R, P)
    idx_ok = n is not None and (n_expected is None or n == n_expected)
    # the Krull dimension hypothesis is trivial for finite rings and is not checked
    rep.add(f"{prefix}.nilpotency_index", COROLLARY_ANCHOR, idx_ok,
            {"n": n, "expected": n_expected, "not_checked": "left Krull dimension"})
    if stab_witness or n is None:
        rep.add(f"{prefix}.products", COROLLARY_ANCHOR, False, {"not_evaluated": "hypotheses failed"})
        return rep

    words = words_up_to(ctx.nvars, max_degree)
    if n * max_degree > ctx.degree_cap:
        raise DegreeBoundExceeded(n * max_degree, ctx.degree_cap)
    pool = P.sorted()
    rng = random.Random(seed)
    exhaustive, count, tuples = _coefficient_tuples(rng, pool, len(words), n, sample)
    failure = None
    for coeff_tuple in tuples:
        prod = ctx.one
        factors = [ctx.poly(zip(words, cs)) for cs in coeff_tuple]
        for f in factors:
            prod = prod * f
        if prod:
            failure = {"factors": [str(f) for f in factors], "product": str(prod)}
            break
    rep.add(f"{prefix}.products", COROLLARY_ANCHOR, failure is None,
            failure or {"n": n, "cases": count, "mode": "exhaustive" if exhaustive else "sampled",
                        "max_degree": max_degree})
    return rep


# ------------------------------------------------------------------ q-skew identity

QSKEW_ANCHOR = "q-skew product identity for a sigma-stable ideal"


def verify_q_skew_identity(R: FiniteRing, sigma: RingMap, delta: RingMap, q: int, I: Ideal, n: int,
                           sample: int = 10 ** 4, seed: int = 0, prefix: str = "qskew") -> Report:
    """delta^n(a_1...a_n) - (n!)_q sigma^(n-1)delta(a_1) ... delta(a_n) lies in I for tuples from I."""
    rep = Report()
    problems = []
    if not (R.is_unit(q) and R.is_central(q)):
        problems.append({"q_central_unit": False})
    bad = [r for r in R.elements() if delta(sigma(r)) != R.mul(q, sigma(delta(r)))]
    if bad:
        problems.append({"q_skew_fails_at": R.format(bad[0])})
    if not sigma.image(I.elements) <= I.elements:
        problems.append({"sigma_stable": False})
    rep.add(f"{prefix}.certificate", QSKEW_ANCHOR, not problems,
            problems or {"q": R.format(q), "n": n, "I_size": len(I)})
    if problems:
        rep.add(f"{prefix}.identity", QSKEW_ANCHOR, False, {"not_evaluated": "precondition failed"})
        return rep

    qf = M.q_factorial(R, q, n)
    sig_pows = [M.power(sigma, j) for j in range(n)]
    elems = I.sorted()
    rng = random.Random(seed)
    total = len(elems) ** n
    if total <= EXHAUSTIVE_TUPLE_LIMIT:
        tuples = itertools.product(elems, repeat=n)
        mode, count = "exhaustive", total
    else:
        tuples = (tuple(rng.choice(elems) for _ in range(n)) for _ in range(sample))
        mode, count = "sampled", sample
    failure = None
    for tup in tuples:
        prod = R.one
        for a in tup:
            prod = R.mul(prod, a)
        lhs = prod
        for _ in range(n):
            lhs = delta(lhs)
        rhs = qf
        for i, a in enumerate(tup):
            rhs = R.mul(rhs, sig_pows[n - 1 - i](delta(a)))
        w = R.sub(lhs, rhs)
        if w not in I:
            failure = {"tuple": [R.format(a) for a in tup], "w": R.format(w)}
            break
    rep.add(f"{prefix}.identity", QSKEW_ANCHOR, failure is None,
            failure or {"cases": count, "mode": mode, "q_factorial": R.format(qf)})

    if ideal_power(R, I.elements, n) == {R.zero}:
        qf_n = R.power(qf, n)
        bad_a = [a for a in elems if R.mul(qf_n, R.power(delta(a), n * n)) != R.zero]
        rep.add(f"{prefix}.consequence", QSKEW_ANCHOR, not bad_a,
                {"a": R.format(bad_a[0])} if bad_a else {"checked": len(elems), "power": n * n})
    return rep


# ------------------------------------------------------------------ quasi-inverse search

@dataclass
class SearchResult:
    words: list[Word]
    space: int
    truncated: bool
    solutions: list[SkewPoly] = field(default_factory=list)
    examined: int = 0


def _candidate_products(ctx: SkewContext, a: SkewPoly, words: list[Word]):
    R = ctx.ring
    left = {(w, r): a * ctx.monomial(r, w) for w in words for r in R.elements()}
    right = {(w, r): ctx.monomial(r, w) * a for w in words for r in R.elements()}
    return left, right


def iter_candidates(ctx: SkewContext, a: SkewPoly, d: int):
    """Yield (b, ab, ba) for every b supported on words of degree <= d, in encoding order."""
    R = ctx.ring
    words = words_up_to(ctx.nvars, d)
    left, right = _candidate_products(ctx, a, words)
    for coeffs in itertools.product(R.elements(), repeat=len(words)):
        b = ctx.poly(zip(words, coeffs))
        ab, ba = ctx.zero, ctx.zero
        for w, r in zip(words, coeffs):
            if r != R.zero:
                ab = ab + left[(w, r)]
                ba = ba + right[(w, r)]
        yield b, ab, ba


def search_quasi_inverse(ctx: SkewContext, a: SkewPoly, d: int, limit: int | None = None) -> SearchResult:
    """All b of degree <= d with a + b = ab = ba, by exhaustive enumeration of coefficients."""
    limit = max_search() if limit is None else limit
    words = words_up_to(ctx.nvars, d)
    space = ctx.ring.order ** len(words)
    res = SearchResult(words, space, space > limit)
    if res.truncated:
        return res
    if a.degree + d > ctx.degree_cap:
        raise DegreeBoundExceeded(a.degree + d, ctx.degree_cap)
    for b, ab, ba in iter_candidates(ctx, a, d):
        res.examined += 1
        if a + b == ab == ba:
            res.solutions.append(b)
    return res


# ------------------------------------------------------------------ semiprimitivity trace

TRACE_ANCHORS = {
    "preconditions": "semiprime finite base ring with automorphic twists",
    "leading_ideal": "ideal of leading coefficients and its annihilator",
    "regular_element": "essential direct sum I + M contains a regular element",
    "lemma1": LEMMA1_ANCHOR,
    "decomposition": "regular element as a sum of leading coefficients",
    "disjointify": "right translates with pairwise disjoint top monomials",
    "construct_a": "element of degree t >= 1 with zero constant term",
    "quasi_inverse_search": "no quasi-inverse of bounded degree",
    "contradiction": "each candidate fails by degree growth or by the constant term",
}


@dataclass
class TraceReport:
    steps: list[CheckRecord] = field(default_factory=list)
    verdict: str = NO_SOLUTION
    a: SkewPoly | None = None
    c: int | None = None

    def add(self, step: str, status: str | bool, witness=None) -> None:
        if isinstance(status, bool):
            status = PASS if status else FAIL
        self.steps.append(CheckRecord(f"trace.{step}", TRACE_ANCHORS[step], status, witness))

    @property
    def exit_code(self) -> int:
        return {NO_SOLUTION: 0, SOLUTION_FOUND: 1, SEARCH_TRUNCATED: 3, PRECONDITION_FAILED: 2}[self.verdict]

    def records(self, prefix: str = "trace") -> list[CheckRecord]:
        out = [CheckRecord(r.check_id.replace("trace", prefix, 1), r.paper_anchor, r.status, r.witness)
               for r in self.steps]
        out.append(CheckRecord(f"{prefix}.verdict", "bounded-degree quasi-inverse nonexistence",
                               PASS if self.verdict == NO_SOLUTION else
                               TRUNCATED if self.verdict == SEARCH_TRUNCATED else FAIL,
                               {"verdict": self.verdict}))
        return out


def _decompose_into_leading(R: FiniteRing, target: int, occurrences) -> list[tuple[int, Word, SkewPoly]] | None:
    """Shortest list of leading-coefficient occurrences summing to ``target`` (breadth first)."""
    moves = {}
    for a, w, rep in occurrences:
        moves.setdefault(a, (a, w, rep))
    moves = [moves[a] for a in sorted(moves)]
    parent: dict[int, tuple[int, tuple] | None] = {R.zero: None}
    frontier = [R.zero]
    while frontier and target not in parent:
        nxt = []
        for s in frontier:
            for mv in moves:
                t = R.add(s, mv[0])
                if t not in parent:
                    parent[t] = (s, mv)
                    nxt.append(t)
        frontier = nxt
    if target not in parent:
        return None
    path = []
    cur = target
    while parent[cur] is not None:
        prev, mv = parent[cur]
        path.append(mv)
        cur = prev
    return list(reversed(path))


def semiprimitivity_trace(ctx: SkewContext, A_gens: Sequence[SkewPoly], d: int = 1, closure_degree: int = 3,
                          window: int = 2, limit: int | None = None) -> TraceReport:
    """Replay the semiprimitivity argument on one instance and search for a bounded quasi-inverse."""
    R = ctx.ring
    tr = TraceReport()
    reasons = []
    if not is_semiprime(R):
        reasons.append({"semiprime": False, "prime_radical": _fmt_set(R, prime_radical(R).elements)})
    if not ctx.automorphic:
        reasons.append({"automorphic": False})
    if not any(A_gens):
        reasons.append({"nonzero_ideal": False})
    if reasons:
        tr.add("preconditions", False, reasons)
        tr.verdict = PRECONDITION_FAILED
        return tr
    tr.add("preconditions", True, {"semiprime": True, "left_goldie": "automatic for finite rings",
                                   "automorphic": True, "generators": [str(g) for g in A_gens]})

    lc = leading_coeff_group(ctx, A_gens, closure_degree, window)
    tr.add("leading_ideal", lc.all_pass, lc.to_json(R))
    if not lc.I - {R.zero}:
        tr.verdict = PRECONDITION_FAILED
        return tr
    I = Ideal(R, lc.I)
    Mset = lc.M

    e = find_regular_element(R, direct_sum(R, I.elements, Mset))
    if e is None:
        tr.add("regular_element", False, {"I_plus_M": "no regular element"})
        tr.verdict = PRECONDITION_FAILED
        return tr
    c, m = next((c, m) for c in I for m in sorted(Mset) if R.add(c, m) == e)
    c_reg = is_regular_in(R, c, I)
    tr.add("regular_element", c_reg, {"c_plus_d": R.format(e), "c": R.format(c), "d": R.format(m)})
    tr.c = c

    l1 = verify_lemma1(R, I, c, prefix="trace.lemma1")
    tr.add("lemma1", l1.report.passed, {r.check_id.rsplit(".", 1)[1]: r.status for r in l1.report})

    parts = _decompose_into_leading(R, c, lc.echelon.occurrences())
    if not parts:
        tr.add("decomposition", False, {"c": R.format(c)})
        tr.verdict = PRECONDITION_FAILED
        return tr
    tr.add("decomposition", True, [{"a": R.format(a), "word": ctx.format_word(w), "omega": str(om)}
                                   for a, w, om in parts])

    family = [frozenset(v for v in om.support() if len(v) == om.degree) for _, _, om in parts]
    t, nus = disjointify(family, ctx.nvars)
    translates = [frozenset(u + nu for u in A) for A, nu in zip(family, nus)]
    disjoint = all(not (translates[i] & translates[j])
                   for i in range(len(parts)) for j in range(i + 1, len(parts)))
    tr.add("disjointify", disjoint and all(len(nu) == t - len(A_w) for (_, A_w, _), nu in zip(parts, nus)),
           {"t": t, "nu": [ctx.format_word(nu) for nu in nus]})

    a = ctx.zero
    for (_, _, om), nu in zip(parts, nus):
        a = a + right_word_mul(om, nu)
    tops = [w + nu for (_, w, _), nu in zip(parts, nus)]
    if a.constant_term != R.zero:
        a = right_word_mul(a, (0,))
        tops = [w + (0,) for w in tops]
    coeff_ok = all(a.coeff(w) == ai for w, (ai, _, _) in zip(tops, parts))
    qctx = quotient_context(ctx, Ideal(R, Mset))
    abar = reduce_poly(a, qctx)
    build_ok = coeff_ok and a.degree >= 1 and a.constant_term == R.zero and abar.degree == a.degree
    tr.add("construct_a", build_ok, {"a": str(a), "degree": a.degree, "image_degree": abar.degree})
    tr.a = a

    res = search_quasi_inverse(ctx, a, d, limit)
    if res.truncated:
        tr.add("quasi_inverse_search", TRUNCATED, {"space": res.space, "limit": max_search() if limit is None else limit})
        tr.add("contradiction", TRUNCATED, {"not_evaluated": "search truncated"})
        tr.verdict = SEARCH_TRUNCATED
        return tr
    found = bool(res.solutions)
    tr.add("quasi_inverse_search", not found,
           {"degree_bound": d, "space": res.space, "solutions": [str(b) for b in res.solutions[:5]]})
    tr.verdict = SOLUTION_FOUND if found else NO_SOLUTION

    counts = {"zero_image": 0, "degree_growth": 0, "constant_term": 0}
    unexplained = None
    a_tops = list(zip(tops, (ai for ai, _, _ in parts)))
    for b, ab, ba in iter_candidates(ctx, a, d):
        if a + b == ab == ba:
            continue
        kind = _contradiction(ctx, qctx, a, abar, b, ab, ba, c, a_tops)
        if kind is None:
            unexplained = unexplained or str(b)
        else:
            counts[kind] += 1
    tr.add("contradiction", unexplained is None, {**counts, **({"unexplained": unexplained} if unexplained else {})})
    return tr


def _contradiction(ctx, qctx, a, abar, b, ab, ba, c, a_tops) -> str | None:
    """Name the step of the argument that rules out b, after confirming it on this instance."""
    R, Rq = ctx.ring, qctx.ring
    bbar = reduce_poly(b, qctx)
    if not bbar:
        return "zero_image" if (not reduce_poly(ab, qctx) and abar) else None
    if bbar.degree >= 1:
        bq, delta_w, _ = leading(bbar)
        b_lift = Rq.lift(bq)
        pi = pi_of_word(ctx, delta_w)
        babar = reduce_poly(ba, qctx)
        coeffs = [Rq.eta(R.mul(b_lift, pi(ai))) for _, ai in a_tops]
        matches = all(babar.coeff(delta_w + w) == cf for (w, _), cf in zip(a_tops, coeffs))
        grows = babar.degree > reduce_poly(a + b, qctx).degree
        return "degree_growth" if matches and any(coeffs) and grows else None
    b0 = b.constant_term
    cb = c * b
    lhs, rhs = c * (a + b), c * ba
    ok = (cb == ctx.constant(R.mul(c, b0)) and R.mul(c, b0) != R.zero
          and lhs.constant_term == R.mul(c, b0) and rhs.constant_term == R.zero)
    return "constant_term" if ok else None
