"""Free skew extensions R[X; sigma, delta] over a finite ring.

Elements are kept in the normal form ``sum r_w w`` with left coefficients,
which makes the ring a free left R-module on the words.  Products are
normalized with the relation ``x r = sigma_x(r) x + delta_x(r)``.
"""

from __future__ import annotations

import random
from typing import Callable, Iterable, Mapping, Sequence

from . import maps as M
from .errors import (CompatibilityViolation, ContextMismatch, DegreeBoundExceeded,
                     NotAutomorphic, PreconditionError, RingSpecError)
from .maps import RingMap
from .rings import FiniteRing, Ideal, QuotientRing, nilpotency_index, prime_radical, split_top_level
from .words import Word, format_word, parse_word, word_key, words_up_to

DEFAULT_DEGREE_CAP = 8
QUASI_INVERSE_BOUND_CAP = 32


class SkewContext:
    """One ring R[X; sigma, delta]: base ring, ordered variables and the per-variable maps."""

    def __init__(self, ring: FiniteRing, variables: Sequence[str], sigma: Sequence[RingMap],
                 delta: Sequence[RingMap], degree_cap: int = DEFAULT_DEGREE_CAP):
        variables = tuple(variables)
        if not variables:
            raise RingSpecError("a free skew extension needs at least one variable")
        if len(set(variables)) != len(variables):
            raise RingSpecError(f"variable names must be distinct: {variables}")
        if any(not v or "*" in v or "+" in v or v == "1" for v in variables):
            raise RingSpecError(f"invalid variable names {variables}")
        if not (len(sigma) == len(delta) == len(variables)):
            raise RingSpecError("need exactly one sigma and one delta per variable")
        for s, d in zip(sigma, delta):
            if s.ring is not ring or d.ring is not ring:
                raise RingSpecError("maps must live on the context's ring")
            if not s.is_homomorphism:
                raise PreconditionError(f"{s} is not a validated endomorphism")
            if d.tag != M.SIGMA_DERIVATION or d.sigma is None or d.sigma.table != s.table:
                raise PreconditionError(f"{d} is not validated against its sigma")
        self.ring = ring
        self.variables = variables
        self.sigma = tuple(sigma)
        self.delta = tuple(delta)
        self.degree_cap = degree_cap
        self.automorphic = all(s.tag == M.AUTOMORPHISM for s in sigma)
        self._push_cache: dict = {}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __repr__(self):
        return f"SkewContext({self.ring}, {list(self.variables)})"

    # constructors
    def poly(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]] = ()) -> "SkewPoly":
        return SkewPoly(self, terms)

    @property
    def zero(self) -> "SkewPoly":
        return SkewPoly(self, {})

    @property
    def one(self) -> "SkewPoly":
        return SkewPoly(self, {(): self.ring.one})

    def constant(self, r: int) -> "SkewPoly":
        return SkewPoly(self, {(): r})

    def monomial(self, r: int, w: Word) -> "SkewPoly":
        return SkewPoly(self, {tuple(w): r})

    def var(self, name: str | int) -> "SkewPoly":
        i = name if isinstance(name, int) else self.variables.index(name)
        return self.monomial(self.ring.one, (i,))

    def word(self, w: Word) -> "SkewPoly":
        return self.monomial(self.ring.one, w)

    # ring interface, used when the context is the target of an evaluation
    def add(self, f: "SkewPoly", g: "SkewPoly") -> "SkewPoly":
        return poly_add(f, g)

    def mul(self, f: "SkewPoly", g: "SkewPoly") -> "SkewPoly":
        return poly_mul(f, g)

    # text forms
    def format_word(self, w: Word) -> str:
        return format_word(w, self.variables)

    def parse_word(self, text: str) -> Word:
        return parse_word(text, self.variables)

    def parse(self, text: str) -> "SkewPoly":
        return parse_poly(self, text)

    def push(self, w: Word, s: int) -> dict:
        """Normal form of the word ``w`` times the constant ``s`` (memoized)."""
        key = (w, s)
        hit = self._push_cache.get(key)
        if hit is not None:
            return hit
        R = self.ring
        if s == R.zero:
            out = {}
        elif not w:
            out = {(): s}
        else:
            x = w[0]
            sig, dl = self.sigma[x], self.delta[x]
            out = {}
            for E, c in self.push(w[1:], s).items():
                a = sig(c)
                if a != R.zero:
                    xe = (x,) + E
                    out[xe] = R.add(out.get(xe, R.zero), a)
                b = dl(c)
                if b != R.zero:
                    out[E] = R.add(out.get(E, R.zero), b)
            out = {k: v for k, v in out.items() if v != R.zero}
        self._push_cache[key] = out
        return out


class SkewPoly:
    """Immutable element of a free skew extension; terms are sorted by descending word order."""

    __slots__ = ("ctx", "terms", "_items")

    def __init__(self, ctx: SkewContext, terms=()):
        R = ctx.ring
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for w, c in items:
            w = tuple(w)
            if c not in R:
                raise RingSpecError(f"coefficient {c!r} is not an element of {R}")
            if c != R.zero:
                clean[w] = c
        self.ctx = ctx
        self.terms = clean
        self._items = tuple(sorted(clean.items(), key=lambda t: word_key(t[0]), reverse=True))

    @classmethod
    def _raw(cls, ctx: SkewContext, clean: dict) -> "SkewPoly":
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = clean
        obj._items = tuple(sorted(clean.items(), key=lambda t: word_key(t[0]), reverse=True))
        return obj

    def items(self) -> tuple[tuple[Word, int], ...]:
        return self._items

    def support(self) -> list[Word]:
        return [w for w, _ in self._items]

    def coeff(self, w: Word) -> int:
        return self.terms.get(tuple(w), self.ctx.ring.zero)

    @property
    def constant_term(self) -> int:
        return self.coeff(())

    @property
    def degree(self) -> int:
        """Largest word length in the support; -1 for the zero polynomial."""
        return len(self._items[0][0]) if self._items else -1

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self._items)

    def __add__(self, other):
        return poly_add(self, other)

    def __sub__(self, other):
        return poly_add(self, poly_neg(other))

    def __neg__(self):
        return poly_neg(self)

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.ctx.constant(other)
        return poly_mul(self, other)

    def __rmul__(self, r):
        if isinstance(r, int):
            return scalar_mul_left(r, self)
        return NotImplemented

    def __pow__(self, k: int):
        out = self.ctx.one
        for _ in range(k):
            out = poly_mul(out, self)
        return out

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"SkewPoly({format_poly(self)})"

    def to_json(self) -> list[dict]:
        return [{"word": self.ctx.format_word(w), "coeff": c} for w, c in self._items]


def _same(f: SkewPoly, g: SkewPoly) -> SkewContext:
    if not isinstance(f, SkewPoly) or not isinstance(g, SkewPoly) or f.ctx is not g.ctx:
        raise ContextMismatch("operands belong to different skew extensions")
    return f.ctx


def poly_add(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    ctx = _same(f, g)
    R = ctx.ring
    out = dict(f.terms)
    for w, c in g.terms.items():
        v = R.add(out.get(w, R.zero), c)
        if v == R.zero:
            out.pop(w, None)
        else:
            out[w] = v
    return SkewPoly._raw(ctx, out)


def poly_neg(f: SkewPoly) -> SkewPoly:
    R = f.ctx.ring
    return SkewPoly._raw(f.ctx, {w: R.neg(c) for w, c in f.terms.items()})


def scalar_mul_left(r: int, f: SkewPoly) -> SkewPoly:
    R = f.ctx.ring
    out = {}
    for w, c in f.terms.items():
        v = R.mul(r, c)
        if v != R.zero:
            out[w] = v
    return SkewPoly._raw(f.ctx, out)


def poly_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Normal form of fg: each left word is pushed through each right coefficient, then words concatenate."""
    ctx = _same(f, g)
    R = ctx.ring
    cap = ctx.degree_cap
    out: dict = {}
    for D, r in f.terms.items():
        for G, s in g.terms.items():
            for E, c in ctx.push(D, s).items():
                v = R.mul(r, c)
                if v == R.zero:
                    continue
                W = E + G
                if len(W) > cap:
                    raise DegreeBoundExceeded(len(W), cap)
                out[W] = R.add(out.get(W, R.zero), v)
    return SkewPoly._raw(ctx, {w: c for w, c in out.items() if c != R.zero})


def right_word_mul(f: SkewPoly, w: Word) -> SkewPoly:
    """f times the monomial 1*w: plain concatenation on the right."""
    ctx = f.ctx
    if f and f.degree + len(w) > ctx.degree_cap:
        raise DegreeBoundExceeded(f.degree + len(w), ctx.degree_cap)
    return SkewPoly._raw(ctx, {D + tuple(w): c for D, c in f.terms.items()})


def leading(f: SkewPoly) -> tuple[int, Word, SkewPoly]:
    """(leading coefficient, leading word, the strictly smaller remainder)."""
    if not f:
        raise PreconditionError("the zero polynomial has no leading term")
    w, c = f.items()[0]
    tail = dict(f.terms)
    del tail[w]
    return c, w, SkewPoly._raw(f.ctx, tail)


def pi_of_word(ctx: SkewContext, w: Word, inverse: bool = False) -> RingMap:
    """sigma_{x1} o ... o sigma_{xn} for w = x1...xn (its inverse when requested)."""
    out = M.identity_map(ctx.ring)
    for x in reversed(w):
        out = M.compose(ctx.sigma[x], out)
    if inverse:
        if not ctx.automorphic:
            raise NotAutomorphic("inverting a word twist needs every sigma to be an automorphism")
        out = M.inverse(out)
    return out


# ------------------------------------------------------------------ universal property

class _FiniteTarget:
    def __init__(self, T: FiniteRing):
        self.T = T
        self.zero = T.zero
        self.one = T.one
        self.add = T.add
        self.mul = T.mul


def _target(T):
    return _FiniteTarget(T) if isinstance(T, FiniteRing) else T


def evaluation_hom(ctx: SkewContext, psi: Callable[[int], object], phi, target) -> Callable[[SkewPoly], object]:
    """The homomorphism S -> T extending psi on R and phi on the variables.

    ``target`` is a FiniteRing or another SkewContext; ``phi`` maps variable
    index or name to an element of the target.  The compatibility law
    phi(x) psi(r) = psi(sigma_x(r)) phi(x) + psi(delta_x(r)) is checked for
    every variable and every element before the map is returned.
    """
    T = _target(target)
    images = _phi_images(ctx, phi)
    for x in range(ctx.nvars):
        for r in ctx.ring.elements():
            lhs = T.mul(images[x], psi(r))
            rhs = T.add(T.mul(psi(ctx.sigma[x](r)), images[x]), psi(ctx.delta[x](r)))
            if lhs != rhs:
                raise CompatibilityViolation(ctx.variables[x], r)
    word_images: dict = {(): T.one}

    def word_image(w: Word):
        if w not in word_images:
            word_images[w] = T.mul(images[w[0]], word_image(w[1:]))
        return word_images[w]

    def evaluate(f: SkewPoly):
        if f.ctx is not ctx:
            raise ContextMismatch("polynomial from another context")
        acc = T.zero
        for w, c in f.items():
            acc = T.add(acc, T.mul(psi(c), word_image(w)))
        return acc

    return evaluate


def _phi_images(ctx: SkewContext, phi) -> list:
    if isinstance(phi, Mapping):
        out = []
        for i, name in enumerate(ctx.variables):
            if i in phi:
                out.append(phi[i])
            elif name in phi:
                out.append(phi[name])
            else:
                raise PreconditionError(f"no image given for variable {name}")
        return out
    out = list(phi)
    if len(out) != ctx.nvars:
        raise PreconditionError("need one image per variable")
    return out


def evaluate_hom(ctx: SkewContext, psi, phi, f: SkewPoly, target):
    return evaluation_hom(ctx, psi, phi, target)(f)


# ------------------------------------------------------------------ operator representation

def _hat(ctx: SkewContext, x: int, elem: dict) -> dict:
    R = ctx.ring
    out: dict = {}
    for D, r in elem.items():
        for key, v in (((x,) + D, ctx.sigma[x](r)), (D, ctx.delta[x](r))):
            if v != R.zero:
                out[key] = R.add(out.get(key, R.zero), v)
    return {k: v for k, v in out.items() if v != R.zero}


def operator_rep(ctx: SkewContext, f: SkewPoly, target: SkewPoly | Mapping[Word, int],
                 bound: int | None = None) -> SkewPoly:
    """Apply the additive endomorphism of R<X> attached to ``f`` to a module element.

    A variable acts by ``sum r_w w -> sum sigma_x(r_w) x w + delta_x(r_w) w`` and
    a coefficient acts by left multiplication; this never calls the normal-form
    product, so it serves as an independent oracle for it.
    """
    bound = ctx.degree_cap if bound is None else bound
    elem = dict(target.terms) if isinstance(target, SkewPoly) else {tuple(k): v for k, v in target.items()}
    tdeg = max((len(w) for w in elem), default=0)
    if f and f.degree + tdeg > bound:
        raise DegreeBoundExceeded(f.degree + tdeg, bound)
    R = ctx.ring
    out: dict = {}
    for w, r in f.terms.items():
        image = elem
        for x in reversed(w):
            image = _hat(ctx, x, image)
        for D, c in image.items():
            v = R.mul(r, c)
            if v != R.zero:
                out[D] = R.add(out.get(D, R.zero), v)
    return SkewPoly(ctx, out)


# ------------------------------------------------------------------ quotients and quasi-inverses

def quotient_context(ctx: SkewContext, ideal: Ideal) -> SkewContext:
    """(R/M)[X; induced sigma, induced delta]; raises StabilityViolation when M is not stable."""
    Rq = QuotientRing(ctx.ring, ideal)
    sig = [M.induce_on_quotient(Rq, s) for s in ctx.sigma]
    dl = [M.induce_on_quotient(Rq, d, sigma_bar=sb) for d, sb in zip(ctx.delta, sig)]
    return SkewContext(Rq, ctx.variables, sig, dl, ctx.degree_cap)


def reduce_poly(f: SkewPoly, qctx: SkewContext) -> SkewPoly:
    """Coefficientwise image of f in the quotient context."""
    Rq = qctx.ring
    return SkewPoly(qctx, {w: Rq.eta(c) for w, c in f.terms.items()})


def default_nilpotency_bound(ctx: SkewContext, a: SkewPoly) -> int:
    n = nilpotency_index(ctx.ring, prime_radical(ctx.ring)) or 1
    return min(QUASI_INVERSE_BOUND_CAP, n * (max(a.degree, 0) + 1))


def quasi_inverse_nilpotent(ctx: SkewContext, a: SkewPoly, bound: int | None = None) -> SkewPoly | None:
    """b = -(a + a^2 + ... + a^(k-1)) when a^k = 0 for some k <= bound, else None."""
    if a.ctx is not ctx:
        raise ContextMismatch("polynomial from another context")
    if bound is None:
        bound = default_nilpotency_bound(ctx, a)
    partial = ctx.zero
    p = a
    for k in range(1, bound + 1):
        if not p:
            b = -partial
            ab, ba = a * b, b * a
            assert a + b == ab == ba, "geometric quasi-inverse failed its defining equations"
            return b
        partial = partial + p
        if k < bound:
            p = p * a
    return None


# ------------------------------------------------------------------ text forms

def format_poly(f: SkewPoly) -> str:
    if not f:
        return "0"
    return " + ".join(f"{c}*{f.ctx.format_word(w)}" for w, c in f.items())


def parse_poly(ctx: SkewContext, text: str) -> SkewPoly:
    """Parse ``"3*xy + 1*x + 2*1"``; coefficient literals may use the ring's element syntax."""
    text = text.strip()
    if text in ("", "0"):
        return ctx.zero
    R = ctx.ring
    acc: dict = {}
    for term in split_top_level(text, "+"):
        term = term.strip()
        if not term:
            raise ValueError(f"empty term in {text!r}")
        if "*" in term:
            coeff_text, word_text = term.rsplit("*", 1)
            c = R.parse(coeff_text.strip())
            w = ctx.parse_word(word_text)
        else:
            try:
                w, c = ctx.parse_word(term), R.one
            except ValueError:
                w, c = (), R.parse(term)
        acc[w] = R.add(acc.get(w, R.zero), c)
    return SkewPoly(ctx, acc)


def poly_from_json(ctx: SkewContext, data: list[dict]) -> SkewPoly:
    acc: dict = {}
    R = ctx.ring
    for item in data:
        w = ctx.parse_word(item["word"])
        acc[w] = R.add(acc.get(w, R.zero), R.parse(item["coeff"]))
    return SkewPoly(ctx, acc)


def random_poly(ctx: SkewContext, rng: random.Random, max_degree: int, max_terms: int = 4,
                coeffs: Sequence[int] | None = None) -> SkewPoly:
    words = words_up_to(ctx.nvars, max_degree)
    pool = list(coeffs) if coeffs is not None else list(ctx.ring.elements())
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        terms[rng.choice(words)] = rng.choice(pool)
    return SkewPoly(ctx, terms)


# ------------------------------------------------------------------ construction

def make_context(ring: FiniteRing, variables: Sequence[str], sigma_specs: Sequence, delta_specs: Sequence,
                 degree_cap: int = DEFAULT_DEGREE_CAP) -> SkewContext:
    """Validate the per-variable maps and bundle them into a context.

    Specs may be JSON map specs or RingMaps.  Each sigma is validated as an
    endomorphism (tagged automorphism when bijective), each delta as a
    derivation twisted by its sigma; CounterexampleFound propagates.
    """
    if len(sigma_specs) != len(variables) or len(delta_specs) != len(variables):
        raise RingSpecError("need one sigma and one delta spec per variable")
    sigmas, deltas = [], []
    for s_spec, d_spec in zip(sigma_specs, delta_specs):
        s = s_spec if isinstance(s_spec, RingMap) else M.construct_map(ring, s_spec)
        s = M.validate_endomorphism(ring, s)
        d = d_spec if isinstance(d_spec, RingMap) else M.construct_map(ring, d_spec, sigma=s)
        d = M.validate(ring, d, M.SIGMA_DERIVATION, sigma=s)
        sigmas.append(s)
        deltas.append(d)
    return SkewContext(ring, variables, sigmas, deltas, degree_cap)
