"""Ring maps: endomorphisms, automorphisms, sigma-derivations and q-skew structure."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .errors import CounterexampleFound, PreconditionError, RingSpecError, StabilityViolation
from .rings import FiniteRing, Ideal, QuotientRing, TruncPolyRing

UNVALIDATED = "unvalidated"
ENDOMORPHISM = "endomorphism"
AUTOMORPHISM = "automorphism"
SIGMA_DERIVATION = "sigma-derivation"


@dataclass(frozen=True, eq=False)
class RingMap:
    """A total map on the elements of ``ring`` stored as a lookup table.

    ``codomain`` is only set for maps into a different ring (the canonical
    epimorphism onto a quotient).  ``sigma`` is the twisting endomorphism of
    a sigma-derivation.
    """

    ring: FiniteRing
    table: tuple
    tag: str = UNVALIDATED
    sigma: "RingMap | None" = None
    codomain: FiniteRing | None = None
    name: str = ""

    def __call__(self, a: int) -> int:
        return self.table[a]

    @property
    def target(self) -> FiniteRing:
        return self.codomain if self.codomain is not None else self.ring

    def same_table(self, other: "RingMap") -> bool:
        return self.table == other.table

    def is_identity(self) -> bool:
        return self.table == tuple(self.ring.elements())

    def is_zero(self) -> bool:
        return all(v == self.target.zero for v in self.table)

    @property
    def is_homomorphism(self) -> bool:
        return self.tag in (ENDOMORPHISM, AUTOMORPHISM)

    def image(self, elems) -> frozenset:
        return frozenset(self.table[a] for a in elems)

    def __repr__(self):
        return f"RingMap({self.name or self.tag} on {self.ring})"

    def to_json(self) -> dict:
        return {"kind": "table", "values": list(self.table)}


def identity_map(R: FiniteRing) -> RingMap:
    return RingMap(R, tuple(R.elements()), AUTOMORPHISM, name="id")


def zero_map(R: FiniteRing) -> RingMap:
    return RingMap(R, (R.zero,) * R.order, name="zero")


def compose(f: RingMap, g: RingMap) -> RingMap:
    """f after g."""
    tag = UNVALIDATED
    if f.tag == g.tag and f.tag in (ENDOMORPHISM, AUTOMORPHISM):
        tag = f.tag
    elif f.is_homomorphism and g.is_homomorphism:
        tag = ENDOMORPHISM
    return RingMap(g.ring, tuple(f.table[v] for v in g.table), tag, codomain=f.codomain)


def power(f: RingMap, k: int) -> RingMap:
    out = identity_map(f.ring)
    for _ in range(k):
        out = compose(f, out)
    return out


def inverse(f: RingMap) -> RingMap:
    if f.tag != AUTOMORPHISM:
        raise PreconditionError("only validated automorphisms are inverted")
    inv = [0] * f.ring.order
    for a, v in enumerate(f.table):
        inv[v] = a
    return RingMap(f.ring, tuple(inv), AUTOMORPHISM)


# ------------------------------------------------------------------ constructors

def construct_map(R: FiniteRing, spec: dict, sigma: RingMap | None = None) -> RingMap:
    """Build a map from its JSON spec.

    ``sigma`` supplies the twist for the derivation kinds when the spec does
    not carry its own ``"sigma"`` entry; it defaults to the identity.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise RingSpecError(f"map spec must be an object with a 'kind', got {spec!r}")
    kind = spec["kind"]
    if kind in ("inner_delta", "inner_sigma_derivation", "var_derivation") and "sigma" in spec:
        sigma = construct_map(R, spec["sigma"])
        if sigma.tag == UNVALIDATED:
            sigma = validate(R, sigma, ENDOMORPHISM)
    if sigma is None:
        sigma = identity_map(R)

    if kind == "identity":
        return identity_map(R)
    if kind == "zero":
        return zero_map(R)
    if kind == "table":
        values = [R.parse(v) for v in spec.get("values", [])]
        if len(values) != R.order:
            raise RingSpecError(f"table map needs {R.order} values, got {len(values)}")
        return RingMap(R, tuple(values), name="table")
    if kind == "inner_auto":
        u = R.parse(spec["u"])
        if not R.is_unit(u):
            raise RingSpecError(f"inner_auto needs a unit, {R.format(u)} is not invertible")
        ui = R.inverse(u)
        table = tuple(R.mul(R.mul(u, r), ui) for r in R.elements())
        return RingMap(R, table, AUTOMORPHISM, name=f"inner_auto({R.format(u)})")
    if kind in ("inner_delta", "inner_sigma_derivation"):
        b = R.parse(spec["b"])
        table = tuple(R.sub(R.mul(b, r), R.mul(sigma(r), b)) for r in R.elements())
        tag = SIGMA_DERIVATION if sigma.is_homomorphism else UNVALIDATED
        return RingMap(R, table, tag, sigma=sigma, name=f"inner_delta({R.format(b)})")
    if kind == "scale_var":
        return _scale_var(R, R.parse(spec["c"]))
    if kind == "var_derivation":
        return _var_derivation(R, R.parse(spec["f"]), sigma)
    raise RingSpecError(f"unknown map kind {kind!r}")


def _require_trunc(R: FiniteRing, kind: str) -> TruncPolyRing:
    if not isinstance(R, TruncPolyRing):
        raise RingSpecError(f"{kind} is only defined on trunc_poly rings, not {R}")
    return R


def _scale_var(R: FiniteRing, c: int) -> RingMap:
    R = _require_trunc(R, "scale_var")
    if not R.is_unit(c):
        raise RingSpecError(f"scale_var needs an invertible factor, {R.format(c)} is not")
    image_t = R.mul(c, R.t)
    powers = [R.power(image_t, i) for i in range(R.k)]
    table = []
    for a in R.elements():
        acc = R.zero
        for i, coeff in enumerate(R.decode(a)):
            acc = R.add(acc, R.mul(R.encode([coeff]), powers[i]))
        table.append(acc)
    return RingMap(R, tuple(table), name=f"scale_var({R.format(c)})")


def _var_derivation(R: FiniteRing, f: int, sigma: RingMap) -> RingMap:
    """The sigma-derivation with t -> f, extended by additivity and the twisted Leibniz rule."""
    R = _require_trunc(R, "var_derivation")
    t = R.t
    st = sigma(t)
    # delta(t^j) = delta(t) t^(j-1) + sigma(t) delta(t^(j-1)), with delta(t^0) = 0
    dpow = [R.zero]
    for j in range(1, R.k + 1):
        dpow.append(R.add(R.mul(f, R.power(t, j - 1)), R.mul(st, dpow[j - 1])))
    if dpow[R.k] != R.zero:
        # the extension must vanish on the relation t^k = 0
        raise RingSpecError(
            f"var_derivation t -> {R.format(f)} is inconsistent with t^{R.k} = 0 "
            f"(it would send t^{R.k} to {R.format(dpow[R.k])})")
    table = []
    for a in R.elements():
        acc = R.zero
        for j, coeff in enumerate(R.decode(a)):
            if coeff:
                acc = R.add(acc, R.multiple(coeff, dpow[j]))
        table.append(acc)
    return RingMap(R, tuple(table), sigma=sigma, name=f"var_derivation({R.format(f)})")


# ------------------------------------------------------------------ validation

def validate(R: FiniteRing, m: RingMap, claim: str, sigma: RingMap | None = None) -> RingMap:
    """Exhaustively check ``claim`` for ``m`` and return it with the upgraded tag.

    Raises CounterexampleFound carrying the first failing pair in encoding order.
    """
    if m.ring is not R:
        raise PreconditionError("map belongs to a different ring")
    if claim == SIGMA_DERIVATION:
        sigma = sigma if sigma is not None else m.sigma
        if sigma is None:
            sigma = identity_map(R)
        if not sigma.is_homomorphism:
            raise PreconditionError("the twist of a sigma-derivation must be a validated endomorphism")
        _check_additive(R, m)
        for a, b in itertools.product(R.elements(), repeat=2):
            lhs = m(R.mul(a, b))
            rhs = R.add(R.mul(m(a), b), R.mul(sigma(a), m(b)))
            if lhs != rhs:
                raise CounterexampleFound("sigma-Leibniz rule", a, b, lhs, rhs)
        return replace(m, tag=SIGMA_DERIVATION, sigma=sigma)
    if claim not in (ENDOMORPHISM, AUTOMORPHISM):
        raise PreconditionError(f"unknown claim {claim!r}")
    for a, b in itertools.product(R.elements(), repeat=2):
        lhs, rhs = m(R.add(a, b)), R.add(m(a), m(b))
        if lhs != rhs:
            raise CounterexampleFound("additivity", a, b, lhs, rhs)
        lhs, rhs = m(R.mul(a, b)), R.mul(m(a), m(b))
        if lhs != rhs:
            raise CounterexampleFound("multiplicativity", a, b, lhs, rhs)
    if m(R.one) != R.one:
        raise CounterexampleFound("unit preservation", R.one, None, m(R.one), R.one)
    bijective = len(set(m.table)) == R.order
    if claim == AUTOMORPHISM and not bijective:
        seen: dict[int, int] = {}
        for a, v in enumerate(m.table):
            if v in seen:
                raise CounterexampleFound("injectivity", seen[v], a, v, v)
            seen[v] = a
    return replace(m, tag=AUTOMORPHISM if bijective else ENDOMORPHISM)


def _check_additive(R: FiniteRing, m: RingMap) -> None:
    for a, b in itertools.product(R.elements(), repeat=2):
        lhs, rhs = m(R.add(a, b)), R.add(m(a), m(b))
        if lhs != rhs:
            raise CounterexampleFound("additivity", a, b, lhs, rhs)


def validate_endomorphism(R: FiniteRing, m: RingMap) -> RingMap:
    """Validate as endomorphism; the tag becomes automorphism when bijective."""
    if m.tag == AUTOMORPHISM:
        return m
    return validate(R, m, ENDOMORPHISM)


# ------------------------------------------------------------------ q-skew

@dataclass(frozen=True)
class QSkewCertificate:
    q: int
    sigma: RingMap
    delta: RingMap
    verified: bool = True


def q_skew_check(sigma: RingMap, delta: RingMap, candidates=None) -> QSkewCertificate | None:
    """First candidate q with delta(sigma(r)) = q * sigma(delta(r)) for every r."""
    R = sigma.ring
    if sigma.tag != AUTOMORPHISM:
        raise PreconditionError("q-skew check needs an automorphism")
    if delta.tag != SIGMA_DERIVATION or delta.ring is not R:
        raise PreconditionError("q-skew check needs a validated sigma-derivation on the same ring")
    if candidates is None:
        candidates = R.central_units()
    lhs = [delta(sigma(r)) for r in R.elements()]
    rhs = [sigma(delta(r)) for r in R.elements()]
    for q in sorted(candidates):
        if not (R.is_unit(q) and R.is_central(q)):
            continue
        if all(lhs[r] == R.mul(q, rhs[r]) for r in R.elements()):
            return QSkewCertificate(q, sigma, delta)
    return None


def q_factorial(R: FiniteRing, q: int, n: int) -> int:
    """prod_{i=1..n} (1 + q + ... + q^(i-1)) in R."""
    out = R.one
    geometric = R.zero
    qpow = R.one
    for _ in range(n):
        geometric = R.add(geometric, qpow)
        qpow = R.mul(qpow, q)
        out = R.mul(out, geometric)
    return out


# ------------------------------------------------------------------ quotients

def canonical_epimorphism(Rq: QuotientRing) -> RingMap:
    return RingMap(Rq.base, Rq.eta_table, ENDOMORPHISM, codomain=Rq, name="eta")


def check_stable(m: RingMap, M: Ideal | frozenset, what: str = "map") -> None:
    """Raise StabilityViolation unless m(M) is contained in M."""
    elems = M.elements if isinstance(M, Ideal) else M
    for a in sorted(elems):
        if m(a) not in elems:
            raise StabilityViolation(a, m(a), what)


def induce_on_quotient(Rq: QuotientRing, m: RingMap, sigma_bar: RingMap | None = None) -> RingMap:
    """The map induced by ``m`` on ``Rq = R/M``; requires m(M) inside M.

    Tags carry over: automorphisms with m(M) = M induce automorphisms, and a
    sigma-derivation induces a derivation twisted by the induced sigma.
    """
    R, M = Rq.base, Rq.ideal
    if m.ring is not R:
        raise PreconditionError("map and quotient are over different rings")
    check_stable(m, M)
    table = tuple(Rq.eta(m(Rq.lift(a))) for a in Rq.elements())
    # well-defined by stability; every coset member must agree
    tag = UNVALIDATED
    if m.tag == AUTOMORPHISM:
        if m.image(M.elements) != M.elements:
            missing = min(M.elements - m.image(M.elements))
            raise StabilityViolation(missing, missing, "automorphism (image of M is smaller than M)")
        tag = AUTOMORPHISM
    elif m.tag == ENDOMORPHISM:
        tag = ENDOMORPHISM
    elif m.tag == SIGMA_DERIVATION:
        if sigma_bar is None:
            sigma_bar = induce_on_quotient(Rq, m.sigma)
        return RingMap(Rq, table, SIGMA_DERIVATION, sigma=sigma_bar, name=f"{m.name}~")
    return RingMap(Rq, table, tag, name=f"{m.name}~")
