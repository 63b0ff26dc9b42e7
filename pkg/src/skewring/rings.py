"""Finite unital rings with canonical integer encodings, their ideals and radicals.

Every ring encodes its elements as the integers ``0..order-1``:

* ``mod``: residues.
* ``matrix``: row-major entries as base-``|base|`` digits, entry (0, 0) most significant.
* ``product``: ``left * |right| + right``.
* ``trunc_poly``: ``sum(c_i * p**i)``, so ``t`` is encoded as ``p``.
* ``quotient``: cosets numbered by their least base encoding, in increasing order.
* ``table``: the indices of the supplied tables.

Small rings (order up to ``TABLE_LIMIT``) precompute full addition and
multiplication tables; larger ones compute through the structural rules.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import NotAnIdeal, PreconditionError, RingAxiomError, RingSpecError

DEFAULT_ORDER_CAP = 1 << 16
TABLE_LIMIT = 256
EXHAUSTIVE_AXIOM_LIMIT = 64
# independent nilpotent-ideal route for the prime radical is quadratic in the order
RADICAL_CROSSCHECK_LIMIT = 1024


class FiniteRing:
    kind = "abstract"

    def __init__(self, order: int):
        self.order = order
        self.zero = 0
        self.one = 1
        self._cache: dict = {}

    # structural rules, overridden per kind
    def _add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _neg(self, a: int) -> int:
        raise NotImplementedError

    def add(self, a: int, b: int) -> int:
        return self._add(a, b)

    def mul(self, a: int, b: int) -> int:
        return self._mul(a, b)

    def neg(self, a: int) -> int:
        return self._neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _build_tables(self) -> None:
        if self.order > TABLE_LIMIT:
            return
        n = range(self.order)
        add_t = [[self._add(a, b) for b in n] for a in n]
        mul_t = [[self._mul(a, b) for b in n] for a in n]
        neg_t = [self._neg(a) for a in n]
        self.add = lambda a, b: add_t[a][b]
        self.mul = lambda a, b: mul_t[a][b]
        self.neg = neg_t.__getitem__

    def elements(self) -> range:
        return range(self.order)

    def __contains__(self, a: object) -> bool:
        return isinstance(a, int) and 0 <= a < self.order

    def power(self, a: int, k: int) -> int:
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def multiple(self, n: int, a: int) -> int:
        """The element ``a + a + ... + a`` (``n`` copies); ``n`` may be negative."""
        if n < 0:
            return self.multiple(-n, self.neg(a))
        out = self.zero
        for _ in range(n):
            out = self.add(out, a)
        return out

    def units(self) -> dict[int, int]:
        """Map from each unit to its two-sided inverse."""
        if "units" not in self._cache:
            inv = {}
            for a in self.elements():
                for b in self.elements():
                    if self.mul(a, b) == self.one and self.mul(b, a) == self.one:
                        inv[a] = b
                        break
            self._cache["units"] = inv
        return self._cache["units"]

    def is_unit(self, a: int) -> bool:
        return a in self.units()

    def inverse(self, a: int) -> int:
        try:
            return self.units()[a]
        except KeyError:
            raise RingSpecError(f"{self.format(a)} is not a unit of {self}") from None

    def is_central(self, a: int) -> bool:
        return all(self.mul(a, r) == self.mul(r, a) for r in self.elements())

    def is_commutative(self) -> bool:
        return all(self.is_central(a) for a in ring_generators(self))

    def central_units(self) -> list[int]:
        return sorted(u for u in self.units() if self.is_central(u))

    # text forms
    def format(self, a: int) -> str:
        return str(a)

    def parse(self, text: str | int) -> int:
        if isinstance(text, int):
            return self.check_element(text)
        text = text.strip()
        if text.lstrip("-").isdigit():
            return self.check_element(int(text))
        if text.startswith("(") and text.endswith(")"):
            return self.parse(text[1:-1])
        raise RingSpecError(f"cannot parse element literal {text!r} in {self}")

    def check_element(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise RingSpecError(f"element {a} out of range for a ring of order {self.order}")
        return a

    def spec(self) -> dict:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{self} order={self.order}>"


class ModRing(FiniteRing):
    kind = "mod"

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise RingSpecError(f"mod ring needs n >= 2, got {n!r}")
        super().__init__(n)
        self.n = n

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return -a % self.n

    _add, _mul, _neg = add, mul, neg

    def encode(self, value: int) -> int:
        return value % self.n

    def decode(self, a: int) -> int:
        return a

    def spec(self):
        return {"kind": "mod", "n": self.n}

    def __str__(self):
        return f"Z/{self.n}"


class ProductRing(FiniteRing):
    kind = "product"

    def __init__(self, left: FiniteRing, right: FiniteRing):
        super().__init__(left.order * right.order)
        self.left = left
        self.right = right
        self.zero = self.encode((left.zero, right.zero))
        self.one = self.encode((left.one, right.one))
        self._build_tables()

    def encode(self, pair) -> int:
        a, b = pair
        return a * self.right.order + b

    def decode(self, a: int) -> tuple[int, int]:
        return divmod(a, self.right.order)

    def _add(self, a, b):
        (a1, a2), (b1, b2) = self.decode(a), self.decode(b)
        return self.encode((self.left.add(a1, b1), self.right.add(a2, b2)))

    def _mul(self, a, b):
        (a1, a2), (b1, b2) = self.decode(a), self.decode(b)
        return self.encode((self.left.mul(a1, b1), self.right.mul(a2, b2)))

    def _neg(self, a):
        a1, a2 = self.decode(a)
        return self.encode((self.left.neg(a1), self.right.neg(a2)))

    def format(self, a):
        a1, a2 = self.decode(a)
        return f"({self.left.format(a1)},{self.right.format(a2)})"

    def parse(self, text):
        if isinstance(text, str):
            s = text.strip()
            if s.startswith("(") and s.endswith(")"):
                parts = split_top_level(s[1:-1], ",")
                if len(parts) == 2:
                    return self.encode((self.left.parse(parts[0]), self.right.parse(parts[1])))
        return super().parse(text)

    def spec(self):
        return {"kind": "product", "left": self.left.spec(), "right": self.right.spec()}

    def __str__(self):
        return f"{self.left} x {self.right}"


class MatrixRing(FiniteRing):
    kind = "matrix"

    def __init__(self, k: int, base: FiniteRing, order_cap: int = DEFAULT_ORDER_CAP):
        if not isinstance(k, int) or k < 1:
            raise RingSpecError(f"matrix size must be >= 1, got {k!r}")
        if base.order ** (k * k) > order_cap:
            raise RingSpecError(f"matrix({k}, {base}) has order above the cap {order_cap}")
        super().__init__(base.order ** (k * k))
        self.k = k
        self.base = base
        self.zero = self.encode([[base.zero] * k for _ in range(k)])
        self.one = self.encode([[base.one if i == j else base.zero for j in range(k)] for i in range(k)])
        self._build_tables()

    def encode(self, rows) -> int:
        out = 0
        for entry in itertools.chain.from_iterable(rows):
            out = out * self.base.order + entry
        return out

    def decode(self, a: int) -> list[list[int]]:
        flat = []
        for _ in range(self.k * self.k):
            a, d = divmod(a, self.base.order)
            flat.append(d)
        flat.reverse()
        return [flat[i * self.k:(i + 1) * self.k] for i in range(self.k)]

    def _add(self, a, b):
        A, B = self.decode(a), self.decode(b)
        return self.encode([[self.base.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(A, B)])

    def _neg(self, a):
        return self.encode([[self.base.neg(x) for x in row] for row in self.decode(a)])

    def _mul(self, a, b):
        A, B = self.decode(a), self.decode(b)
        base, k = self.base, self.k
        C = []
        for i in range(k):
            row = []
            for j in range(k):
                acc = base.zero
                for m in range(k):
                    acc = base.add(acc, base.mul(A[i][m], B[m][j]))
                row.append(acc)
            C.append(row)
        return self.encode(C)

    def format(self, a):
        return "[" + ",".join("[" + ",".join(self.base.format(x) for x in row) + "]"
                              for row in self.decode(a)) + "]"

    def parse(self, text):
        if isinstance(text, str):
            s = text.strip()
            if s.startswith("[[") and s.endswith("]]"):
                rows = [split_top_level(r.strip()[1:-1], ",") for r in split_top_level(s[1:-1], ",")]
                if len(rows) != self.k or any(len(r) != self.k for r in rows):
                    raise RingSpecError(f"matrix literal {text!r} is not {self.k}x{self.k}")
                return self.encode([[self.base.parse(x) for x in r] for r in rows])
        return super().parse(text)

    def spec(self):
        return {"kind": "matrix", "k": self.k, "base": self.base.spec()}

    def __str__(self):
        return f"M_{self.k}({self.base})"


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


class TruncPolyRing(FiniteRing):
    """F_p[t]/(t^k)."""

    kind = "trunc_poly"

    def __init__(self, p: int, k: int, order_cap: int = DEFAULT_ORDER_CAP):
        if not isinstance(p, int) or not _is_prime(p):
            raise RingSpecError(f"trunc_poly needs a prime p, got {p!r}")
        if not isinstance(k, int) or k < 1:
            raise RingSpecError(f"trunc_poly needs k >= 1, got {k!r}")
        if p ** k > order_cap:
            raise RingSpecError(f"F_{p}[t]/(t^{k}) has order above the cap {order_cap}")
        super().__init__(p ** k)
        self.p = p
        self.k = k
        self._build_tables()

    @property
    def t(self) -> int:
        return self.encode([0, 1]) if self.k > 1 else self.zero

    def encode(self, coeffs) -> int:
        coeffs = list(coeffs)[:self.k]
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs))

    def decode(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def _add(self, a, b):
        return self.encode([x + y for x, y in zip(self.decode(a), self.decode(b))])

    def _neg(self, a):
        return self.encode([-x for x in self.decode(a)])

    def _mul(self, a, b):
        A, B = self.decode(a), self.decode(b)
        C = [0] * self.k
        for i, x in enumerate(A):
            if x:
                for j in range(self.k - i):
                    C[i + j] += x * B[j]
        return self.encode(C)

    def format(self, a):
        terms = []
        for i, c in reversed(list(enumerate(self.decode(a)))):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "t" if i == 1 else f"t^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    def parse(self, text):
        if isinstance(text, str) and "t" in text:
            s = text.strip()
            if s.startswith("(") and s.endswith(")"):
                s = s[1:-1]
            coeffs = [0] * self.k
            for mono in split_top_level(s, "+"):
                mono = mono.strip()
                head, _, tail = mono.partition("t")
                c = int(head) if head else 1
                if not mono.count("t"):
                    coeffs[0] += c
                    continue
                e = int(tail[1:]) if tail.startswith("^") else 1
                if tail and not tail.startswith("^"):
                    raise RingSpecError(f"cannot parse {text!r}")
                if e < self.k:
                    coeffs[e] += c
            return self.encode(coeffs)
        return super().parse(text)

    def spec(self):
        return {"kind": "trunc_poly", "p": self.p, "k": self.k}

    def __str__(self):
        return f"F_{self.p}[t]/(t^{self.k})"


class QuotientRing(FiniteRing):
    """``base / ideal``; ``eta`` is the canonical epimorphism as a lookup table."""

    kind = "quotient"

    def __init__(self, base: FiniteRing, ideal: "Ideal"):
        if ideal.ring is not base:
            raise NotAnIdeal("ideal belongs to a different ring")
        check_ideal(base, ideal.elements)
        if len(ideal) == base.order:
            raise RingSpecError("quotient by the whole ring is the zero ring, which is excluded")
        rep_of = [min(base.add(r, m) for m in ideal.elements) for r in base.elements()]
        self.reps = sorted(set(rep_of))
        index = {r: i for i, r in enumerate(self.reps)}
        self.eta_table = tuple(index[r] for r in rep_of)
        super().__init__(len(self.reps))
        self.base = base
        self.ideal = ideal
        self.zero = self.eta_table[base.zero]
        self.one = self.eta_table[base.one]
        self._build_tables()

    def eta(self, r: int) -> int:
        return self.eta_table[r]

    def lift(self, a: int) -> int:
        return self.reps[a]

    def _add(self, a, b):
        return self.eta_table[self.base.add(self.reps[a], self.reps[b])]

    def _mul(self, a, b):
        return self.eta_table[self.base.mul(self.reps[a], self.reps[b])]

    def _neg(self, a):
        return self.eta_table[self.base.neg(self.reps[a])]

    def format(self, a):
        return f"[{self.base.format(self.reps[a])}]"

    def parse(self, text):
        if isinstance(text, str):
            s = text.strip()
            if s.startswith("[") and s.endswith("]") and not s.startswith("[["):
                return self.eta(self.base.parse(s[1:-1]))
        return super().parse(text)

    def spec(self):
        gens = sorted(self.ideal.elements)
        return {"kind": "quotient", "base": self.base.spec(), "ideal_gens": gens}

    def __str__(self):
        return f"({self.base})/I{len(self.ideal)}"


class TableRing(FiniteRing):
    kind = "table"

    def __init__(self, add_table, mul_table, one: int):
        n = len(add_table)
        if n < 2 or len(mul_table) != n:
            raise RingSpecError("table ring needs square add/mul tables of equal size >= 2")
        for t in (add_table, mul_table):
            for row in t:
                if len(row) != n or any(not (isinstance(v, int) and 0 <= v < n) for v in row):
                    raise RingSpecError("table entries must be element indices")
        super().__init__(n)
        self.add_table = tuple(tuple(r) for r in add_table)
        self.mul_table = tuple(tuple(r) for r in mul_table)
        zeros = [z for z in range(n) if all(self.add_table[z][a] == a for a in range(n))]
        if not zeros:
            raise RingAxiomError("additive identity", ())
        self.zero = zeros[0]
        if not 0 <= one < n:
            raise RingSpecError("one is not an element index")
        self.one = one
        negs = []
        for a in range(n):
            inv = [b for b in range(n) if self.add_table[a][b] == self.zero]
            if not inv:
                raise RingAxiomError("additive inverse", (a,))
            negs.append(inv[0])
        self._neg_table = tuple(negs)

    def add(self, a, b):
        return self.add_table[a][b]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def neg(self, a):
        return self._neg_table[a]

    _add, _mul, _neg = add, mul, neg

    def spec(self):
        return {"kind": "table", "order": self.order, "add": [list(r) for r in self.add_table],
                "mul": [list(r) for r in self.mul_table], "one": self.one}

    def __str__(self):
        return f"Table{self.order}"


def split_top_level(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside of parentheses and brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def construct_ring(spec: dict, order_cap: int = DEFAULT_ORDER_CAP, validate: bool = True,
                   seed: int = 0) -> FiniteRing:
    """Build a ring from its JSON spec; see the module docstring for encodings."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise RingSpecError(f"ring spec must be an object with a 'kind', got {spec!r}")
    kind = spec["kind"]
    try:
        if kind == "mod":
            ring = ModRing(spec["n"])
        elif kind == "matrix":
            ring = MatrixRing(spec["k"], construct_ring(spec["base"], order_cap, False), order_cap)
        elif kind == "product":
            left = construct_ring(spec["left"], order_cap, False)
            right = construct_ring(spec["right"], order_cap, False)
            if left.order * right.order > order_cap:
                raise RingSpecError(f"product order above the cap {order_cap}")
            ring = ProductRing(left, right)
        elif kind == "trunc_poly":
            ring = TruncPolyRing(spec["p"], spec["k"], order_cap)
        elif kind == "quotient":
            base = construct_ring(spec["base"], order_cap, False)
            gens = [base.parse(g) for g in spec.get("ideal_gens", [])]
            ring = QuotientRing(base, ideal_closure(base, gens))
        elif kind == "table":
            ring = TableRing(spec["add"], spec["mul"], spec["one"])
            if "order" in spec and spec["order"] != ring.order:
                raise RingSpecError("table order does not match the table size")
        else:
            raise RingSpecError(f"unknown ring kind {kind!r}")
    except KeyError as exc:
        raise RingSpecError(f"ring spec of kind {kind!r} is missing field {exc}") from None
    if ring.order > order_cap:
        raise RingSpecError(f"ring order {ring.order} above the cap {order_cap}")
    if validate:
        validate_ring(ring, seed=seed)
    return ring


def validate_ring(R: FiniteRing, samples: int = 1000, seed: int = 0) -> None:
    """Check the ring axioms; exhaustive for small rings, ``samples`` random triples otherwise."""
    if R.one == R.zero:
        raise RingAxiomError("one != zero", (R.one,))
    elems = R.elements()
    if R.order <= EXHAUSTIVE_AXIOM_LIMIT:
        triples: Iterable = itertools.product(elems, repeat=3)
        singles: Iterable = elems
    else:
        rng = random.Random(seed)
        triples = [(rng.randrange(R.order), rng.randrange(R.order), rng.randrange(R.order))
                   for _ in range(samples)]
        singles = sorted({a for tr in triples for a in tr})
    for a in singles:
        if R.add(a, R.zero) != a:
            raise RingAxiomError("additive identity", (a,))
        if R.add(a, R.neg(a)) != R.zero:
            raise RingAxiomError("additive inverse", (a,))
        if R.mul(R.one, a) != a or R.mul(a, R.one) != a:
            raise RingAxiomError("multiplicative identity", (a,))
    for a, b, c in triples:
        if R.add(a, b) != R.add(b, a):
            raise RingAxiomError("additive commutativity", (a, b))
        if R.add(R.add(a, b), c) != R.add(a, R.add(b, c)):
            raise RingAxiomError("additive associativity", (a, b, c))
        if R.mul(R.mul(a, b), c) != R.mul(a, R.mul(b, c)):
            raise RingAxiomError("multiplicative associativity", (a, b, c))
        if R.mul(a, R.add(b, c)) != R.add(R.mul(a, b), R.mul(a, c)):
            raise RingAxiomError("left distributivity", (a, b, c))
        if R.mul(R.add(a, b), c) != R.add(R.mul(a, c), R.mul(b, c)):
            raise RingAxiomError("right distributivity", (a, b, c))


# ------------------------------------------------------------------ ideals

@dataclass(frozen=True)
class Ideal:
    """A two-sided ideal stored as its full element set."""

    ring: FiniteRing
    elements: frozenset

    def __contains__(self, a) -> bool:
        return a in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def is_zero(self) -> bool:
        return self.elements == {self.ring.zero}

    def is_whole(self) -> bool:
        return len(self.elements) == self.ring.order

    def sorted(self) -> list[int]:
        return sorted(self.elements)

    def __repr__(self) -> str:
        return f"Ideal({self.ring}, {self.sorted()})"


def additive_closure(R: FiniteRing, gens: Iterable[int], start: Iterable[int] = ()) -> frozenset:
    """Additive subgroup generated by ``gens`` together with the subgroup ``start``."""
    group = set(start) or {R.zero}
    moves = [g for g in set(gens) if g != R.zero]
    frontier = list(group)
    while frontier:
        new = []
        for a in frontier:
            for g in moves:
                b = R.add(a, g)
                if b not in group:
                    group.add(b)
                    new.append(b)
        frontier = new
    return frozenset(group)


def _subring(R: FiniteRing, gens: Iterable[int]) -> frozenset:
    S = additive_closure(R, [R.one, *gens])
    while True:
        prods = {R.mul(a, b) for a in S for b in S} - S
        if not prods:
            return S
        S = additive_closure(R, prods, S)


def ring_generators(R: FiniteRing) -> tuple[int, ...]:
    """A small set generating R as a unital ring, chosen greedily in encoding order."""
    if "generators" not in R._cache:
        gens: list[int] = []
        sub = _subring(R, gens)
        for a in R.elements():
            if len(sub) == R.order:
                break
            if a not in sub:
                gens.append(a)
                sub = _subring(R, gens)
        R._cache["generators"] = tuple(gens) or (R.one,)
    return R._cache["generators"]


def ideal_closure(R: FiniteRing, gens: Iterable[int]) -> Ideal:
    """Smallest two-sided ideal containing ``gens``."""
    gens = list(gens)
    for g in gens:
        if g not in R:
            raise RingSpecError(f"{g!r} is not an element of {R}")
    rgens = ring_generators(R)
    S = additive_closure(R, gens)
    while True:
        prods = {R.mul(r, s) for r in rgens for s in S} | {R.mul(s, r) for r in rgens for s in S}
        prods -= S
        if not prods:
            return Ideal(R, S)
        S = additive_closure(R, prods, S)


def check_ideal(R: FiniteRing, elements: Iterable[int]) -> Ideal:
    """Return ``elements`` as an Ideal, or raise NotAnIdeal with a witness."""
    E = frozenset(elements)
    if R.zero not in E:
        raise NotAnIdeal("does not contain zero")
    for a in sorted(E):
        if R.neg(a) not in E:
            raise NotAnIdeal("not closed under negation", (a,))
        for b in sorted(E):
            if R.add(a, b) not in E:
                raise NotAnIdeal("not closed under addition", (a, b))
        for r in R.elements():
            if R.mul(r, a) not in E:
                raise NotAnIdeal("not closed under left multiplication", (r, a))
            if R.mul(a, r) not in E:
                raise NotAnIdeal("not closed under right multiplication", (a, r))
    return Ideal(R, E)


def is_ideal(R: FiniteRing, elements: Iterable[int]) -> bool:
    try:
        check_ideal(R, elements)
    except NotAnIdeal:
        return False
    return True


def zero_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, frozenset({R.zero}))


def whole_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, frozenset(R.elements()))


def annihilators(R: FiniteRing, A: Iterable[int]) -> tuple[frozenset, frozenset, frozenset]:
    """(l.ann, r.ann, ann) of the subset ``A``."""
    A = list(set(A))
    z = R.zero
    lann = frozenset(r for r in R.elements() if all(R.mul(r, a) == z for a in A))
    rann = frozenset(r for r in R.elements() if all(R.mul(a, r) == z for a in A))
    return lann, rann, lann & rann


def ideal_product(R: FiniteRing, I: Iterable[int], J: Iterable[int]) -> frozenset:
    """All finite sums of products ij."""
    J = list(J)
    return additive_closure(R, {R.mul(i, j) for i in I for j in J})


def ideal_power(R: FiniteRing, I: Iterable[int], n: int) -> frozenset:
    I = frozenset(I)
    P = I
    for _ in range(n - 1):
        P = ideal_product(R, P, I)
    return P


def nilpotency_index(R: FiniteRing, I: Ideal | Iterable[int]) -> int | None:
    """Least n with I^n = 0, or None when the powers stabilize at a nonzero ideal."""
    I = frozenset(I.elements if isinstance(I, Ideal) else I)
    zero = frozenset({R.zero})
    if I <= zero:
        return 1
    P, n = I, 1
    while True:
        nxt = ideal_product(R, P, I)
        n += 1
        if nxt == zero:
            return n
        if nxt == P:
            return None
        P = nxt


def _radical_by_nilpotent_ideals(R: FiniteRing) -> frozenset:
    # a lies in the prime radical iff the ideal it generates is nilpotent (finite case)
    out = set()
    for a in R.elements():
        if a in out:
            continue
        principal = ideal_closure(R, [a])
        if nilpotency_index(R, principal) is not None:
            out |= principal.elements
    return additive_closure(R, out)


def _cached_prime(R: FiniteRing) -> frozenset:
    if "prime" not in R._cache:
        R._cache["prime"] = _radical_by_nilpotent_ideals(R)
    return R._cache["prime"]


def jacobson_radical(R: FiniteRing) -> Ideal:
    """{a : 1 - ra is a unit for every r}.

    For a finite ring this coincides with the prime and nil radicals; the
    result is asserted to be a nilpotent ideal and, for rings up to
    ``RADICAL_CROSSCHECK_LIMIT`` elements, to agree with the sum of all
    nilpotent ideals computed independently.
    """
    if "jacobson" in R._cache:
        return R._cache["jacobson"]
    units = R.units()
    J = frozenset(a for a in R.elements()
                  if all(R.sub(R.one, R.mul(r, a)) in units for r in R.elements()))
    assert is_ideal(R, J), "quasi-regular set is not an ideal: ring tables are inconsistent"
    assert nilpotency_index(R, J) is not None, "radical of a finite ring must be nilpotent"
    if R.order <= RADICAL_CROSSCHECK_LIMIT:
        P = _cached_prime(R)
        assert P == J, "Jacobson and prime radical disagree on a finite ring"
    ideal = Ideal(R, J)
    R._cache["jacobson"] = ideal
    return ideal


def prime_radical(R: FiniteRing) -> Ideal:
    """Largest nilpotent ideal; equal to the Jacobson radical for finite rings."""
    if R.order > RADICAL_CROSSCHECK_LIMIT:
        return jacobson_radical(R)
    return Ideal(R, _cached_prime(R))


def is_semiprime(R: FiniteRing) -> bool:
    return prime_radical(R).is_zero()


def is_regular_in(R: FiniteRing, c: int, I: Ideal | Iterable[int]) -> bool:
    """True iff no nonzero s in I has cs = 0 or sc = 0."""
    elems = I.elements if isinstance(I, Ideal) else frozenset(I)
    if c not in elems:
        raise PreconditionError(f"{R.format(c)} is not in the given ideal")
    z = R.zero
    return all(R.mul(c, s) != z and R.mul(s, c) != z for s in elems if s != z)


def is_regular(R: FiniteRing, c: int) -> bool:
    z = R.zero
    return all(R.mul(c, s) != z and R.mul(s, c) != z for s in R.elements() if s != z)


def find_regular_element(R: FiniteRing, J: Iterable[int]) -> int | None:
    """First element of J, in encoding order, with trivial annihilators in R."""
    for c in sorted(set(J)):
        if is_regular(R, c):
            return c
    return None


def direct_sum(R: FiniteRing, I: Iterable[int], J: Iterable[int]) -> frozenset:
    J = list(J)
    return frozenset(R.add(a, b) for a in I for b in J)
