"""Exception types shared across the package."""

from __future__ import annotations


class SkewRingError(Exception):
    """Base class for every error raised by this package."""


class RingSpecError(SkewRingError, ValueError):
    """A ring or map specification is malformed or violates a constructor precondition."""


class RingAxiomError(SkewRingError):
    def __init__(self, law: str, witness: tuple):
        self.law = law
        self.witness = witness
        super().__init__(f"ring axiom '{law}' fails at {witness}")


class NotAnIdeal(SkewRingError, ValueError):
    def __init__(self, reason: str, witness: tuple = ()):
        self.witness = witness
        super().__init__(reason)


class CounterexampleFound(SkewRingError):
    """A claimed identity of a ring map fails on a concrete pair of elements."""

    def __init__(self, law: str, a: int, b: int | None, lhs: int, rhs: int):
        self.law = law
        self.a = a
        self.b = b
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"{law} fails at a={a}, b={b}: {lhs} != {rhs}")

    def witness(self) -> dict:
        return {"law": self.law, "a": self.a, "b": self.b, "lhs": self.lhs, "rhs": self.rhs}


class StabilityViolation(SkewRingError):
    """A map sends an element of an ideal outside of it."""

    def __init__(self, a: int, image: int, what: str = "map"):
        self.a = a
        self.image = image
        super().__init__(f"{what} sends {a} in the ideal to {image}, which is outside it")

    def witness(self) -> dict:
        return {"a": self.a, "image": self.image}


class ContextMismatch(SkewRingError, ValueError):
    pass


class DegreeBoundExceeded(SkewRingError):
    def __init__(self, degree: int, cap: int):
        self.degree = degree
        self.cap = cap
        super().__init__(f"normal form reaches degree {degree}, above the cap {cap}")


class CompatibilityViolation(SkewRingError):
    """phi(x) psi(r) != psi(sigma_x(r)) phi(x) + psi(delta_x(r)) for some variable and element."""

    def __init__(self, variable: str, r: int):
        self.variable = variable
        self.r = r
        super().__init__(f"homomorphism data incompatible at variable {variable}, r={r}")


class NotAutomorphic(SkewRingError):
    pass


class PreconditionError(SkewRingError):
    pass
