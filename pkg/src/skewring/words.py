"""Words of the free monoid on a finite ordered alphabet.

A word is a tuple of 0-based variable indices; the empty tuple is the
identity.  Words are ordered by degree first and then lexicographically by
the alphabet order, which is exactly the ordering of ``word_key``.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .errors import PreconditionError

Word = tuple

SEPARATOR = "·"


def word_key(w: Word) -> tuple:
    return (len(w), w)


def compare_lex(u: Word, v: Word) -> int:
    """-1, 0 or 1 as u precedes, equals or follows v."""
    if len(u) != len(v):
        return -1 if len(u) < len(v) else 1
    for a, b in zip(u, v):
        if a != b:
            return -1 if a < b else 1
    return 0


def words_of_degree(d: int, s: int) -> list[Word]:
    """All words of length ``s`` over ``d`` letters, in increasing order."""
    return list(itertools.product(range(d), repeat=s))


def words_up_to(d: int, n: int) -> list[Word]:
    return [w for s in range(n + 1) for w in words_of_degree(d, s)]


def format_word(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    sep = "" if all(len(n) == 1 for n in names) else SEPARATOR
    return sep.join(names[i] for i in w)


def parse_word(text: str, names: Sequence[str]) -> Word:
    text = text.strip()
    if text in ("1", ""):
        return ()
    index = {n: i for i, n in enumerate(names)}
    if all(len(n) == 1 for n in names):
        letters = list(text.replace(SEPARATOR, ""))
    else:
        letters = text.split(SEPARATOR)
    try:
        return tuple(index[c] for c in letters)
    except KeyError as exc:
        raise ValueError(f"unknown variable {exc} in word {text!r}") from None


def disjointify(family: Sequence[set | frozenset | list], d: int) -> tuple[int, list[Word]]:
    """Right translates making a family of uniform-degree word sets disjoint.

    Returns ``(t, nus)`` such that every ``A_i nu_i`` consists of words of
    degree ``t``, ``len(nu_i) == t - n_i`` and the translates are pairwise
    disjoint.  Sets are processed in non-increasing degree order (stable on
    index); ``omega_i`` is the i-th word of the least length ``s`` with
    ``d**s > m`` and ``nu_i = x0^(n_1 - n_i) omega_i``.
    """
    m = len(family)
    if m == 0:
        return 0, []
    degrees = []
    for A in family:
        A = list(A)
        if not A:
            raise PreconditionError("disjointify needs nonempty sets")
        n = len(A[0])
        if any(len(w) != n for w in A):
            raise PreconditionError("every set must consist of words of one degree")
        degrees.append(n)
    if d < 2 and m >= 2:
        raise PreconditionError("disjointify needs at least two letters when m >= 2")
    s = 1
    while d >= 2 and d ** s <= m:
        s += 1
    order = sorted(range(m), key=lambda i: -degrees[i])
    n1 = degrees[order[0]]
    omegas = itertools.product(range(d), repeat=s)
    nus: list[Word] = [()] * m
    for i in order:
        omega = next(omegas)
        nus[i] = (0,) * (n1 - degrees[i]) + omega
    return n1 + s, nus
