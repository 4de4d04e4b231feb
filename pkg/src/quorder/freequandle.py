"""The free quandle FQ(x1..xn) in normal form.

Elements are pairs ``x_i^w`` (generator index, conjugator word) subject to
``q^w = q^{qw}``; the normal form strips the maximal leading power of the
own generator from the conjugator.  The quandle operation is

    q^w * r^v   = q^{w v^-1 r v}
    q^w *' r^v  = q^{w v^-1 r^-1 v}      (dual operation)

Every element embeds into the free group as the conjugate ``w^-1 x_i w``;
this embedding is injective on normal forms and intertwines the quandle
operation with conjugation.

Textual form: ``"x1^[x2.x1^-1]"``, with ``"x1^[e]"`` for an empty conjugator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .words import (
    EMPTY,
    Word,
    conjugate,
    invert,
    multiply,
    parse_word,
    word_to_str,
    words_of_length,
)

__all__ = [
    "FqElem",
    "normalize",
    "fq_op",
    "fq_inv_op",
    "norm",
    "ball",
    "as_group_element",
    "fq_to_str",
    "parse_fq",
    "FreeQuandle",
]


@dataclass(frozen=True, slots=True)
class FqElem:
    """Normal-form free quandle element x_gen^conj."""

    gen: int
    conj: Word

    def __post_init__(self) -> None:
        if self.gen < 1:
            raise ValueError("generator index must be >= 1")
        if self.conj.letters and abs(self.conj.letters[0]) == self.gen:
            raise ValueError(
                f"not a normal form: conjugator {self.conj} starts with x{self.gen}^±1"
            )

    def __str__(self) -> str:
        return fq_to_str(self)

    def sort_key(self) -> tuple:
        return (len(self.conj), self.gen, self.conj.sort_key())


def normalize(gen: int, word: Word) -> FqElem:
    """Strip the maximal leading x_gen^±1 run and build the element."""
    letters = word.letters
    k = 0
    while k < len(letters) and abs(letters[k]) == gen:
        k += 1
    return FqElem(gen, Word(letters[k:]))


def fq_op(a: FqElem, b: FqElem) -> FqElem:
    """a * b in the free quandle, in normal form."""
    w = multiply(multiply(multiply(a.conj, invert(b.conj)), Word((b.gen,))), b.conj)
    return normalize(a.gen, w)


def fq_inv_op(a: FqElem, b: FqElem) -> FqElem:
    """a *' b, the dual operation; inverse of ``* b`` on the left argument."""
    w = multiply(multiply(multiply(a.conj, invert(b.conj)), Word((-b.gen,))), b.conj)
    return normalize(a.gen, w)


def norm(a: FqElem) -> int:
    """Reduced length of the embedded conjugate w^-1 x_gen w.

    For a normal form there is no cancellation, so this is 2|w| + 1.
    """
    return 2 * len(a.conj) + 1


def as_group_element(a: FqElem) -> Word:
    """Embed into the free group: the reduced conjugate conj^-1 x_gen conj."""
    return conjugate(Word((a.gen,)), a.conj)


def ball(n_generators: int, radius: int) -> list[FqElem]:
    """All elements of norm <= radius, in the fixed graded order.

    Order: conjugator length, then generator index, then conjugator
    lexicographically.  Deterministic and duplicate-free.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    max_len = (radius - 1) // 2
    out: list[FqElem] = []
    for length in range(max_len + 1):
        per_gen: dict[int, list[Word]] = {i: [] for i in range(1, n_generators + 1)}
        for w in words_of_length(n_generators, length):
            first = abs(w.letters[0]) if w.letters else 0
            for i in range(1, n_generators + 1):
                if first != i:
                    per_gen[i].append(w)
        for i in range(1, n_generators + 1):
            out.extend(FqElem(i, w) for w in per_gen[i])
    return out


_FQ_RE = re.compile(r"^x([1-9][0-9]*)\^\[(.*)\]$")


def fq_to_str(a: FqElem) -> str:
    return f"x{a.gen}^[{word_to_str(a.conj)}]"


def parse_fq(s: str) -> FqElem:
    """Inverse of :func:`fq_to_str`; rejects non-normal forms."""
    m = _FQ_RE.match(s.strip())
    if m is None:
        raise ValueError(f"bad free quandle element {s!r}")
    return FqElem(int(m.group(1)), parse_word(m.group(2)))


class FreeQuandle:
    """Quandle interface over :class:`FqElem` values."""

    def __init__(self, n_generators: int):
        if n_generators < 1:
            raise ValueError("need at least one generator")
        self.n_generators = n_generators

    def op(self, a: FqElem, b: FqElem) -> FqElem:
        return fq_op(a, b)

    def inv_op(self, a: FqElem, b: FqElem) -> FqElem:
        return fq_inv_op(a, b)

    def generator(self, i: int) -> FqElem:
        if not 1 <= i <= self.n_generators:
            raise ValueError(f"generator index {i} out of range")
        return FqElem(i, EMPTY)

    def ball(self, radius: int) -> list[FqElem]:
        return ball(self.n_generators, radius)
