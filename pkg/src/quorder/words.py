"""Freely reduced words over an indexed generating set x1, x2, ...

A letter is a nonzero integer: ``+i`` stands for the generator ``x_i`` and
``-i`` for its inverse.  A word is freely reduced when no letter is adjacent
to its own inverse; the empty word is the group identity.

Words serialize as dot-separated letters, e.g. ``"x1.x2^-1"``; the empty
word is ``"e"``.  The fixed letter order is ``x1 < x1^-1 < x2 < x2^-1 < ...``
and enumeration is graded: by length first, then lexicographically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = [
    "Word",
    "EMPTY",
    "letter_key",
    "reduce_letters",
    "multiply",
    "invert",
    "conjugate",
    "common_prefix",
    "words_of_length",
    "enumerate_words",
    "word_to_str",
    "parse_word",
]


def letter_key(letter: int) -> tuple[int, int]:
    """Rank of a letter in the fixed order x1 < x1^-1 < x2 < x2^-1 < ..."""
    return (abs(letter), 0 if letter > 0 else 1)


@dataclass(frozen=True, slots=True)
class Word:
    """An immutable freely reduced word.

    Construction validates reducedness; use :func:`reduce_letters` to build a
    word from an arbitrary letter sequence.
    """

    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        prev = 0
        for a in self.letters:
            if not isinstance(a, int) or a == 0:
                raise ValueError("letters must be nonzero integers")
            if a == -prev:
                raise ValueError(f"not freely reduced: {self.letters!r}")
            prev = a

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __str__(self) -> str:
        return word_to_str(self)

    def sort_key(self) -> tuple:
        """Graded-lexicographic key: length first, then letter order."""
        return (len(self.letters), tuple(letter_key(a) for a in self.letters))

    def max_index(self) -> int:
        """Largest generator index appearing, 0 for the empty word."""
        return max((abs(a) for a in self.letters), default=0)


EMPTY = Word()


def reduce_letters(letters: Sequence[int]) -> Word:
    """Freely reduce a letter sequence.

    Idempotent; the result represents the same group element.
    """
    stack: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("letters must be nonzero integers")
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return Word(tuple(stack))


def multiply(a: Word, b: Word) -> Word:
    """Reduced product a*b.  Cancellation only happens at the seam."""
    stack = list(a.letters)
    for x in b.letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return Word(tuple(stack))


def invert(a: Word) -> Word:
    return Word(tuple(-x for x in reversed(a.letters)))


def conjugate(a: Word, g: Word) -> Word:
    """g^-1 * a * g, reduced."""
    return multiply(multiply(invert(g), a), g)


def common_prefix(a: Word, b: Word) -> tuple[Word, Word, Word]:
    """Factor a = w*u and b = w*v with w the longest common prefix.

    The concatenations have no cancellation at the seams, and the first
    letters of u and v differ (or one of them is empty).
    """
    k = 0
    for x, y in zip(a.letters, b.letters):
        if x != y:
            break
        k += 1
    return (
        Word(a.letters[:k]),
        Word(a.letters[k:]),
        Word(b.letters[k:]),
    )


def _ordered_letters(n_generators: int) -> list[int]:
    out: list[int] = []
    for i in range(1, n_generators + 1):
        out.append(i)
        out.append(-i)
    return out


def words_of_length(n_generators: int, length: int) -> Iterator[Word]:
    """All reduced words of exactly the given length, in lexicographic order."""
    if n_generators < 1:
        raise ValueError("need at least one generator")
    if length < 0:
        raise ValueError("length must be nonnegative")
    alphabet = _ordered_letters(n_generators)

    def rec(prefix: list[int]) -> Iterator[Word]:
        if len(prefix) == length:
            yield Word(tuple(prefix))
            return
        last = prefix[-1] if prefix else 0
        for a in alphabet:
            if a == -last:
                continue
            prefix.append(a)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def enumerate_words(n_generators: int, max_length: int) -> list[Word]:
    """All reduced words of length <= max_length in graded order."""
    out: list[Word] = []
    for length in range(max_length + 1):
        out.extend(words_of_length(n_generators, length))
    return out


_LETTER_RE = re.compile(r"^x([1-9][0-9]*)(\^-1)?$")


def word_to_str(w: Word) -> str:
    if not w.letters:
        return "e"
    parts = []
    for a in w.letters:
        parts.append(f"x{a}" if a > 0 else f"x{-a}^-1")
    return ".".join(parts)


def parse_word(s: str) -> Word:
    """Inverse of :func:`word_to_str`; rejects non-reduced input."""
    s = s.strip()
    if s == "e":
        return EMPTY
    letters: list[int] = []
    for pos, token in enumerate(s.split(".")):
        m = _LETTER_RE.match(token)
        if m is None:
            raise ValueError(f"bad letter {token!r} at position {pos} in {s!r}")
        idx = int(m.group(1))
        letters.append(-idx if m.group(2) else idx)
    return Word(tuple(letters))
