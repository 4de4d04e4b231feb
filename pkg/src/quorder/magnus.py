"""Bi-invariant total order on free groups via truncated power series.

Each generator maps to ``1 + X_i`` and its inverse to the geometric series
``1 - X_i + X_i^2 - ...`` in non-commuting variables; a word maps to the
product of its letters, truncated at a chosen degree.  Distinct reduced
words u, v separate at degree at most |u| + |v|: the coefficient of the
syllable monomial of ``u^-1 v`` is the product of the syllable exponents,
hence nonzero.

Comparison rule: ``u < v`` iff the first nonzero coefficient of
``series(u^-1 v) - 1`` in graded-lexicographic monomial order is positive.
Equivalently (and as implemented) the series of u and v are compared
coefficient-wise in graded-lex order at a common truncation degree; both
rules pick the same leading difference.  The resulting order is total and
invariant under multiplication on both sides, hence also under conjugation.
"""

from __future__ import annotations

from functools import lru_cache

from .words import Word, invert, multiply

__all__ = ["word_series", "magnus_compare", "monomial_key"]

Monomial = tuple[int, ...]
Series = dict[Monomial, int]


def monomial_key(m: Monomial) -> tuple[int, Monomial]:
    """Graded-lexicographic ranking: total degree, then generator indices."""
    return (len(m), m)


def _letter_series(letter: int, degree: int) -> Series:
    i = abs(letter)
    s: Series = {(): 1}
    if letter > 0:
        if degree >= 1:
            s[(i,)] = 1
    else:
        sign = -1
        for d in range(1, degree + 1):
            s[(i,) * d] = sign
            sign = -sign
    return s


def _mul_series(a: Series, b: Series, degree: int) -> Series:
    out: Series = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            if len(ma) + len(mb) > degree:
                continue
            m = ma + mb
            c = out.get(m, 0) + ca * cb
            if c:
                out[m] = c
            elif m in out:
                del out[m]
    return out


@lru_cache(maxsize=65536)
def _word_series(letters: tuple[int, ...], degree: int) -> Series:
    # Cached and shared; treat the returned dict as read-only.
    s: Series = {(): 1}
    for a in letters:
        s = _mul_series(s, _letter_series(a, degree), degree)
    return s


def word_series(w: Word, degree: int) -> Series:
    """Truncated series of a reduced word (shared cache, do not mutate)."""
    return _word_series(w.letters, degree)


def _compare_at_degree(u: Word, v: Word, degree: int) -> int | None:
    su = word_series(u, degree)
    sv = word_series(v, degree)
    keys = sorted(set(su) | set(sv), key=monomial_key)
    for m in keys:
        if not m:
            continue
        d = sv.get(m, 0) - su.get(m, 0)
        if d:
            return -1 if d > 0 else 1
    return None


def magnus_compare(u: Word, v: Word) -> int:
    """-1 if u < v, 0 if equal, +1 if u > v.

    Truncation degree escalates from small values; |u| + |v| always decides.
    """
    if u == v:
        return 0
    top = len(u) + len(v)
    ladder = [1, 2, 3]
    while ladder[-1] < top:
        ladder.append(min(2 * ladder[-1], top))
    for degree in ladder:
        result = _compare_at_degree(u, v, degree)
        if result is not None:
            return result
    # Unreachable for distinct reduced words; guarded via the seam word.
    w = multiply(invert(u), v)
    result = _compare_at_degree(Word(), w, len(w))
    if result is None:
        raise AssertionError(f"failed to separate {u} and {v}")
    return result
