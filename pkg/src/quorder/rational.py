"""Exact rational serialization helpers.

Rationals are always serialized as ``"p/q"`` with ``q >= 1``, never as
floating point.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["frac_to_str", "parse_frac"]


def frac_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s: str) -> Fraction:
    parts = s.strip().split("/")
    if len(parts) != 2:
        raise ValueError(f"expected 'p/q' rational, got {s!r}")
    try:
        num, den = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ValueError(f"expected 'p/q' rational, got {s!r}") from exc
    if den <= 0:
        raise ValueError(f"denominator must be positive in {s!r}")
    return Fraction(num, den)
