"""Finite quandles, finite groups, standard constructions, and predicates.

A quandle is a set with a binary operation ``*`` such that

    Q1: q*q = q
    Q2: for each q, r there is a unique s with q = s*r
    Q3: (q*r)*s = (q*s)*(r*s)

Q2 yields the dual operation ``*'`` with (q*r)*'r = q = (q*'r)*r.  Finite
quandles are stored as an n-by-n table with ``table[q][r] = q*r``; every
column must be a permutation.

The latin ladder at a point p considers the left translation
L_p(r) = p*r: *latin* means L_p bijective, *semi-latin* means injective,
and *weak-latin* means every pair q != r is separated by some p.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Protocol, Sequence

__all__ = [
    "QuandleOps",
    "TableFormatError",
    "AxiomReport",
    "check_axioms",
    "FiniteQuandle",
    "FiniteGroup",
    "trivial_quandle",
    "conj_quandle",
    "core_quandle",
    "dehn_quandle",
    "DehnCriterionReport",
    "alexander_op",
    "alexander_solve_left",
    "AlexanderQuandle",
    "LatinReport",
    "is_latin_at",
    "is_semi_latin_at",
    "is_weak_latin",
    "load_table_json",
    "table_to_json",
]


class QuandleOps(Protocol):
    """Minimal quandle interface: the operation and its dual."""

    def op(self, q, r): ...

    def inv_op(self, q, r): ...


class TableFormatError(ValueError):
    """Malformed table file or table data."""


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class AxiomReport:
    """All quandle axiom violations of a candidate table."""

    q1_violations: list[int] = field(default_factory=list)
    q2_violations: list[tuple[int, int, int]] = field(default_factory=list)
    q3_violations: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.q1_violations or self.q2_violations or self.q3_violations)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "q1_violations": self.q1_violations,
            "q2_violations": [list(t) for t in self.q2_violations],
            "q3_violations": [list(t) for t in self.q3_violations],
        }


def _validate_square(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    if n == 0:
        raise TableFormatError("empty table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise TableFormatError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise TableFormatError(f"entry [{i}][{j}] = {v!r} out of range 0..{n - 1}")
    return n


def check_axioms(table: Sequence[Sequence[int]]) -> AxiomReport:
    """Report every Q1/Q2/Q3 violation of a square 0-based table.

    Q2 violations are witnessed as (r, q, q') with q*r = q'*r and q != q'.
    """
    n = _validate_square(table)
    report = AxiomReport()
    for q in range(n):
        if table[q][q] != q:
            report.q1_violations.append(q)
    for r in range(n):
        seen: dict[int, int] = {}
        for q in range(n):
            v = table[q][r]
            if v in seen:
                report.q2_violations.append((r, seen[v], q))
            else:
                seen[v] = q
    for q in range(n):
        for r in range(n):
            qr = table[q][r]
            for s in range(n):
                if table[qr][s] != table[table[q][s]][table[r][s]]:
                    report.q3_violations.append((q, r, s))
    return report


# ---------------------------------------------------------------------------
# finite quandles and groups


class FiniteQuandle:
    """A finite quandle given by its operation table.

    Construction validates all axioms and precomputes the dual operation.
    """

    def __init__(self, table: Sequence[Sequence[int]], labels: Sequence[str] | None = None):
        self.size = _validate_square(table)
        report = check_axioms(table)
        if not report.ok:
            raise TableFormatError(f"table is not a quandle: {report.to_json()}")
        self.table = tuple(tuple(row) for row in table)
        if labels is None:
            labels = [str(i) for i in range(self.size)]
        if len(labels) != self.size:
            raise TableFormatError("labels length does not match table size")
        self.labels = tuple(str(x) for x in labels)
        # column inverses give the dual operation
        inv_cols: list[list[int]] = [[0] * self.size for _ in range(self.size)]
        for r in range(self.size):
            for q in range(self.size):
                inv_cols[r][self.table[q][r]] = q
        self._inv_cols = tuple(tuple(col) for col in inv_cols)

    def op(self, q: int, r: int) -> int:
        return self.table[q][r]

    def inv_op(self, q: int, r: int) -> int:
        return self._inv_cols[r][q]

    def elements(self) -> range:
        return range(self.size)

    def is_trivial(self) -> bool:
        return all(self.table[q][r] == q for q in self.elements() for r in self.elements())

    def is_kei(self) -> bool:
        return all(
            self.op(q, r) == self.inv_op(q, r) for q in self.elements() for r in self.elements()
        )


class FiniteGroup:
    """A finite group given by its multiplication table (0-based)."""

    def __init__(self, mul: Sequence[Sequence[int]], labels: Sequence[str] | None = None):
        self.size = _validate_square(mul)
        self.mul_table = tuple(tuple(row) for row in mul)
        if labels is None:
            labels = [str(i) for i in range(self.size)]
        if len(labels) != self.size:
            raise TableFormatError("labels length does not match table size")
        self.labels = tuple(str(x) for x in labels)
        identity = None
        for e in range(self.size):
            if all(self.mul_table[e][g] == g == self.mul_table[g][e] for g in range(self.size)):
                identity = e
                break
        if identity is None:
            raise TableFormatError("no identity element")
        self.identity = identity
        inv = [None] * self.size
        for g in range(self.size):
            for h in range(self.size):
                if self.mul_table[g][h] == identity:
                    inv[g] = h
        if any(i is None for i in inv):
            raise TableFormatError("missing inverses")
        self._inv = tuple(inv)  # type: ignore[arg-type]
        for a in range(self.size):
            for b in range(self.size):
                for c in range(self.size):
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise TableFormatError(f"not associative at ({a},{b},{c})")

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        out = self.identity
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def order_of(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def conj(self, q: int, g: int) -> int:
        """g^-1 q g."""
        return self.mul(self.mul(self.inv(g), q), g)

    def center(self) -> list[int]:
        return [
            g
            for g in range(self.size)
            if all(self.mul(g, h) == self.mul(h, g) for h in range(self.size))
        ]

    def is_centerless(self) -> bool:
        return self.center() == [self.identity]

    def elements(self) -> range:
        return range(self.size)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        return cls(table, [str(i) for i in range(n)])

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        """S_n on points 0..n-1; product p·q applies p first, then q."""
        perms = list(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        table = [
            [index[tuple(q[p[i]] for i in range(n))] for q in perms]
            for p in perms
        ]
        return cls(table, [_cycle_label(p) for p in perms])


def _cycle_label(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        cycles.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(cycles) if cycles else "e"


# ---------------------------------------------------------------------------
# constructions


def trivial_quandle(n: int) -> FiniteQuandle:
    """q*r = q."""
    return FiniteQuandle([[q for _ in range(n)] for q in range(n)])


def conj_quandle(group: FiniteGroup, n: int = 1) -> FiniteQuandle:
    """q*r = r^-n q r^n on the whole group."""
    size = group.size
    table = [[0] * size for _ in range(size)]
    for q in range(size):
        for r in range(size):
            rn = group.power(r, n)
            table[q][r] = group.mul(group.mul(group.inv(rn), q), rn)
    return FiniteQuandle(table, group.labels)


def core_quandle(group: FiniteGroup) -> FiniteQuandle:
    """q*r = r q^-1 r; always a kei."""
    size = group.size
    table = [
        [group.mul(group.mul(r, group.inv(q)), r) for r in range(size)]
        for q in range(size)
    ]
    return FiniteQuandle(table, group.labels)


@dataclass
class DehnCriterionReport:
    """Group-theoretic semi-latin criterion, reported in two readings.

    Conditions: (i) the ambient group is centerless, (ii) the generating
    subset avoids the identity, (iii) no power coincidences g^i = h^j with
    j != 0 and i != j.  Condition (iii) is reported both for arbitrary g, h
    in the subset and restricted to distinct g != h; in a finite group both
    readings fail for torsion reasons (g^0 = h^{ord(h)}), so the brute-force
    answer is the ground truth and the criterion is informational.
    """

    centerless: bool
    identity_free: bool
    power_condition_literal: bool
    power_condition_distinct: bool
    literal_witness: tuple | None
    distinct_witness: tuple | None
    brute_force_semi_latin: dict[int, bool]

    @property
    def criterion_all_hold_literal(self) -> bool:
        return self.centerless and self.identity_free and self.power_condition_literal

    @property
    def criterion_all_hold_distinct(self) -> bool:
        return self.centerless and self.identity_free and self.power_condition_distinct

    def to_json(self) -> dict:
        return {
            "centerless": self.centerless,
            "identity_free": self.identity_free,
            "power_condition_literal": self.power_condition_literal,
            "power_condition_distinct": self.power_condition_distinct,
            "literal_witness": list(self.literal_witness) if self.literal_witness else None,
            "distinct_witness": list(self.distinct_witness) if self.distinct_witness else None,
            "brute_force_semi_latin": {str(k): v for k, v in self.brute_force_semi_latin.items()},
        }


def _power_coincidence(group: FiniteGroup, g: int, h: int) -> tuple | None:
    """Distinct integers i, j with j != 0 and g^i = h^j, if any.

    Powers are periodic, so residues i mod ord(g), j mod ord(h) suffice;
    representatives can always be lifted to distinct integers with j != 0.
    """
    og, oh = group.order_of(g), group.order_of(h)
    for a in range(og):
        for b in range(oh):
            if group.power(g, a) == group.power(h, b):
                j = b if b != 0 else oh
                i = a if a != j else a + og
                return (g, h, i, j)
    return None


def dehn_quandle(group: FiniteGroup, subset: Iterable[int]) -> tuple[FiniteQuandle, DehnCriterionReport]:
    """Conjugation quandle on the conjugate closure of a subset.

    Returns the quandle together with the semi-latin criterion report; the
    brute-force per-point answer in the report is authoritative.
    """
    base = sorted(set(subset))
    if not base:
        raise ValueError("subset must be nonempty")
    closure = sorted({group.conj(a, g) for a in base for g in group.elements()})
    index = {g: i for i, g in enumerate(closure)}
    size = len(closure)
    table = [
        [index[group.conj(closure[q], closure[r])] for r in range(size)]
        for q in range(size)
    ]
    quandle = FiniteQuandle(table, [group.labels[g] for g in closure])

    literal = None
    for g in base:
        for h in base:
            literal = _power_coincidence(group, g, h)
            if literal:
                break
        if literal:
            break
    distinct = None
    for g in base:
        for h in base:
            if g == h:
                continue
            distinct = _power_coincidence(group, g, h)
            if distinct:
                break
        if distinct:
            break

    brute = {
        p: bool(is_semi_latin_at(quandle, p))
        for p in range(size)
    }
    report = DehnCriterionReport(
        centerless=group.is_centerless(),
        identity_free=group.identity not in base,
        power_condition_literal=literal is None,
        power_condition_distinct=distinct is None,
        literal_witness=literal,
        distinct_witness=distinct,
        brute_force_semi_latin=brute,
    )
    return quandle, report


# ---------------------------------------------------------------------------
# Alexander quandle over the rationals


def alexander_op(q: Fraction, r: Fraction, t: Fraction) -> Fraction:
    """q*r = t q + (1-t) r, exactly."""
    t = Fraction(t)
    if t == 0:
        raise ValueError("parameter t must be nonzero")
    return t * Fraction(q) + (1 - t) * Fraction(r)


def alexander_solve_left(qhat: Fraction, target: Fraction, t: Fraction) -> Fraction:
    """The unique s with qhat * s = target; needs t != 1 (latin case)."""
    t = Fraction(t)
    if t == 0:
        raise ValueError("parameter t must be nonzero")
    if t == 1:
        raise ValueError("t = 1 is not latin: no left section exists")
    return (Fraction(target) - t * Fraction(qhat)) / (1 - t)


class AlexanderQuandle:
    """Affine quandle on the rationals: q*r = t q + (1-t) r."""

    def __init__(self, t: Fraction):
        t = Fraction(t)
        if t == 0:
            raise ValueError("parameter t must be nonzero")
        self.t = t

    def op(self, q: Fraction, r: Fraction) -> Fraction:
        return alexander_op(q, r, self.t)

    def inv_op(self, q: Fraction, r: Fraction) -> Fraction:
        return (Fraction(q) - (1 - self.t) * Fraction(r)) / self.t

    def solve_left(self, qhat: Fraction, target: Fraction) -> Fraction:
        return alexander_solve_left(qhat, target, self.t)


# ---------------------------------------------------------------------------
# latin ladder predicates


@dataclass(frozen=True)
class LatinReport:
    """Outcome of a latin-type predicate; ``sampled`` marks a finite probe
    of an infinite quandle rather than an exhaustive finite check."""

    holds: bool
    sampled: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def _domain_of(quandle, domain: Sequence | None) -> tuple[Sequence, bool]:
    if domain is not None:
        return list(domain), True
    if isinstance(quandle, FiniteQuandle):
        return list(quandle.elements()), False
    raise ValueError("a finite sample domain is required for infinite quandles")


def is_semi_latin_at(quandle, qhat, domain: Sequence | None = None) -> LatinReport:
    """Left translation at qhat is injective (on the domain)."""
    elems, sampled = _domain_of(quandle, domain)
    seen: dict[Any, Any] = {}
    for r in elems:
        v = quandle.op(qhat, r)
        if v in seen and seen[v] != r:
            return LatinReport(False, sampled, (qhat, seen[v], r))
        seen[v] = r
    return LatinReport(True, sampled)


def is_latin_at(quandle, qhat, domain: Sequence | None = None) -> LatinReport:
    """Left translation at qhat is bijective.

    On a full finite domain injectivity suffices; on a sample, surjectivity
    is additionally probed within the sample.
    """
    elems, sampled = _domain_of(quandle, domain)
    semi = is_semi_latin_at(quandle, qhat, domain)
    if not semi.holds:
        return LatinReport(False, sampled, semi.witness)
    if not sampled:
        return LatinReport(True, False)
    image = {quandle.op(qhat, r) for r in elems}
    missing = [v for v in elems if v not in image]
    if missing:
        return LatinReport(False, True, (qhat, missing[0]))
    return LatinReport(True, True)


def is_weak_latin(quandle, domain: Sequence | None = None) -> LatinReport:
    """Every pair q != r is separated by some point p: p*q != p*r."""
    elems, sampled = _domain_of(quandle, domain)
    for q, r in itertools.combinations(elems, 2):
        if not any(quandle.op(p, q) != quandle.op(p, r) for p in elems):
            return LatinReport(False, sampled, (q, r))
    return LatinReport(True, sampled)


# ---------------------------------------------------------------------------
# JSON table files


def load_table_json(text: str) -> FiniteQuandle | FiniteGroup:
    """Load a table file: {"kind": "quandle"|"group", "size", "labels", "table"}.

    Parse errors carry line/column positions; semantic errors name the cell.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise TableFormatError("top-level value must be an object")
    kind = data.get("kind")
    if kind not in ("quandle", "group"):
        raise TableFormatError(f"kind must be 'quandle' or 'group', got {kind!r}")
    table = data.get("table")
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise TableFormatError("table must be a list of rows")
    size = data.get("size")
    if size is not None and size != len(table):
        raise TableFormatError(f"declared size {size} != table rows {len(table)}")
    labels = data.get("labels")
    if kind == "quandle":
        return FiniteQuandle(table, labels)
    return FiniteGroup(table, labels)


def table_to_json(obj: FiniteQuandle | FiniteGroup) -> str:
    if isinstance(obj, FiniteQuandle):
        kind, table = "quandle", obj.table
    else:
        kind, table = "group", obj.mul_table
    payload = {
        "kind": kind,
        "size": obj.size,
        "labels": list(obj.labels),
        "table": [list(row) for row in table],
    }
    return json.dumps(payload, indent=2)
