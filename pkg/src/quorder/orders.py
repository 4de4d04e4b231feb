"""Order oracles on quandles and free groups.

Right orders are exposed as memoizing three-way comparators, circular
orders as ternary sign maps.  Provided oracles:

* ``magnus_order`` — bi-invariant total order on free group words.
* ``e2_order`` — right order on the free quandle: elements sort first by
  generator index of the conjugacy class, ties resolved by the bi-invariant
  group order on the embedded conjugates.  Because the tie-break is
  conjugation-invariant, the layered order is invariant under the quandle
  operation and its dual.
* ``conjugation_order`` — pullback of the group order along the embedding
  of the free quandle into its free group; right-invariant for the same
  reason, without the generator layering.

Also here: the circular order induced by a right order, axiom samplers,
agreement windows (finite-set neighborhoods of an order), and the
restoration index ``lambda``: a per-tuple sign recording whether the order
of a tuple agrees with the order of its image under the basepoint's left
translation.  The index lets the order be recovered from a single realized
orbit: original sign = lambda * orbit sign.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Container, Sequence

from .freequandle import FqElem, as_group_element
from .magnus import magnus_compare
from .words import Word

__all__ = [
    "RightOrderOracle",
    "CircularOrderOracle",
    "magnus_order",
    "e2_order_compare",
    "e2_order",
    "conjugation_order_compare",
    "conjugation_order",
    "natural_order",
    "circular_from_right",
    "SamplerReport",
    "right_order_sampler",
    "circular_order_sampler",
    "agreement_window",
    "NotSemiLatinError",
    "IndexLambda",
    "window_dump",
]


@dataclass
class RightOrderOracle:
    """Total order comparator with provenance metadata.

    ``compare(a, b)`` returns -1/0/+1; ``domain`` names the carrier set and
    ``provenance`` the construction.  An optional ``members`` container
    restricts the declared domain (queries outside raise KeyError), used by
    finite-window oracles.
    """

    compare: Callable[[Any, Any], int]
    domain: str
    provenance: str
    members: Container | None = None

    def __call__(self, a, b) -> int:
        if self.members is not None and (a not in self.members or b not in self.members):
            missing = a if a not in self.members else b
            raise KeyError(f"{missing} outside the declared order window")
        return self.compare(a, b)

    def lt(self, a, b) -> bool:
        return self(a, b) < 0

    def sort(self, elements: Sequence) -> list:
        import functools

        return sorted(elements, key=functools.cmp_to_key(self))


@dataclass
class CircularOrderOracle:
    """Ternary circular order map c(a, b, c) in {-1, 0, +1}."""

    c: Callable[[Any, Any, Any], int]
    domain: str
    provenance: str

    def __call__(self, a, b, c) -> int:
        return self.c(a, b, c)


def magnus_order() -> RightOrderOracle:
    return RightOrderOracle(magnus_compare, "free-group", "magnus")


def e2_order_compare(a: FqElem, b: FqElem) -> int:
    """Layered free quandle order: generator index, then conjugate order."""
    if a == b:
        return 0
    if a.gen != b.gen:
        return -1 if a.gen < b.gen else 1
    return magnus_compare(as_group_element(a), as_group_element(b))


def e2_order() -> RightOrderOracle:
    return RightOrderOracle(e2_order_compare, "free-quandle", "e2")


def conjugation_order_compare(a: FqElem, b: FqElem) -> int:
    """Group order on the embedded conjugates, classes interleaved."""
    return magnus_compare(as_group_element(a), as_group_element(b))


def conjugation_order() -> RightOrderOracle:
    return RightOrderOracle(conjugation_order_compare, "free-quandle", "conjugation")


def _cmp(a, b) -> int:
    return (a > b) - (a < b)


def natural_order(domain: str = "rationals") -> RightOrderOracle:
    """The ambient numeric order (right order on affine quandles)."""
    return RightOrderOracle(_cmp, domain, "natural")


def circular_from_right(order: RightOrderOracle) -> CircularOrderOracle:
    """Sign of the permutation sorting the triple; 0 on degenerate triples."""

    def c(q1, q2, q3) -> int:
        if q1 == q2 or q2 == q3 or q1 == q3:
            return 0
        triple = [q1, q2, q3]
        # selection sort to count inversions under the comparator
        perm = [0, 1, 2]
        swaps = 0
        for i in range(3):
            for j in range(i + 1, 3):
                if order(triple[perm[j]], triple[perm[i]]) < 0:
                    perm[i], perm[j] = perm[j], perm[i]
                    swaps += 1
        return 1 if swaps % 2 == 0 else -1

    return CircularOrderOracle(c, order.domain, f"circular({order.provenance})")


# ---------------------------------------------------------------------------
# samplers


@dataclass
class SamplerReport:
    """Violations found by an axiom sampler, with check counts."""

    checked: dict[str, int] = field(default_factory=dict)
    skipped: dict[str, int] = field(default_factory=dict)
    violations: dict[str, list] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def add(self, kind: str, witness) -> None:
        self.violations.setdefault(kind, []).append(witness)

    def count(self, kind: str, skipped: bool = False) -> None:
        bucket = self.skipped if skipped else self.checked
        bucket[kind] = bucket.get(kind, 0) + 1

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": dict(sorted(self.checked.items())),
            "skipped": dict(sorted(self.skipped.items())),
            "violations": {
                k: [repr(w) for w in v] for k, v in sorted(self.violations.items())
            },
        }


def _in_domain(order: RightOrderOracle, element) -> bool:
    return order.members is None or element in order.members


def right_order_sampler(
    order: RightOrderOracle,
    quandle,
    sample: Sequence,
    n_samples: int = 1000,
    seed: int = 0,
) -> SamplerReport:
    """Probe totality, antisymmetry, transitivity, and invariance under the
    quandle operation and its dual on random tuples from the sample.

    Action checks whose images leave a windowed oracle's domain are counted
    as skipped, not failed.
    """
    rng = random.Random(seed)
    report = SamplerReport()
    elems = list(sample)
    for _ in range(n_samples):
        a, b = rng.choice(elems), rng.choice(elems)
        s = order(a, b)
        report.count("totality")
        if s not in (-1, 0, 1) or (s == 0) != (a == b):
            report.add("totality", (a, b, s))
        if order(b, a) != -s:
            report.add("antisymmetry", (a, b))

        a, b, c = rng.choice(elems), rng.choice(elems), rng.choice(elems)
        report.count("transitivity")
        if order(a, b) < 0 and order(b, c) < 0 and order(a, c) >= 0:
            report.add("transitivity", (a, b, c))

        a, b, q = rng.choice(elems), rng.choice(elems), rng.choice(elems)
        for name, op in (("right-invariance-op", quandle.op), ("right-invariance-dual", quandle.inv_op)):
            aq, bq = op(a, q), op(b, q)
            if not (_in_domain(order, aq) and _in_domain(order, bq)):
                report.count(name, skipped=True)
                continue
            report.count(name)
            if order(a, b) != order(aq, bq):
                report.add(name, (a, b, q))
    return report


def circular_order_sampler(
    circ: CircularOrderOracle,
    quandle,
    sample: Sequence,
    n_samples: int = 1000,
    seed: int = 0,
) -> SamplerReport:
    """Probe degeneracy, the cocycle identity, and invariance under the
    quandle operation and its dual on random tuples."""
    rng = random.Random(seed)
    report = SamplerReport()
    elems = list(sample)
    for _ in range(n_samples):
        q1, q2, q3 = (rng.choice(elems) for _ in range(3))
        v = circ(q1, q2, q3)
        report.count("degeneracy")
        degenerate = q1 == q2 or q2 == q3 or q1 == q3
        if v not in (-1, 0, 1) or (v == 0) != degenerate:
            report.add("degeneracy", (q1, q2, q3, v))

        q1, q2, q3, q4 = (rng.choice(elems) for _ in range(4))
        report.count("cocycle")
        if circ(q2, q3, q4) - circ(q1, q3, q4) + circ(q1, q2, q4) - circ(q1, q2, q3) != 0:
            report.add("cocycle", (q1, q2, q3, q4))

        q1, q2, q3, q = (rng.choice(elems) for _ in range(4))
        report.count("right-invariance-op")
        if circ(q1, q2, q3) != circ(quandle.op(q1, q), quandle.op(q2, q), quandle.op(q3, q)):
            report.add("right-invariance-op", (q1, q2, q3, q))
        report.count("right-invariance-dual")
        if circ(q1, q2, q3) != circ(
            quandle.inv_op(q1, q), quandle.inv_op(q2, q), quandle.inv_op(q3, q)
        ):
            report.add("right-invariance-dual", (q1, q2, q3, q))
    return report


# ---------------------------------------------------------------------------
# agreement windows


def agreement_window(
    oracle1,
    oracle2,
    window: Sequence,
) -> tuple[bool, tuple | None]:
    """Do two oracles agree on every non-degenerate tuple from the window?

    Right orders are compared on pairs, circular orders on triples.  Returns
    (True, None) or (False, witness tuple).
    """
    elems = list(window)
    circular = isinstance(oracle1, CircularOrderOracle)
    if circular:
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                for k, c in enumerate(elems):
                    if len({i, j, k}) < 3:
                        continue
                    if oracle1(a, b, c) != oracle2(a, b, c):
                        return False, (a, b, c)
        return True, None
    for i, a in enumerate(elems):
        for b in elems[i + 1 :]:
            if oracle1(a, b) != oracle2(a, b):
                return False, (a, b)
    return True, None


# ---------------------------------------------------------------------------
# restoration index


class NotSemiLatinError(ValueError):
    """The basepoint's left translation collided on queried elements."""


@dataclass
class IndexLambda:
    """Sign correction for restoring an order from the basepoint orbit.

    For a tuple of distinct elements, the index is +1 when the order of the
    tuple matches the order of its image under the basepoint's left
    translation (q -> basepoint * q), and -1 otherwise.  Well-definedness
    requires the quandle to be semi-latin at the basepoint; collisions
    raise :class:`NotSemiLatinError`.
    """

    basepoint: Any
    quandle: Any
    order: RightOrderOracle | None = None
    circular: CircularOrderOracle | None = None
    _memo: dict = field(default_factory=dict)

    def _image(self, q):
        return self.quandle.op(self.basepoint, q)

    def _check_collisions(self, elements) -> list:
        images = [self._image(q) for q in elements]
        for i, a in enumerate(elements):
            for j in range(i + 1, len(elements)):
                if a != elements[j] and images[i] == images[j]:
                    raise NotSemiLatinError(
                        f"basepoint translation collides on {a} and {elements[j]}"
                    )
        return images

    def pair(self, q, r) -> int:
        """Index of a pair under the underlying right order."""
        if self.order is None:
            raise ValueError("no right order attached")
        if q == r:
            raise ValueError("degenerate pair")
        key = ("p", q, r)
        if key not in self._memo:
            iq, ir = self._check_collisions([q, r])
            self._memo[key] = self.order(q, r) * self.order(iq, ir)
        return self._memo[key]

    def triple(self, q, q2, q3) -> int:
        """Index of a triple under the underlying circular order."""
        if self.circular is None:
            raise ValueError("no circular order attached")
        if q == q2 or q2 == q3 or q == q3:
            raise ValueError("degenerate triple")
        key = ("t", q, q2, q3)
        if key not in self._memo:
            images = self._check_collisions([q, q2, q3])
            self._memo[key] = self.circular(q, q2, q3) * self.circular(*images)
        return self._memo[key]


# ---------------------------------------------------------------------------
# window dumps


def window_dump(
    order: RightOrderOracle,
    elements: Sequence,
    to_str: Callable[[Any], str] = str,
) -> dict:
    """Finite window of a right order as a JSON-ready mapping."""
    elems = list(elements)
    signs = []
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            signs.append({"pair": [i, j], "sign": order(elems[i], elems[j])})
    return {
        "order": order.provenance,
        "elements": [to_str(e) for e in elems],
        "signs": signs,
    }
