"""Exact dynamical realizations of ordered quandles on the line and circle.

A finite prefix of elements is embedded order-preservingly into the
rationals (line) or the rational points of the circle [0, 1).  Each acting
element q is realized as a piecewise-linear homeomorphism sending the
embedded point of p to the embedded point of p*q; the dual operation gives
the inverse map.  All arithmetic is exact, so every consistency check is a
decision, not a tolerance.

Line embedding rule: the first element anchors at 0; a new minimum goes one
below the current minimum, a new maximum one above the current maximum, and
anything else at the midpoint of its gap.  Circle rule: anchors 0 and 1/2,
then the midpoint of the unique arc compatible with the circular order.

Line PL maps continue outside their breakpoint span by unit-slope
translation matching the boundary values, so a map fixing its extreme
breakpoints is supported inside the span.  Circle maps are degree one.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from .rational import frac_to_str

__all__ = [
    "circle_ord",
    "Embedding",
    "build_line_embedding",
    "build_circle_embedding",
    "PLMap",
    "plmap_from_pairs",
    "ClosureError",
    "Realization",
    "close_prefix",
    "realize",
    "ConsistencyReport",
    "check_consistency",
    "RestoreReport",
    "restore_right",
    "restore_circular",
    "restore_right_latin",
    "restore_circular_latin",
    "build_semiconjugacy",
    "realization_dump",
]


def circle_ord(a: Fraction, b: Fraction, c: Fraction) -> int:
    """Orientation of a triple on the circle of circumference 1."""
    a, b, c = a % 1, b % 1, c % 1
    if a == b or b == c or a == c:
        return 0
    return 1 if (b - a) % 1 < (c - a) % 1 else -1


# ---------------------------------------------------------------------------
# embeddings


@dataclass
class Embedding:
    """Order-preserving embedding of a finite prefix.

    ``prefix`` is the insertion enumeration (its first element is the
    basepoint), ``points`` the element-to-position mapping.
    """

    space: str
    prefix: tuple
    points: dict
    core: tuple = ()

    @property
    def basepoint(self):
        return self.prefix[0]

    @property
    def x0(self) -> Fraction:
        return self.points[self.basepoint]

    def position(self, element) -> Fraction:
        return self.points[element]


def build_line_embedding(compare: Callable[[Any, Any], int], prefix: Sequence) -> Embedding:
    """Embed a prefix into the rational line following the insertion rule."""
    prefix = tuple(prefix)
    if len(set(prefix)) != len(prefix):
        raise ValueError("prefix elements must be pairwise distinct")
    points: dict = {}
    placed: list = []  # elements sorted by position
    positions: list[Fraction] = []
    for q in prefix:
        if not placed:
            pos = Fraction(0)
        else:
            lo = 0
            hi = len(placed)
            # binary search by comparator over the sorted placement
            while lo < hi:
                mid = (lo + hi) // 2
                if compare(q, placed[mid]) < 0:
                    hi = mid
                else:
                    lo = mid + 1
            if lo == 0:
                pos = positions[0] - 1
            elif lo == len(placed):
                pos = positions[-1] + 1
            else:
                pos = (positions[lo - 1] + positions[lo]) / 2
        points[q] = pos
        idx = bisect_left(positions, pos)
        placed.insert(idx, q)
        positions.insert(idx, pos)
    return Embedding("line", prefix, points)


def build_circle_embedding(circ: Callable[[Any, Any, Any], int], prefix: Sequence) -> Embedding:
    """Embed a prefix into circle rationals, matching the circular order on
    every triple.  Raises with a witness if no arc is consistent."""
    prefix = tuple(prefix)
    if len(set(prefix)) != len(prefix):
        raise ValueError("prefix elements must be pairwise distinct")
    points: dict = {}
    for n, q in enumerate(prefix):
        if n == 0:
            points[q] = Fraction(0)
            continue
        if n == 1:
            points[q] = Fraction(1, 2)
            continue
        existing = sorted(points.values())
        candidates = []
        for k, lo in enumerate(existing):
            hi = existing[k + 1] if k + 1 < len(existing) else existing[0] + 1
            candidates.append(((lo + hi) / 2) % 1)
        done = list(points.items())
        good = []
        for cand in candidates:
            consistent = True
            for (e1, p1), (e2, p2) in itertools.combinations(done, 2):
                if circle_ord(p1, p2, cand) != circ(e1, e2, q):
                    consistent = False
                    break
            if consistent:
                good.append(cand)
        if len(good) != 1:
            witness = None
            for (e1, _), (e2, _) in itertools.combinations(done, 2):
                witness = (e1, e2, q)
                break
            raise ValueError(
                f"no unique consistent arc for element {q} "
                f"({len(good)} candidates); not a circular order near {witness}"
            )
        points[q] = good[0]
    return Embedding("circle", prefix, points)


# ---------------------------------------------------------------------------
# piecewise-linear maps


@dataclass(frozen=True)
class PLMap:
    """Orientation-preserving PL homeomorphism given by breakpoints.

    Line: ``breakpoints`` are (input, output) pairs with both coordinates
    strictly increasing; outside the span the map translates by the nearest
    boundary offset.  Circle: inputs lie in [0, 1), outputs are lifted
    (strictly increasing, total rise < 1), and the map has degree one.
    """

    space: str
    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        bps = self.breakpoints
        if not bps:
            raise ValueError("need at least one breakpoint")
        for (x1, y1), (x2, y2) in zip(bps, bps[1:]):
            if not (x1 < x2 and y1 < y2):
                raise ValueError(
                    f"breakpoints must be strictly increasing: ({x1},{y1}) vs ({x2},{y2})"
                )
        if self.space == "circle":
            if any(not 0 <= x < 1 for x, _ in bps):
                raise ValueError("circle breakpoint inputs must lie in [0,1)")
            if len(bps) > 1 and bps[-1][1] - bps[0][1] >= 1:
                raise ValueError("circle map must have degree one (total rise < 1)")
        elif self.space != "line":
            raise ValueError(f"unknown space {self.space!r}")

    def _xs(self) -> list[Fraction]:
        return [x for x, _ in self.breakpoints]

    def at(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        bps = self.breakpoints
        if self.space == "line":
            if x <= bps[0][0]:
                return x + (bps[0][1] - bps[0][0])
            if x >= bps[-1][0]:
                return x + (bps[-1][1] - bps[-1][0])
            xs = self._xs()
            i = bisect_right(xs, x) - 1
            (x1, y1), (x2, y2) = bps[i], bps[i + 1]
            if x == x1:
                return y1
            return y1 + (y2 - y1) * (x - x1) / (x2 - x1)
        return self.lift_at(x) % 1

    def lift_at(self, x: Fraction) -> Fraction:
        """Circle maps: the lift value (adds the winding integer part)."""
        if self.space != "circle":
            raise ValueError("lift_at applies to circle maps")
        x = Fraction(x)
        shift = x - x % 1
        x = x % 1
        bps = self.breakpoints
        xs = self._xs()
        if len(bps) == 1:
            return x + (bps[0][1] - bps[0][0]) + shift
        i = bisect_right(xs, x) - 1
        if i < 0:
            # before the first breakpoint: wrap segment from the last one
            (x1, y1), (x2, y2) = bps[-1], (bps[0][0] + 1, bps[0][1] + 1)
            x = x + 1
        elif i == len(bps) - 1:
            (x1, y1), (x2, y2) = bps[-1], (bps[0][0] + 1, bps[0][1] + 1)
        else:
            (x1, y1), (x2, y2) = bps[i], bps[i + 1]
        if x == x1:
            return y1 + shift
        return y1 + (y2 - y1) * (x - x1) / (x2 - x1) + shift

    def inverse(self) -> "PLMap":
        if self.space == "line":
            return PLMap("line", tuple((y, x) for x, y in self.breakpoints))
        return plmap_from_pairs("circle", [(y % 1, x) for x, y in self.breakpoints])

    def compose(self, after: "PLMap") -> "PLMap":
        """The map 'apply self, then after' as an explicit PL map."""
        if self.space != after.space:
            raise ValueError("cannot compose maps on different spaces")
        inv = self.inverse()
        if self.space == "line":
            xs = {x for x, _ in self.breakpoints}
            xs.update(inv.at(x) for x, _ in after.breakpoints)
            pairs = [(x, after.at(self.at(x))) for x in sorted(xs)]
            return PLMap("line", tuple(pairs))
        xs = {x for x, _ in self.breakpoints}
        xs.update(inv.at(x) % 1 for x, _ in after.breakpoints)
        return plmap_from_pairs("circle", [(x, after.at(self.at(x))) for x in sorted(xs)])


def plmap_from_pairs(space: str, pairs: Iterable[tuple[Fraction, Fraction]]) -> PLMap:
    """Build a PL map from unordered (input, output) pairs.

    Circle outputs are given modulo 1 and lifted here; a non-monotone pair
    set raises with the offending pair.
    """
    items = sorted(((Fraction(x), Fraction(y)) for x, y in pairs), key=lambda p: p[0])
    if not items:
        raise ValueError("need at least one breakpoint pair")
    if space == "line":
        return PLMap("line", tuple(items))
    xs = [x for x, _ in items]
    if any(not 0 <= x < 1 for x in xs):
        raise ValueError("circle inputs must lie in [0,1)")
    raw = [y % 1 for _, y in items]
    lifted = [raw[0]]
    wraps = 0
    for y in raw[1:]:
        yy = y + wraps
        while yy <= lifted[-1]:
            wraps += 1
            yy = y + wraps
        lifted.append(yy)
    if len(lifted) > 1 and lifted[-1] - lifted[0] >= 1:
        raise ValueError("pairs are not cyclically monotone (degree one violated)")
    return PLMap("circle", tuple(zip(xs, lifted)))


# ---------------------------------------------------------------------------
# realizations


class ClosureError(ValueError):
    """A required product fell outside the embedded prefix."""

    def __init__(self, element, actor, product):
        self.element, self.actor, self.product = element, actor, product
        super().__init__(
            f"closure violation: {product} = {element} * {actor} is not embedded"
        )


def close_prefix(
    quandle,
    seed: Sequence,
    actors: Sequence,
    include_inverses: bool = True,
    max_size: int | None = None,
) -> tuple[list, list]:
    """One-step closure of a seed under the actors.

    Returns (prefix, core): the prefix extends the seed (first-encounter
    order) so that every core element has its op- and dual-images embedded;
    the core is the seed itself.
    """
    prefix = list(seed)
    known = set(prefix)
    for p in seed:
        ops = [quandle.op, quandle.inv_op] if include_inverses else [quandle.op]
        for op in ops:
            for q in actors:
                v = op(p, q)
                if v not in known:
                    known.add(v)
                    prefix.append(v)
                    if max_size is not None and len(prefix) > max_size:
                        raise ClosureError(p, q, v)
    return prefix, list(seed)


@dataclass
class Realization:
    """Embedded prefix together with realized actor maps and their duals."""

    quandle: Any
    embedding: Embedding
    actors: tuple
    maps: dict
    inv_maps: dict

    @property
    def space(self) -> str:
        return self.embedding.space

    def orbit_point(self, q) -> Fraction:
        """Image of the basepoint under the realized map of q."""
        return self.maps[q].at(self.embedding.x0)

    def orbit(self) -> dict:
        return {q: self.orbit_point(q) for q in self.actors}


def realize(
    quandle,
    embedding: Embedding,
    actors: Sequence,
    core: Sequence | None = None,
) -> Realization:
    """Realize each actor as a PL map from all embedded (p, p*q) pairs.

    When ``core`` is given, every core element must have its image under
    every actor embedded, else :class:`ClosureError` names the missing
    product.  Actors with no embedded pair at all are always an error.
    """
    points = embedding.points
    if core is not None:
        for p in core:
            for q in actors:
                v = quandle.op(p, q)
                if v not in points:
                    raise ClosureError(p, q, v)
                v = quandle.inv_op(p, q)
                if v not in points:
                    raise ClosureError(p, q, v)
    maps: dict = {}
    inv_maps: dict = {}
    for q in actors:
        pairs = []
        inv_pairs = []
        for p in embedding.prefix:
            v = quandle.op(p, q)
            if v in points:
                pairs.append((points[p], points[v]))
            v = quandle.inv_op(p, q)
            if v in points:
                inv_pairs.append((points[p], points[v]))
        if not pairs or not inv_pairs:
            raise ClosureError(embedding.basepoint, q, f"no embedded image for actor {q}")
        maps[q] = plmap_from_pairs(embedding.space, pairs)
        inv_maps[q] = plmap_from_pairs(embedding.space, inv_pairs)
    return Realization(quandle, embedding, tuple(actors), maps, inv_maps)


# ---------------------------------------------------------------------------
# consistency checking


@dataclass
class ConsistencyReport:
    order_violations: list = field(default_factory=list)
    antihom_violations: list = field(default_factory=list)
    inverse_violations: list = field(default_factory=list)
    checked: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not (self.order_violations or self.antihom_violations or self.inverse_violations)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": dict(sorted(self.checked.items())),
            "order_violations": [repr(v) for v in self.order_violations],
            "antihom_violations": [repr(v) for v in self.antihom_violations],
            "inverse_violations": [repr(v) for v in self.inverse_violations],
        }


def check_consistency(
    realization: Realization,
    compare: Callable[[Any, Any], int] | None = None,
    circular: Callable[[Any, Any, Any], int] | None = None,
) -> ConsistencyReport:
    """Exact verification of a realization.

    (a) the embedding agrees with the order on all pairs (line) or all
    triples (circle); (b) the realized action is an anti-homomorphism:
    applying the map of r*s equals applying inverse(s), r, then s, checked
    on every embedded chain; (c) dual maps invert the maps on embedded
    points.
    """
    report = ConsistencyReport()
    emb = realization.embedding
    quandle = realization.quandle
    points = emb.points
    elems = list(emb.prefix)

    if emb.space == "line":
        if compare is None:
            raise ValueError("line consistency needs the order comparator")
        ranked = sorted(elems, key=lambda e: points[e])
        for a, b in itertools.combinations(ranked, 2):
            report.checked["order-pairs"] = report.checked.get("order-pairs", 0) + 1
            if compare(a, b) >= 0:
                report.order_violations.append((a, b))
    else:
        if circular is None:
            raise ValueError("circle consistency needs the circular order")
        for a, b, c in itertools.combinations(elems, 3):
            report.checked["order-triples"] = report.checked.get("order-triples", 0) + 1
            if circle_ord(points[a], points[b], points[c]) != circular(a, b, c):
                report.order_violations.append((a, b, c))

    # anti-homomorphism on chains fully inside the embedding
    actors = realization.actors
    actor_maps = realization.maps
    inv_maps = realization.inv_maps
    actor_set = set(actors)
    for r in actors:
        for s in actors:
            rs = quandle.op(r, s)
            if rs not in actor_set:
                continue
            for p in elems:
                c1 = quandle.inv_op(p, s)
                c2 = quandle.op(c1, r)
                c3 = quandle.op(c2, s)
                if not (c1 in points and c2 in points and c3 in points and quandle.op(p, rs) in points):
                    continue
                report.checked["antihom-triples"] = report.checked.get("antihom-triples", 0) + 1
                lhs = actor_maps[rs].at(points[p])
                rhs = actor_maps[s].at(actor_maps[r].at(inv_maps[s].at(points[p])))
                if lhs != rhs:
                    report.antihom_violations.append((p, r, s, lhs, rhs))

    for q in actors:
        for p in elems:
            v = quandle.op(p, q)
            if v not in points:
                continue
            report.checked["inverse-points"] = report.checked.get("inverse-points", 0) + 1
            if inv_maps[q].at(actor_maps[q].at(points[p])) != points[p]:
                report.inverse_violations.append((q, p))
    return report


# ---------------------------------------------------------------------------
# order restoration from a single orbit


@dataclass
class RestoreReport:
    total: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "total": self.total,
            "mismatches": [repr(m) for m in self.mismatches],
        }


def restore_right(realization: Realization, index, pairs, original) -> RestoreReport:
    """Restore pair signs from orbit points via the pair index and compare
    with the original right order."""
    report = RestoreReport()
    for q, r in pairs:
        report.total += 1
        restored = index.pair(q, r) * _cmp_frac(
            realization.orbit_point(q), realization.orbit_point(r)
        )
        if restored != original(q, r):
            report.mismatches.append((q, r, restored, original(q, r)))
    return report


def restore_circular(realization: Realization, index, triples, original) -> RestoreReport:
    """Restore triple signs from orbit points via the triple index."""
    report = RestoreReport()
    for q, r, s in triples:
        report.total += 1
        restored = index.triple(q, r, s) * circle_ord(
            realization.orbit_point(q),
            realization.orbit_point(r),
            realization.orbit_point(s),
        )
        if restored != original(q, r, s):
            report.mismatches.append((q, r, s, restored, original(q, r, s)))
    return report


def restore_right_latin(realization: Realization, section, pairs, original) -> RestoreReport:
    """Latin-case restoration without any index: positions of the section
    elements reproduce the original order directly."""
    report = RestoreReport()
    qhat = realization.embedding.basepoint
    for q, r in pairs:
        report.total += 1
        restored = _cmp_frac(
            realization.orbit_point(section(qhat, q)),
            realization.orbit_point(section(qhat, r)),
        )
        if restored != original(q, r):
            report.mismatches.append((q, r, restored, original(q, r)))
    return report


def restore_circular_latin(realization: Realization, section, triples, original) -> RestoreReport:
    report = RestoreReport()
    qhat = realization.embedding.basepoint
    for q, r, s in triples:
        report.total += 1
        restored = circle_ord(
            realization.orbit_point(section(qhat, q)),
            realization.orbit_point(section(qhat, r)),
            realization.orbit_point(section(qhat, s)),
        )
        if restored != original(q, r, s):
            report.mismatches.append((q, r, s, restored, original(q, r, s)))
    return report


def _cmp_frac(a: Fraction, b: Fraction) -> int:
    return (a > b) - (a < b)


# ---------------------------------------------------------------------------
# finite semi-conjugacy detection


def build_semiconjugacy(
    orbit1: dict,
    orbit2: dict,
    space: str = "line",
) -> tuple[list | None, tuple | None]:
    """Monotone correspondence orbit2 -> orbit1 on a shared index set.

    Returns (correspondence, None) where the correspondence lists
    (element, position2, position1) sorted by position2, or (None, witness)
    with a witness tuple violating (cyclic) monotonicity.
    """
    if set(orbit1) != set(orbit2):
        raise ValueError("orbits must be indexed by the same element set")
    items = sorted(orbit2.items(), key=lambda kv: kv[1])
    corr = [(e, pos2, orbit1[e]) for e, pos2 in items]
    values = [v for _, _, v in corr]
    if space == "line":
        for i in range(len(values) - 1):
            if not values[i] < values[i + 1]:
                return None, (corr[i][0], corr[i + 1][0])
        return corr, None
    # circle: exactly one descent allowed around the wrap
    n = len(values)
    if n <= 2:
        return corr, None
    descents = sum(1 for i in range(n) if not values[i] % 1 < values[(i + 1) % n] % 1)
    if descents > 1:
        for i in range(n):
            if not values[i] % 1 < values[(i + 1) % n] % 1:
                return None, (corr[i][0], corr[(i + 1) % n][0])
    return corr, None


# ---------------------------------------------------------------------------
# dumps


def realization_dump(realization: Realization, to_str: Callable[[Any], str] = str) -> dict:
    emb = realization.embedding
    points = sorted(emb.points.items(), key=lambda kv: kv[1])
    return {
        "space": emb.space,
        "points": [{"elem": to_str(e), "pos": frac_to_str(p)} for e, p in points],
        "maps": [
            {
                "elem": to_str(q),
                "breakpoints": [
                    [frac_to_str(x), frac_to_str(y)] for x, y in realization.maps[q].breakpoints
                ],
            }
            for q in realization.actors
        ],
    }
