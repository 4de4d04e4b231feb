"""Producing a nearby distinct right order on a free quandle.

Given a right order and basepoint, the orbit extrema over balls of growing
radius are tracked; when the maxima (or minima) strictly increase through
three radii m < M1 < M2 with the two outer extremizing ACTORS in different
generator conjugacy classes, the action realized on the line is perturbed:
a bump homeomorphism supported between the radius-m orbit points and the
deep orbit points is composed onto the maps of one conjugacy class.  The
order restored from the perturbed orbit via the index then agrees with the
original on the radius-m ball but reverses a witness pair, exhibiting a
distinct order in the given finite neighborhood.

Layered orders (sorting actors by generator class) never produce
class-distinct extrema, so the search reports NoWitnessFound on them; the
pipeline records the inspected candidates either way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .freequandle import FqElem, FreeQuandle, fq_to_str
from .orders import IndexLambda, RightOrderOracle, agreement_window, right_order_sampler
from .rational import frac_to_str
from .realization import PLMap, Realization, build_line_embedding, realize
from .words import Word

__all__ = [
    "MuExtremum",
    "mu_plus",
    "mu_minus",
    "BumpSpec",
    "build_bump",
    "build_drop",
    "perturb_realization",
    "WitnessReport",
    "NoWitnessFound",
    "witness_nonisolation",
]


@dataclass(frozen=True)
class MuExtremum:
    """Extremum of the basepoint orbit over a ball.

    ``actor`` is the ball element realizing the extremum, ``image`` the
    orbit element basepoint * actor.  When the quandle is semi-latin at the
    basepoint the actor is unique; ties (impossible there) would resolve by
    ball order.
    """

    radius: int
    actor: FqElem
    image: FqElem


def _extremum(order, quandle, qhat, radius: int, sign: int) -> MuExtremum:
    best_actor = None
    best_image = None
    for q in quandle.ball(radius):
        image = quandle.op(qhat, q)
        if best_image is None or sign * order(image, best_image) > 0:
            best_actor, best_image = q, image
    assert best_actor is not None
    return MuExtremum(radius, best_actor, best_image)


def mu_plus(order, quandle, qhat: FqElem, radius: int) -> MuExtremum:
    """Maximum of {qhat * q : q in the radius ball} with its actor."""
    return _extremum(order, quandle, qhat, radius, +1)


def mu_minus(order, quandle, qhat: FqElem, radius: int) -> MuExtremum:
    """Minimum of the same orbit slice."""
    return _extremum(order, quandle, qhat, radius, -1)


# ---------------------------------------------------------------------------
# bump homeomorphisms


@dataclass(frozen=True)
class BumpSpec:
    """Parameters of a rightward bump supported on [a0, b0].

    Requires a0 < a1 < b1 < b0 and b1 < target < b0; the resulting map
    fixes everything outside [a0, b0] and sends a1 strictly past b1.
    """

    a0: Fraction
    a1: Fraction
    b1: Fraction
    b0: Fraction
    target: Fraction | None = None

    def __post_init__(self) -> None:
        if not self.a0 < self.a1 < self.b1 < self.b0:
            raise ValueError("need a0 < a1 < b1 < b0")
        if self.target is not None and not self.b1 < self.target < self.b0:
            raise ValueError("target must lie strictly between b1 and b0")

    def resolved_target(self) -> Fraction:
        return self.target if self.target is not None else (self.b1 + self.b0) / 2

    def to_json(self) -> dict:
        return {
            "a0": frac_to_str(self.a0),
            "a1": frac_to_str(self.a1),
            "b1": frac_to_str(self.b1),
            "b0": frac_to_str(self.b0),
            "target": frac_to_str(self.resolved_target()),
        }


def build_bump(spec: BumpSpec) -> PLMap:
    """PL homeomorphism fixing the complement of [a0, b0], a1 -> target."""
    return PLMap(
        "line",
        ((spec.a0, spec.a0), (spec.a1, spec.resolved_target()), (spec.b0, spec.b0)),
    )


def build_drop(spec: BumpSpec) -> PLMap:
    """Orientation-reversed counterpart: b1 is pulled strictly below a1.

    Same support [a0, b0]; used for the minima-side case by symmetry.
    """
    down_target = (spec.a0 + spec.a1) / 2
    return PLMap("line", ((spec.a0, spec.a0), (spec.b1, down_target), (spec.b0, spec.b0)))


def perturb_realization(
    realization: Realization,
    bump: PLMap,
    class_gen: int,
) -> tuple[dict, dict]:
    """Compose the bump onto the maps of one generator conjugacy class.

    Returns (perturbed maps, perturbed orbit points); actors outside the
    class keep their maps and orbit points unchanged.  Class membership of
    a normal form is exactly equality of its generator index.
    """
    maps = {}
    orbit = {}
    for q in realization.actors:
        base = realization.maps[q]
        if isinstance(q, FqElem) and q.gen == class_gen:
            maps[q] = base.compose(bump)
        else:
            maps[q] = base
        orbit[q] = maps[q].at(realization.embedding.x0)
    return maps, orbit


# ---------------------------------------------------------------------------
# witness search


@dataclass
class WitnessReport:
    """A successful non-isolation witness.

    The perturbed comparator agrees with the original on the agreement set
    but reverses the witness pair; both facts are verified before the
    report is returned, along with an axiom sample of the perturbed
    comparator.
    """

    case: int
    agree_radius: int
    m1_radius: int
    m2_radius: int
    class_gen: int
    qhat: FqElem
    mu_chain: list[MuExtremum]
    bump_spec: BumpSpec
    witness: tuple[FqElem, FqElem]
    agreement_set: list[FqElem]
    perturbed_order: RightOrderOracle
    original_order: RightOrderOracle
    sampler_report: Any
    perturbed_window: dict
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "found": True,
            "case": self.case,
            "agree_radius": self.agree_radius,
            "radii": [self.m1_radius, self.m2_radius],
            "class_gen": self.class_gen,
            "qhat": fq_to_str(self.qhat),
            "mu_chain": [
                {
                    "radius": mu.radius,
                    "actor": fq_to_str(mu.actor),
                    "image": fq_to_str(mu.image),
                }
                for mu in self.mu_chain
            ],
            "bump": self.bump_spec.to_json(),
            "witness": [fq_to_str(self.witness[0]), fq_to_str(self.witness[1])],
            "agreement_set": [fq_to_str(e) for e in self.agreement_set],
            "sampler": self.sampler_report.to_json(),
            "perturbed_window": self.perturbed_window,
            "trace": self.trace,
        }


@dataclass
class NoWitnessFound:
    """Search outcome when no qualifying radius pair exists.

    Expected for layered orders: all ball maxima come from the top
    generator class and all minima from the bottom one.
    """

    agree_radius: int
    search_radius: int
    trace: list

    def to_json(self) -> dict:
        return {
            "found": False,
            "agree_radius": self.agree_radius,
            "search_radius": self.search_radius,
            "trace": self.trace,
        }


class PerturbationError(RuntimeError):
    pass


def _orbit_sign(order) -> Any:
    def cmp_frac(a: Fraction, b: Fraction) -> int:
        return (a > b) - (a < b)

    return cmp_frac


def _choose_bump_interval(
    positions: Sequence[Fraction],
    pos_m: Fraction,
    pos_m1: Fraction,
    pos_m2: Fraction,
) -> BumpSpec:
    """Bump parameters hugging the gap just above the radius-m orbit point.

    a0, a1 trisect the gap between pos(mu_m) and the next realized orbit
    point, so every orbit point of the agreement ball stays strictly below
    the support; b1, b0 sit beyond every realized point, past pos(mu_M2).
    """
    above = [p for p in positions if p > pos_m]
    nxt = min(above) if above else pos_m1
    a0 = pos_m + (nxt - pos_m) / 3
    a1 = pos_m + 2 * (nxt - pos_m) / 3
    top = max(positions)
    b1 = max(pos_m2, top) + 1
    b0 = b1 + 2
    return BumpSpec(a0, a1, b1, b0)


def _perturbed_oracle(
    order: RightOrderOracle,
    index: IndexLambda,
    perturbed_orbit: dict,
    provenance: str,
) -> RightOrderOracle:
    members = frozenset(perturbed_orbit)
    sign = _orbit_sign(order)

    def compare(p, r) -> int:
        if p == r:
            return 0
        return index.pair(p, r) * sign(perturbed_orbit[p], perturbed_orbit[r])

    return RightOrderOracle(compare, order.domain, provenance, members=members)


def witness_nonisolation(
    order: RightOrderOracle,
    quandle: FreeQuandle,
    agree_radius: int = 1,
    search_radius: int = 5,
    qhat: FqElem | None = None,
    seed: int = 0,
    sampler_size: int = 10000,
    max_prefix: int = 5000,
) -> WitnessReport | NoWitnessFound:
    """Search for a nearby distinct order within the given search radius.

    Tries the maxima side first (case 1), then the minima side (case 2),
    over radius pairs in lexicographic order; requires strictly increasing
    extrema through agree_radius < M1 < M2 and extremizing actors of the
    two outer radii in different generator classes.  On success the whole
    pipeline (realize, bump, perturb, restore) runs and the report is
    verified: ball agreement, witness reversal, and an axiom sample of the
    perturbed comparator.
    """
    if not 1 <= agree_radius < search_radius:
        raise ValueError("need 1 <= agree_radius < search_radius")
    if qhat is None:
        qhat = quandle.generator(1)
    trace: list = []

    mu_max = {n: mu_plus(order, quandle, qhat, n) for n in range(1, search_radius + 1)}
    mu_min = {n: mu_minus(order, quandle, qhat, n) for n in range(1, search_radius + 1)}

    for case, table, sign in ((1, mu_max, +1), (2, mu_min, -1)):
        base = table[agree_radius]
        for m1 in range(agree_radius + 1, search_radius + 1):
            for m2 in range(m1 + 1, search_radius + 1):
                entry = {
                    "case": case,
                    "radii": [agree_radius, m1, m2],
                    "actors": [
                        fq_to_str(table[agree_radius].actor),
                        fq_to_str(table[m1].actor),
                        fq_to_str(table[m2].actor),
                    ],
                }
                e1, e2 = table[m1], table[m2]
                strict = (
                    sign * order(base.image, e1.image) < 0
                    and sign * order(e1.image, e2.image) < 0
                    and sign * order(qhat, base.image) < 0
                )
                if not strict:
                    entry["reason"] = "extrema not strictly increasing through the radii"
                    trace.append(entry)
                    continue
                if e1.actor.gen == e2.actor.gen:
                    entry["reason"] = "extremizing actors share a generator class"
                    trace.append(entry)
                    continue
                entry["reason"] = "qualified"
                trace.append(entry)
                return _run_pipeline(
                    order,
                    quandle,
                    qhat,
                    case,
                    agree_radius,
                    m1,
                    m2,
                    table,
                    trace,
                    seed,
                    sampler_size,
                    max_prefix,
                )
    return NoWitnessFound(agree_radius, search_radius, trace)


def _run_pipeline(
    order: RightOrderOracle,
    quandle: FreeQuandle,
    qhat: FqElem,
    case: int,
    agree_radius: int,
    m1: int,
    m2: int,
    mu_table: dict,
    trace: list,
    seed: int,
    sampler_size: int,
    max_prefix: int,
) -> WitnessReport:
    search_ball = quandle.ball(m2)
    domain = list(search_ball)
    images = {q: quandle.op(qhat, q) for q in domain}
    prefix_set: list = [qhat]
    seen = {qhat}
    for q in domain + list(images.values()):
        if q not in seen:
            seen.add(q)
            prefix_set.append(q)
    if len(prefix_set) > max_prefix:
        raise PerturbationError(f"prefix of {len(prefix_set)} exceeds cap {max_prefix}")

    if case == 2:
        # minima side: reflect through orientation reversal and reuse case 1
        base_order = order
        order = RightOrderOracle(
            lambda a, b: -base_order(a, b), order.domain, f"reversed({order.provenance})"
        )

    ordered = order.sort(prefix_set)
    embedding = build_line_embedding(order, tuple(ordered))
    realization = realize(quandle, embedding, domain)

    mu_m, mu_m1, mu_m2 = mu_table[agree_radius], mu_table[m1], mu_table[m2]
    positions = {q: realization.orbit_point(q) for q in domain}
    spec = _choose_bump_interval(
        list(positions.values()),
        positions[mu_m.actor],
        positions[mu_m1.actor],
        positions[mu_m2.actor],
    )
    bump = build_bump(spec)
    class_gen = mu_m1.actor.gen
    _, perturbed_orbit = perturb_realization(realization, bump, class_gen)

    values = list(perturbed_orbit.values())
    if len(set(values)) != len(values):
        raise PerturbationError("perturbed orbit points collided; adjust bump target")

    index = IndexLambda(basepoint=qhat, quandle=quandle, order=order)
    provenance = f"perturbed({order.provenance})"
    perturbed = _perturbed_oracle(order, index, perturbed_orbit, provenance)

    if case == 2:
        # undo the reflection so the reported comparators face the caller
        inner_perturbed = perturbed
        perturbed = RightOrderOracle(
            lambda a, b: -inner_perturbed.compare(a, b),
            inner_perturbed.domain,
            provenance,
            members=inner_perturbed.members,
        )
        inner = order
        order = RightOrderOracle(
            lambda a, b: -inner.compare(a, b), inner.domain, inner.provenance.removeprefix("reversed(").removesuffix(")")
        )

    agreement_set = quandle.ball(agree_radius)
    agrees, disagreement = agreement_window(order, perturbed, agreement_set)
    if not agrees:
        raise PerturbationError(f"perturbed order broke ball agreement at {disagreement}")

    s, t = mu_m1.actor, mu_m2.actor
    if order(s, t) > 0:
        s, t = t, s
    if not (order(s, t) < 0 and perturbed(t, s) < 0):
        raise PerturbationError("witness pair was not reversed by the perturbation")

    sampler = right_order_sampler(perturbed, quandle, domain, n_samples=sampler_size, seed=seed)
    if not sampler.ok:
        raise PerturbationError(f"perturbed comparator failed axiom sampling: {sampler.to_json()}")

    from .orders import window_dump

    window = window_dump(perturbed, order.sort(domain), to_str=fq_to_str)
    return WitnessReport(
        case=case,
        agree_radius=agree_radius,
        m1_radius=m1,
        m2_radius=m2,
        class_gen=class_gen,
        qhat=qhat,
        mu_chain=[mu_table[agree_radius], mu_table[m1], mu_table[m2]],
        bump_spec=spec,
        witness=(s, t),
        agreement_set=agreement_set,
        perturbed_order=perturbed,
        original_order=order,
        sampler_report=sampler,
        perturbed_window=window,
        trace=trace,
    )
