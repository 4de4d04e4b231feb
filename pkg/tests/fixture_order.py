"""Constructed finite-window right order admitting a maxima-side witness.

The layered and conjugation orders never produce ball extrema in distinct
generator classes, so the perturbation pipeline's positive path needs a
synthetic scenario: a total order on a finite window of FQ(x1,x2) that

* is right-invariant on every in-window action triple,
* has ball-image maxima at radii 1 < 3 < 5 realized by actors of distinct
  generator classes (x1^[x2] at radius 3, x2^[x1.x1] at radius 5), and
* positions the orbit images so that the bump perturbation flips exactly
  an action-closed family of pairs, keeping the restored comparator
  right-invariant where defined.

The order is produced by a small constraint solver: pairs of window
elements coupled by the action (sign(a,b) must equal sign(a*q,b*q)) are
merged in a parity union-find, the scenario layout seeds orient some
components, the rest default to the layered order, and the resulting
tournament is completed maintaining acyclicity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from quorder.freequandle import FqElem, FreeQuandle, ball, fq_inv_op, fq_op, fq_to_str, parse_fq
from quorder.orders import RightOrderOracle, e2_order_compare

QHAT = parse_fq("x1^[e]")
WITNESS_S = parse_fq("x1^[x2]")
WITNESS_T = parse_fq("x2^[x1.x1]")
SIDE_B1 = parse_fq("x1^[x2.x1^-1]")
SIDE_C = parse_fq("x2^[x1]")


@dataclass
class Case1Fixture:
    oracle: RightOrderOracle
    quandle: FreeQuandle
    window: list[FqElem]
    search_ball: list[FqElem]
    witness: tuple[FqElem, FqElem]
    expected_flips: set[frozenset]


def _key(e: FqElem) -> tuple:
    return e.sort_key()


def _node(a: FqElem, b: FqElem) -> tuple:
    return (a, b) if _key(a) <= _key(b) else (b, a)


class _ParityUF:
    """Union-find tracking a sign between each node and its root."""

    def __init__(self):
        self.parent: dict = {}
        self.parity: dict = {}

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.parity[x] = 0

    def find(self, x) -> tuple:
        self.add(x)
        if self.parent[x] == x:
            return x, 0
        root, par = self.find(self.parent[x])
        par ^= self.parity[x]
        self.parent[x] = root
        self.parity[x] = par
        return root, par

    def union(self, x, y, rel: int) -> bool:
        """Assert value(x) = value(y) XOR rel; False on contradiction."""
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            return (px ^ py) == rel
        self.parent[rx] = ry
        self.parity[rx] = px ^ py ^ rel
        return True


def _oriented(a: FqElem, b: FqElem) -> tuple:
    """Canonical node plus the flip of the orientation (a, b)."""
    n = _node(a, b)
    return n, 0 if n == (a, b) else 1


def _acyclic_order(edges: set[tuple], nodes: list) -> list | None:
    """Topological order of nodes under edges, or None on a cycle."""
    succ: dict = {u: [] for u in nodes}
    indeg = {u: 0 for u in nodes}
    for u, v in edges:
        succ[u].append(v)
        indeg[v] += 1
    ready = sorted((u for u in nodes if indeg[u] == 0), key=_key)
    out = []
    while ready:
        u = ready.pop(0)
        out.append(u)
        grew = False
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
                grew = True
        if grew:
            ready.sort(key=_key)
    return out if len(out) == len(nodes) else None


def build_case1_fixture() -> Case1Fixture:
    fq = FreeQuandle(2)
    E = ball(2, 5)
    e_set = set(E)
    images = {e: fq_op(QHAT, e) for e in E}
    window: list[FqElem] = []
    for e in [QHAT] + E + [images[e] for e in E]:
        if e not in window:
            window.append(e)
    w_set = set(window)

    s, t, b1, c = WITNESS_S, WITNESS_T, SIDE_B1, SIDE_C
    L = images
    p_img = L[c]  # x1^[x2.x1]
    assert p_img == parse_fq("x1^[x2.x1]")
    ls, lb1, lt = L[s], L[b1], L[t]
    assert ls == parse_fq("x1^[x2^-1.x1.x2]")
    assert lb1 == parse_fq("x1^[x2^-1.x1.x2.x1^-1]")
    assert lt == parse_fq("x1^[x2.x1.x1]")

    # pairs coupled by the action, at two scopes: window-wide equalities
    # keep the realized maps monotone (breakpoints draw on all embedded
    # pairs), while the ball-scope closure governs which pair families the
    # perturbed comparator may flip (its domain is the ball)
    uf = _ParityUF()
    uf_ball = _ParityUF()
    triples = []
    for a, b in itertools.combinations(window, 2):
        for q in E:
            for op in (fq_op, fq_inv_op):
                aq, bq = op(a, q), op(b, q)
                if aq in w_set and bq in w_set:
                    n1, f1 = _oriented(a, b)
                    n2, f2 = _oriented(aq, bq)
                    if n1 == n2:
                        continue
                    assert uf.union(n1, n2, f1 ^ f2), (a, b, q)
                    triples.append((a, b, q, op))
                    if all(x in e_set for x in (a, b, aq, bq)):
                        assert uf_ball.union(n1, n2, f1 ^ f2), (a, b, q)

    # the flip family must be a union of ball-scope components
    def ball_component(pair_node):
        root, _ = uf_ball.find(pair_node)
        return {n for n in list(uf_ball.parent) if uf_ball.find(n)[0] == root}

    comp_wt = ball_component(_node(s, t))
    assert comp_wt == {_node(s, t), _node(b1, c)}, comp_wt
    comp_b1t = ball_component(_node(b1, t))
    assert comp_b1t == {_node(b1, t)}, comp_b1t
    expected_flips = {frozenset(p) for p in (_node(s, t), _node(b1, c), _node(b1, t))}

    # scenario layout seeds: each (a, b) asserts a < b.  The chain seeds are
    # mandatory; the image-placement seeds are soft (a window-level coupling
    # may force an image above the radius-1 maximum, in which case it is
    # pushed just below the mover orbit points instead).
    free_images = [
        L[e]
        for e in E
        if L[e] not in (QHAT, s, lb1, p_img, ls, lt)
    ]
    signs: dict = {}

    def set_sign(a: FqElem, b: FqElem, required: bool) -> bool:
        n, flip = _oriented(a, b)
        root, par = uf.find(n)
        value = 1 ^ flip ^ par  # 1 encodes "canonical pair is ascending"
        if root in signs and signs[root] != value:
            assert not required, f"seed conflict at {fq_to_str(a)} < {fq_to_str(b)}"
            return False
        signs[root] = value
        return True

    for a, b in (
        (QHAT, s),      # radius-1 image max is L(x2^e) = s
        (s, lb1),       # mover orbit points sit above it
        (lb1, p_img),   # the crossed image of x2^[x1]
        (p_img, ls),    # radius-3 image max
        (ls, lt),       # radius-5 image max
        (s, t),         # witness pair original sign
    ):
        set_sign(a, b, required=True)
    for v in free_images:
        # below the bump support if possible, else below the mover points
        if not set_sign(v, s, required=False):
            set_sign(v, lb1, required=False)

    # assemble the tournament, defaulting unseeded components to the
    # layered order of their canonical representative
    edges: set[tuple] = set()
    assigned: dict = dict(signs)

    def edge_of(node, value: int) -> tuple:
        u, v = node
        return (u, v) if value == 1 else (v, u)

    all_nodes = [_node(a, b) for a, b in itertools.combinations(window, 2)]
    for n in all_nodes:
        uf.add(n)
    by_root: dict = {}
    for n in all_nodes:
        root, _ = uf.find(n)
        by_root.setdefault(root, []).append(n)

    def placement_order(kv):
        root, members = kv
        return (root not in assigned, -len(members), _key(root[0]), _key(root[1]))

    for root, members in sorted(by_root.items(), key=placement_order):
        if root in assigned:
            value = assigned[root]
            choices = [value]
        else:
            u, v = root
            default = 1 if e2_order_compare(u, v) < 0 else 0
            choices = [default, default ^ 1]
        placed = False
        for value in choices:
            new_edges = set()
            ok = True
            for n in members:
                _, par = uf.find(n)
                new_edges.add(edge_of(n, value ^ par))
            trial = edges | new_edges
            if _acyclic_order(trial, window) is not None:
                edges = trial
                assigned[root] = value
                placed = True
                break
        assert placed, f"could not orient component of {root}"

    order_list = _acyclic_order(edges, window)
    assert order_list is not None
    rank = {e: i for i, e in enumerate(order_list)}

    members = frozenset(window)

    def compare(a: FqElem, b: FqElem) -> int:
        ra, rb = rank[a], rank[b]
        return (ra > rb) - (ra < rb)

    oracle = RightOrderOracle(compare, "free-quandle", "fixture-case1", members=members)

    # verification: right-invariance on every coupled triple
    for a, b, q, op in triples:
        assert oracle(a, b) == oracle(op(a, q), op(b, q)), (a, b, q)
    # scenario shape
    assert oracle(QHAT, s) < 0 and oracle(s, t) < 0
    for e in E:
        if e != t:
            assert oracle(L[e], lt) < 0
    for e in ball(2, 3):
        if e != s:
            assert oracle(L[e], ls) < 0

    return Case1Fixture(
        oracle=oracle,
        quandle=fq,
        window=order_list,
        search_ball=E,
        witness=(s, t),
        expected_flips=expected_flips,
    )
