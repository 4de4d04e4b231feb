"""Command-line front end.

Subcommands: check, realize, restore, perturb, semiconj.  All output is
JSON (rationals as "p/q" strings, never floats) and byte-identical across
runs with the same arguments.  Exit codes: 0 ok, 1 violation or not found,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .freequandle import FreeQuandle, fq_to_str
from .orders import (
    IndexLambda,
    RightOrderOracle,
    circular_from_right,
    conjugation_order,
    e2_order,
    natural_order,
    right_order_sampler,
)
from .perturbation import NoWitnessFound, witness_nonisolation
from .quandles import (
    AlexanderQuandle,
    FiniteGroup,
    FiniteQuandle,
    TableFormatError,
    check_axioms,
    conj_quandle,
    core_quandle,
    dehn_quandle,
    is_latin_at,
    is_semi_latin_at,
    is_weak_latin,
    load_table_json,
)
from .rational import parse_frac
from .realization import (
    build_circle_embedding,
    build_line_embedding,
    check_consistency,
    close_prefix,
    realization_dump,
    realize,
    restore_right,
)
from .svg import svg_circle_embedding, svg_line_realization

USAGE_ERROR = 2
VIOLATION = 1


class UsageError(ValueError):
    pass


def _out_path(raw: str | None) -> Path | None:
    if raw is None:
        return None
    path = Path(raw)
    base = os.environ.get("QUORDER_OUT")
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _emit(payload: dict, out: Path | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


def _resolve_order(name: str, gens: int):
    """Order oracle, quandle, element printer, and enumeration for a name."""
    if name == "e2":
        return e2_order(), FreeQuandle(gens), fq_to_str, None
    if name == "conjugation":
        return conjugation_order(), FreeQuandle(gens), fq_to_str, None
    if name.startswith("alexander:"):
        t = parse_frac(name.split(":", 1)[1]) if "/" in name else Fraction(int(name.split(":", 1)[1]))
        quandle = AlexanderQuandle(t)
        return natural_order(), quandle, str, None
    if name.startswith("finite:"):
        path = Path(name.split(":", 1)[1])
        table = load_table_json(path.read_text())
        if not isinstance(table, FiniteQuandle):
            raise UsageError(f"{path} is not a quandle table")
        oracle = RightOrderOracle(lambda a, b: (a > b) - (a < b), "finite", "finite-table")
        return oracle, table, lambda i: table.labels[i], list(table.elements())
    raise UsageError(f"unknown order {name!r}")


def _free_prefix(order, quandle: FreeQuandle, prefix_radius: int, actor_radius: int):
    seed = quandle.ball(prefix_radius)
    actors = quandle.ball(actor_radius)
    prefix, core = close_prefix(quandle, seed, actors)
    return order.sort(prefix), core, actors


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    try:
        table = load_table_json(Path(args.table).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {args.table}")
    report: dict = {"file": args.table}
    if isinstance(table, FiniteGroup):
        if args.construct == "conj":
            quandle = conj_quandle(table, args.power)
        elif args.construct == "core":
            quandle = core_quandle(table)
        elif args.construct == "dehn":
            subset = [int(x) for x in args.subset.split(",")] if args.subset else None
            if not subset:
                raise UsageError("dehn construction needs --subset")
            quandle, dehn_report = dehn_quandle(table, subset)
            report["dehn_criterion"] = dehn_report.to_json()
        else:
            raise UsageError("group tables need --construct conj|core|dehn")
        report["construct"] = args.construct
    else:
        quandle = table
    axioms = check_axioms([list(r) for r in quandle.table])
    report["axioms"] = axioms.to_json()
    report["size"] = quandle.size
    report["latin"] = {
        str(p): {
            "latin": bool(is_latin_at(quandle, p)),
            "semi_latin": bool(is_semi_latin_at(quandle, p)),
        }
        for p in quandle.elements()
    }
    report["weak_latin"] = bool(is_weak_latin(quandle))
    _emit(report, _out_path(args.out))
    return 0 if axioms.ok else VIOLATION


def _realized(args):
    order, quandle, to_str, finite_elems = _resolve_order(args.order, args.gens)
    if isinstance(quandle, FreeQuandle):
        prefix, core, actors = _free_prefix(order, quandle, args.prefix_radius, args.actor_radius)
    elif isinstance(quandle, AlexanderQuandle):
        seed = [Fraction(k) for k in range(args.prefix_radius + 1)]
        seed += [-Fraction(k) for k in range(1, args.prefix_radius + 1)]
        actors = [Fraction(0), Fraction(1)]
        prefix, core = close_prefix(quandle, seed, actors)
        prefix = order.sort(prefix)
    else:
        prefix, core, actors = finite_elems, finite_elems, finite_elems
        sampler = right_order_sampler(order, quandle, prefix, n_samples=500, seed=args.seed)
        if not sampler.ok:
            raise UsageError("finite table admits no right order by its index order")
    if args.space == "circle":
        circ = circular_from_right(order)
        embedding = build_circle_embedding(circ, prefix)
        realization = realize(quandle, embedding, actors, core=core)
        consistency = check_consistency(realization, circular=circ)
    else:
        embedding = build_line_embedding(order, prefix)
        realization = realize(quandle, embedding, actors, core=core)
        consistency = check_consistency(realization, compare=order)
    return order, quandle, to_str, realization, consistency


def cmd_realize(args) -> int:
    order, quandle, to_str, realization, consistency = _realized(args)
    dump = realization_dump(realization, to_str=to_str)
    payload = {"order": args.order, "realization": dump, "consistency": consistency.to_json()}
    out = _out_path(args.out)
    _emit(payload, out)
    if args.svg:
        points = [(p["elem"], parse_frac(p["pos"])) for p in dump["points"]]
        if args.space == "circle":
            svg = svg_circle_embedding(points)
        else:
            maps = [
                (m["elem"], tuple((parse_frac(x), parse_frac(y)) for x, y in m["breakpoints"]))
                for m in dump["maps"]
            ]
            svg = svg_line_realization(points, maps)
        svg_path = (out or Path("realization.json")).with_suffix(".svg")
        svg_path.parent.mkdir(parents=True, exist_ok=True)
        svg_path.write_text(svg)
    return 0 if consistency.ok else VIOLATION


def cmd_restore(args) -> int:
    if args.space != "line":
        raise UsageError("restore currently runs on line realizations")
    order, quandle, to_str, realization, consistency = _realized(args)
    qhat = realization.embedding.basepoint
    index = IndexLambda(basepoint=qhat, quandle=quandle, order=order)
    actors = list(realization.actors)
    pairs = [(a, b) for i, a in enumerate(actors) for b in actors[i + 1 :]]
    report = restore_right(realization, index, pairs, order)
    payload = {
        "order": args.order,
        "consistency": consistency.to_json(),
        "restoration": report.to_json(),
    }
    _emit(payload, _out_path(args.out))
    return 0 if (report.ok and consistency.ok) else VIOLATION


def cmd_perturb(args) -> int:
    order, quandle, _, _ = _resolve_order(args.order, args.gens)
    if not isinstance(quandle, FreeQuandle):
        raise UsageError("perturb runs on free quandle orders")
    result = witness_nonisolation(
        order,
        quandle,
        agree_radius=args.agree_radius,
        search_radius=args.search_radius,
        seed=args.seed,
    )
    payload = {"order": args.order, "result": result.to_json()}
    _emit(payload, _out_path(args.out))
    return VIOLATION if isinstance(result, NoWitnessFound) else 0


def cmd_semiconj(args) -> int:
    from .realization import build_semiconjugacy

    def load_points(path: str) -> dict:
        data = json.loads(Path(path).read_text())
        dump = data.get("realization", data)
        return {p["elem"]: parse_frac(p["pos"]) for p in dump["points"]}, dump.get("space", "line")

    points1, space1 = load_points(args.dump1)
    points2, space2 = load_points(args.dump2)
    if space1 != space2:
        raise UsageError("dumps live on different spaces")
    shared = sorted(set(points1) & set(points2))
    if not shared:
        raise UsageError("dumps share no elements")
    orb1 = {e: points1[e] for e in shared}
    orb2 = {e: points2[e] for e in shared}
    corr, witness = build_semiconjugacy(orb1, orb2, space=space1)
    payload = {
        "space": space1,
        "shared_elements": len(shared),
        "monotone": corr is not None,
    }
    if corr is not None:
        from .rational import frac_to_str

        payload["correspondence"] = [
            {"elem": e, "from": frac_to_str(p2), "to": frac_to_str(p1)} for e, p2, p1 in corr
        ]
    else:
        payload["witness"] = list(witness)
    _emit(payload, _out_path(args.out))
    return 0 if corr is not None else VIOLATION


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--order", default="e2", help="e2 | conjugation | alexander:<t> | finite:<file>")
    p.add_argument("--gens", type=int, default=2, help="number of free generators")
    p.add_argument("--seed", type=int, default=0, help="seed for samplers")
    p.add_argument("--out", default=None, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quorder", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a table file and report predicates")
    p.add_argument("table", help="JSON table file")
    p.add_argument("--construct", choices=["conj", "core", "dehn"], default=None)
    p.add_argument("--power", type=int, default=1, help="conjugation power for conj")
    p.add_argument("--subset", default=None, help="comma-separated indices for dehn")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("realize", help="embed a prefix and realize the action")
    _add_common(p)
    p.add_argument("--prefix-radius", type=int, default=3)
    p.add_argument("--actor-radius", type=int, default=1)
    p.add_argument("--space", choices=["line", "circle"], default="line")
    p.add_argument("--svg", action="store_true", help="also write an SVG rendering")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("restore", help="realize, restore from the orbit, compare")
    _add_common(p)
    p.add_argument("--prefix-radius", type=int, default=3)
    p.add_argument("--actor-radius", type=int, default=1)
    p.add_argument("--space", choices=["line"], default="line")
    p.set_defaults(func=cmd_restore)

    p = sub.add_parser("perturb", help="search for a nearby distinct order")
    _add_common(p)
    p.add_argument("--agree-radius", type=int, default=1)
    p.add_argument("--search-radius", type=int, default=5)
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("semiconj", help="monotone correspondence between two dumps")
    p.add_argument("dump1")
    p.add_argument("dump2")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_semiconj)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except TableFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VIOLATION


if __name__ == "__main__":
    sys.exit(main())
