"""Command-line front end: ``lattice-loom <command> ...``.

Exit status is 0 on success or a passing check, 1 when a check or claim
fails, and 2 on bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import io
from .claims import FAIL, format_table, run_claims
from .completion import dm_completion, is_cycle_free, is_dm_complete
from .corpus import DEFAULT_SEED
from .digraph import (
    Digraph,
    alternating_class,
    check_p_properties,
    digraph_from_poset,
    intersection_property,
    reachability_graph,
    y_transitive,
)
from .dot import export_dot
from .errors import LatticeLoomError
from .generators import ALT, Family, FamilySpec, dl_construction, generate, generic_bipartite
from .graphs import BipartiteGraph
from .poset import DOWN, UP, Poset, cones, interval, is_connected, shape_of
from .symmetry import (
    is_k_cs_homogeneous,
    is_k_cs_transitive,
    is_locally_s_arc_transitive,
    is_s_arc_transitive,
)

PROPERTIES = ("s-arc", "local-s-arc", "k-cs-transitive", "k-cs-homogeneous", "dm-complete", "cycle-free",
              "connected", "intersection", "y-transitive", "p-properties")


class UsageError(Exception):
    pass


def _as_poset(structure) -> Poset:
    if isinstance(structure, Poset):
        return structure
    if isinstance(structure, BipartiteGraph):
        return structure.poset()
    raise UsageError("this command needs a poset or bipartite file")


def _as_digraph(structure) -> Digraph:
    if isinstance(structure, Digraph):
        return structure
    return digraph_from_poset(_as_poset(structure))


def _element(P: Poset, token: str) -> int:
    if P.labels is not None and token in P.labels:
        return P.labels.index(token)
    try:
        v = int(token)
    except ValueError:
        raise UsageError(f"no element named {token!r}") from None
    if not 0 <= v < P.n:
        raise UsageError(f"element {v} out of range")
    return v


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    if args.family == "generic":
        rounds = args.params[0] if args.params else 2
        structure = generic_bipartite(rounds, args.seed)
        meta = {"family": "generic", "rounds": str(rounds), "seed": str(args.seed)}
    else:
        try:
            fam = Family(args.family)
        except ValueError:
            raise UsageError(f"unknown family {args.family!r}") from None
        if fam is Family.DL:
            raise UsageError("use the 'dl' command to build edge digraphs")
        structure = generate(FamilySpec(fam, tuple(args.params)))
        meta = {"family": fam.value, "params": ",".join(map(str, args.params))}
    _emit(io.dumps(structure, meta), args.output)
    return 0


def cmd_complete(args) -> int:
    P = _as_poset(io.load(args.file))
    C = dm_completion(P)
    Q = C.completion
    print(f"elements: {Q.n}")
    print(f"added: {len(C.added)}")
    print(f"levels: {' '.join(map(str, C.level_counts()))}")
    print(f"up-ramification points: {len(C.up_ram)}")
    print(f"down-ramification points: {len(C.down_ram)}")
    if args.output:
        io.save(Q, args.output, {"added": ",".join(map(str, sorted(C.added)))})
    return 0


def cmd_interval(args) -> int:
    P = _as_poset(io.load(args.file))
    a, b = _element(P, args.a), _element(P, args.b)
    C = dm_completion(P)
    Q, ids = interval(C.completion, C.embed[a], C.embed[b])
    print(f"shape: {shape_of(Q)}")
    print("elements: " + " ".join(C.completion.label(i) for i in ids))
    return 0


def cmd_ram(args) -> int:
    P = _as_poset(io.load(args.file))
    C = dm_completion(P)
    Q = C.completion
    for name, pts, direction in (("up", C.up_ram, UP), ("down", C.down_ram, DOWN)):
        for v in sorted(pts):
            print(f"{name} {Q.label(v)} order={cones(Q, v, direction).ro}")
    return 0


def cmd_check(args) -> int:
    structure = io.load(args.file)
    prop = args.property
    window = False
    if prop == "s-arc":
        verdict = is_s_arc_transitive(structure, args.s).verdict
    elif prop == "local-s-arc":
        verdict = is_locally_s_arc_transitive(structure, args.s).verdict
    elif prop == "k-cs-transitive":
        verdict = is_k_cs_transitive(_as_poset(structure), args.k)
    elif prop == "k-cs-homogeneous":
        verdict = is_k_cs_homogeneous(_as_poset(structure), args.k)
    elif prop == "dm-complete":
        verdict = is_dm_complete(_as_poset(structure))
    elif prop == "cycle-free":
        verdict = is_cycle_free(_as_poset(structure))
    elif prop == "connected":
        verdict = is_connected(_as_poset(structure))
    elif prop == "intersection":
        report = intersection_property(_as_digraph(structure))
        verdict, window = report.holds, report.window_relative
    elif prop == "y-transitive":
        report = y_transitive(_as_digraph(structure), args.depth)
        verdict, window = report.verdict, report.window_relative
    else:
        if not args.delta:
            raise UsageError("p-properties needs --delta FILE")
        delta = io.load(args.delta)
        if not isinstance(delta, BipartiteGraph):
            raise UsageError("--delta must be a bipartite file")
        report = check_p_properties(_as_digraph(structure), delta)
        for key, res in report.results.items():
            print(f"{key}: {res.status}" + (f" ({res.detail})" if res.detail else ""))
        verdict, window = report.ok, report.window_relative
    suffix = " (window-relative)" if window else ""
    print(f"{prop}: {'true' if verdict else 'false'}{suffix}")
    return 0 if verdict else 1


def cmd_reach(args) -> int:
    D = _as_digraph(io.load(args.file))
    if args.arc:
        cls = alternating_class(D, tuple(args.arc))
        for a, b in sorted(cls):
            print(f"{a} -> {b}")
        return 0
    r = reachability_graph(D)
    print(f"classes: {len(r.classes)}")
    print(f"cut by window: {sum(r.truncated)}")
    print(f"universal: {str(r.universal).lower()}")
    print(f"bipartite: {str(r.bipartite).lower()}")
    print(f"classes isomorphic: {str(r.classes_isomorphic).lower()}")
    if r.delta is not None:
        print(f"pattern: {r.delta.nx}+{r.delta.ny} vertices, {len(r.delta.edges)} edges")
    return 0


def cmd_dl(args) -> int:
    if args.delta_file == ALT:
        delta = ALT
    else:
        delta = io.load(args.delta_file)
    D = dl_construction(delta, args.radius)
    _emit(io.dumps(D, {"radius": str(args.radius)}), args.output)
    return 0


def cmd_claims(args) -> int:
    reports = run_claims(args.filter)
    print(format_table(reports))
    return 1 if any(r.status == FAIL for r in reports) else 0


def cmd_export_dot(args) -> int:
    structure = io.load(args.file)
    if args.completion:
        structure = dm_completion(_as_poset(structure))
    _emit(export_dot(structure), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lattice-loom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a family member")
    g.add_argument("family", help="|".join([f.value for f in Family if f is not Family.DL] + ["generic"]))
    g.add_argument("params", nargs="*", type=int)
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("complete", help="Dedekind-MacNeille completion summary")
    c.add_argument("file")
    c.add_argument("-o", "--output", help="write the completion as a poset file")
    c.set_defaults(func=cmd_complete)

    i = sub.add_parser("interval", help="interval between two original elements, inside the completion")
    i.add_argument("file")
    i.add_argument("a")
    i.add_argument("b")
    i.set_defaults(func=cmd_interval)

    r = sub.add_parser("ram", help="ramification points and their cone counts")
    r.add_argument("file")
    r.set_defaults(func=cmd_ram)

    k = sub.add_parser("check", help="test one property")
    k.add_argument("file")
    k.add_argument("--property", required=True, choices=PROPERTIES)
    k.add_argument("--s", type=int, default=2)
    k.add_argument("--k", type=int, default=3)
    k.add_argument("--depth", type=int, default=2)
    k.add_argument("--delta")
    k.set_defaults(func=cmd_check)

    a = sub.add_parser("reach", help="alternating reachability classes")
    a.add_argument("file")
    a.add_argument("--arc", nargs=2, type=int, metavar=("TAIL", "HEAD"))
    a.set_defaults(func=cmd_reach)

    d = sub.add_parser("dl", help="edge digraph window patterned on a bipartite file (or ALT)")
    d.add_argument("delta_file")
    d.add_argument("--radius", type=int, required=True)
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_dl)

    cl = sub.add_parser("claims", help="run the registered claims")
    cl.add_argument("--filter", default="*")
    cl.set_defaults(func=cmd_claims)

    e = sub.add_parser("export-dot", help="Graphviz DOT text")
    e.add_argument("file")
    e.add_argument("--completion", action="store_true", help="draw the completion instead")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export_dot)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, LatticeLoomError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
