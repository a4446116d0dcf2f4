"""Graphviz DOT text for Hasse diagrams, two-part graphs and digraph windows."""

from __future__ import annotations

from .completion import CompletedPoset
from .digraph import Digraph
from .graphs import BipartiteGraph
from .poset import Poset


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _ranked(lines: list[str], rank_of: list[int]) -> None:
    groups: dict[int, list[int]] = {}
    for v, r in enumerate(rank_of):
        groups.setdefault(r, []).append(v)
    for r in sorted(groups, reverse=True):
        members = "; ".join(str(v) for v in groups[r])
        lines.append(f"  {{ rank=same; {members}; }}")


def export_dot(structure, name: str = "G", added: frozenset[int] | None = None) -> str:
    """Deterministic DOT text.

    Posets are drawn top down with one rank per height; points listed in
    ``added`` (or the added points of a completion) are open circles, the
    rest filled dots.  Digraphs rank by level when they carry one and draw
    window-boundary vertices dashed.
    """
    if isinstance(structure, CompletedPoset):
        return export_dot(structure.completion, name, structure.added)
    if isinstance(structure, BipartiteGraph):
        return export_dot(structure.poset(), name, added)
    lines = [f"digraph {_quote(name)} {{"]
    if isinstance(structure, Poset):
        P = structure
        if P.n:
            lines.append("  node [shape=circle, width=0.25, fixedsize=true];")
            added = added or frozenset()
            for v in range(P.n):
                style = "solid" if v in added else "filled"
                fill = "white" if v in added else "black"
                lines.append(f"  {v} [xlabel={_quote(P.label(v))}, label=\"\", style={style}, fillcolor={fill}];")
            _ranked(lines, P.heights())
            for a, b in sorted(P.covers, key=lambda c: (c[1], c[0])):
                lines.append(f"  {b} -> {a} [dir=none];")
    elif isinstance(structure, Digraph):
        D = structure
        for v in range(D.n):
            label = D.labels[v] if D.labels is not None else str(v)
            style = ', style=dashed' if v in D.boundary else ""
            lines.append(f"  {v} [label={_quote(label)}{style}];")
        if D.level is not None:
            _ranked(lines, list(D.level))
        for a, b in sorted(D.arcs):
            lines.append(f"  {a} -> {b};")
    else:
        raise TypeError(f"cannot draw {type(structure).__name__}")
    lines.append("}")
    return "\n".join(lines) + "\n"
