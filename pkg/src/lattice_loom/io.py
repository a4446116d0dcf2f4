"""One-object JSON files for posets, two-part graphs and digraphs.

Every file holds a single JSON object with a ``kind`` tag.  Loading checks
the structural invariants and names the one that failed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .digraph import Digraph
from .errors import CycleError, NotGraded, ParseError, ValidationError
from .graphs import BipartiteGraph
from .poset import Poset, build_poset

KINDS = ("poset", "bipartite", "digraph")


@dataclass
class StructureFile:
    kind: str
    structure: Any
    meta: dict[str, str] = field(default_factory=dict)


def to_record(structure, meta: dict[str, str] | None = None) -> dict:
    rec: dict[str, Any]
    if isinstance(structure, Poset):
        rec = {"kind": "poset", "n": structure.n, "edges": sorted(map(list, structure.covers))}
        labels = structure.labels
    elif isinstance(structure, BipartiteGraph):
        rec = {"kind": "bipartite", "n": structure.n,
               "edges": sorted([x, structure.nx + y] for x, y in structure.edges),
               "bipartition": [0] * structure.nx + [1] * structure.ny}
        labels = structure.labels
    elif isinstance(structure, Digraph):
        rec = {"kind": "digraph", "n": structure.n, "edges": sorted(map(list, structure.arcs))}
        if structure.level is not None:
            rec["levels"] = list(structure.level)
        if structure.open_in or structure.open_out:
            rec["open_in"] = sorted(structure.open_in)
            rec["open_out"] = sorted(structure.open_out)
        labels = structure.labels
    else:
        raise TypeError(f"cannot serialize {type(structure).__name__}")
    if labels is not None:
        rec["labels"] = list(labels)
    rec["meta"] = dict(meta or {})
    return rec


def dumps(structure, meta: dict[str, str] | None = None) -> str:
    return json.dumps(to_record(structure, meta), separators=(",", ":")) + "\n"


def save(structure, path: str | Path, meta: dict[str, str] | None = None) -> None:
    Path(path).write_text(dumps(structure, meta))


def _field(rec: dict, name: str, kind: type, required: bool = True):
    if name not in rec:
        if required:
            raise ParseError("missing field", field=name)
        return None
    value = rec[name]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        raise ParseError(f"expected {kind.__name__}", field=name)
    return value


def _pairs(rec: dict, n: int) -> list[tuple[int, int]]:
    edges = _field(rec, "edges", list)
    out = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) and not isinstance(v, bool) for v in e)):
            raise ParseError(f"edge {e!r} is not a pair of integers", field="edges")
        if not all(0 <= v < n for v in e):
            raise ParseError(f"edge {e!r} references a vertex outside 0..{n - 1}", field="edges")
        out.append((e[0], e[1]))
    return out


def parse_record(rec: Any) -> StructureFile:
    if not isinstance(rec, dict):
        raise ParseError("top level must be a JSON object")
    kind = _field(rec, "kind", str)
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", field="kind")
    n = _field(rec, "n", int)
    if n < 0:
        raise ParseError("n must be non-negative", field="n")
    pairs = _pairs(rec, n)
    labels = _field(rec, "labels", list, required=False)
    if labels is not None and len(labels) != n:
        raise ParseError(f"expected {n} labels", field="labels")
    meta = _field(rec, "meta", dict, required=False) or {}
    meta = {str(k): str(v) for k, v in meta.items()}

    pair_set = set(pairs)
    for a, b in pair_set:
        if a == b or (b, a) in pair_set:
            raise ValidationError("asymmetry", f"edges ({a}, {b}) and ({b}, {a})")

    if kind == "poset":
        try:
            P = build_poset(pairs, n=n, labels=labels)
        except CycleError as exc:
            raise ValidationError("acyclic", str(exc)) from None
        return StructureFile(kind, P, meta)

    if kind == "bipartite":
        parts = _field(rec, "bipartition", list)
        if len(parts) != n or any(p not in (0, 1) for p in parts):
            raise ValidationError("bipartition", "bipartition must give part 0 or 1 for every vertex")
        for a, b in pairs:
            if parts[a] == parts[b]:
                raise ValidationError("bipartition", f"edge ({a}, {b}) stays inside one part")
        lows = [v for v in range(n) if parts[v] == 0]
        highs = [v for v in range(n) if parts[v] == 1]
        ix = {v: i for i, v in enumerate(lows)}
        iy = {v: i for i, v in enumerate(highs)}
        edges = [(ix[a], iy[b]) if parts[a] == 0 else (ix[b], iy[a]) for a, b in pairs]
        lab = [labels[v] for v in lows + highs] if labels is not None else None
        return StructureFile(kind, BipartiteGraph(len(lows), len(highs), edges, lab), meta)

    levels = _field(rec, "levels", list, required=False)
    open_in = _field(rec, "open_in", list, required=False) or []
    open_out = _field(rec, "open_out", list, required=False) or []
    try:
        D = Digraph(n, pairs, levels, open_in, open_out, labels)
    except NotGraded as exc:
        raise ValidationError("levels", str(exc)) from None
    return StructureFile(kind, D, meta)


def loads_file(text: str) -> StructureFile:
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise ParseError("file is empty", line=1)
    if len(lines) > 1:
        raise ParseError("expected a single JSON object on one line", line=lines[1][0])
    lineno, body = lines[0]
    try:
        rec = json.loads(body)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=lineno) from None
    return parse_record(rec)


def load_file(path: str | Path) -> StructureFile:
    return loads_file(Path(path).read_text())


def loads(text: str):
    return loads_file(text).structure


def load(path: str | Path):
    return load_file(path).structure
