"""Asymmetric digraphs, alternating reachability and finite-window property checks.

Arcs point from a higher level to a lower one, the same way the Hasse
diagram of a poset is read top down.  Truncated windows of infinite digraphs
mark vertices whose in- or out-neighbourhood was cut (``open_in`` /
``open_out``); every universally quantified check skips witnesses that touch
such a vertex and its report says the verdict only holds for the window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .errors import MissingArc, MissingLevels, NotConnected, NotGraded
from .graphs import BipartiteGraph
from .poset import Poset, build_poset, iter_bits

DOWN = "down"
UP = "up"

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"


class Digraph:
    """Finite loopless digraph with no pair of opposite arcs."""

    __slots__ = ("n", "arcs", "level", "open_in", "open_out", "labels", "out_adj", "in_adj")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]], level: Sequence[int] | None = None,
                 open_in: Iterable[int] = (), open_out: Iterable[int] = (), labels: Sequence[str] | None = None):
        arcs = frozenset((int(a), int(b)) for a, b in arcs)
        out_adj = [0] * n
        in_adj = [0] * n
        for a, b in arcs:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"arc ({a}, {b}) out of range")
            if a == b:
                raise ValueError(f"loop at {a}")
            if (b, a) in arcs:
                raise ValueError(f"arcs ({a}, {b}) and ({b}, {a}) both present")
            out_adj[a] |= 1 << b
            in_adj[b] |= 1 << a
        if level is not None:
            level = tuple(int(x) for x in level)
            if len(level) != n:
                raise ValueError("level map must cover every vertex")
            bad = [(a, b) for a, b in arcs if level[a] != level[b] + 1]
            if bad:
                raise NotGraded(f"arc {bad[0]} does not drop exactly one level")
        self.n = n
        self.arcs = arcs
        self.level = level
        self.open_in = frozenset(open_in)
        self.open_out = frozenset(open_out)
        self.labels = tuple(labels) if labels is not None else None
        self.out_adj = tuple(out_adj)
        self.in_adj = tuple(in_adj)

    @property
    def boundary(self) -> frozenset[int]:
        return self.open_in | self.open_out

    def interior(self) -> list[int]:
        b = self.boundary
        return [v for v in range(self.n) if v not in b]

    def out_neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.out_adj[v]))

    def in_neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.in_adj[v]))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = frontier = 1
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.out_adj[v] | self.in_adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def induced(self, vertices: Iterable[int]) -> tuple["Digraph", list[int]]:
        ids = sorted(set(vertices))
        index = {v: i for i, v in enumerate(ids)}
        arcs = [(index[a], index[b]) for a, b in self.arcs if a in index and b in index]
        level = [self.level[v] for v in ids] if self.level is not None else None
        return Digraph(len(ids), arcs, level,
                       [index[v] for v in self.open_in if v in index],
                       [index[v] for v in self.open_out if v in index]), ids

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.arcs)
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self.n, self.arcs, self.level, self.open_in, self.open_out) == \
            (other.n, other.arcs, other.level, other.open_in, other.open_out)

    def __hash__(self) -> int:
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self.arcs)}, open={len(self.boundary)})"


def digraph_from_poset(P: Poset, require_levels: bool = False) -> Digraph:
    """Hasse diagram with each cover ``a < b`` drawn as the arc ``b -> a``.

    Levels are attached when every cover raises height by exactly one.
    """
    h = P.heights()
    graded = all(h[b] == h[a] + 1 for a, b in P.covers)
    if require_levels and not graded:
        raise NotGraded("covers disagree on rank")
    return Digraph(P.n, [(b, a) for a, b in P.covers], h if graded else None, labels=P.labels)


def poset_of(D: Digraph) -> Poset:
    """Order generated by ``head < tail`` for every arc."""
    return build_poset([(b, a) for a, b in D.arcs], n=D.n, labels=D.labels)


def descendants(D: Digraph, v: int, direction: str = DOWN) -> set[int]:
    """Vertices reachable from ``v`` along arcs (``up`` walks them backwards); includes ``v``."""
    return set(iter_bits(_reach_mask(D, v, direction)))


def _reach_mask(D: Digraph, v: int, direction: str = DOWN) -> int:
    if direction not in (DOWN, UP):
        raise ValueError(f"direction must be 'down' or 'up', not {direction!r}")
    adj = D.out_adj if direction == DOWN else D.in_adj
    seen = frontier = 1 << v
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= adj[u]
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def is_desc_tree(D: Digraph, v: int) -> bool:
    """Whether the subdigraph induced on the descendants of ``v`` is a tree."""
    m = _reach_mask(D, v)
    arcs = sum(1 for a, b in D.arcs if m >> a & 1 and m >> b & 1)
    return arcs == bin(m).count("1") - 1


# alternating reachability

def alternating_classes(D: Digraph) -> list[frozenset[tuple[int, int]]]:
    """Arcs grouped by alternating walks: two arcs are linked when they share a tail or a head."""
    parent = list(range(2 * D.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    # node 2v stands for "tail v", node 2v+1 for "head v"
    for a, b in D.arcs:
        x, y = find(2 * a), find(2 * b + 1)
        if x != y:
            parent[max(x, y)] = min(x, y)
    groups: dict[int, set] = {}
    for a, b in D.arcs:
        groups.setdefault(find(2 * a), set()).add((a, b))
    return sorted((frozenset(g) for g in groups.values()), key=min)


def alternating_class(D: Digraph, arc: tuple[int, int]) -> frozenset[tuple[int, int]]:
    arc = (int(arc[0]), int(arc[1]))
    if arc not in D.arcs:
        raise MissingArc(arc)
    seen = {arc}
    stack = [arc]
    while stack:
        a, b = stack.pop()
        for c in iter_bits(D.out_adj[a]):
            if (a, c) not in seen:
                seen.add((a, c))
                stack.append((a, c))
        for c in iter_bits(D.in_adj[b]):
            if (c, b) not in seen:
                seen.add((c, b))
                stack.append((c, b))
    return frozenset(seen)


def class_is_truncated(D: Digraph, cls: Iterable[tuple[int, int]]) -> bool:
    """A class is cut by the window when one of its tails lost out-arcs or heads lost in-arcs."""
    return any(a in D.open_out or b in D.open_in for a, b in cls)


def class_digraph(cls: Iterable[tuple[int, int]]) -> Digraph:
    verts = sorted({v for arc in cls for v in arc})
    index = {v: i for i, v in enumerate(verts)}
    return Digraph(len(verts), [(index[a], index[b]) for a, b in cls])


def class_bipartite(cls: Iterable[tuple[int, int]]) -> BipartiteGraph | None:
    """The class as a two-part graph: heads form the lower part, tails the upper.

    ``None`` when some vertex is both a head and a tail inside the class.
    """
    tails = sorted({a for a, _ in cls})
    heads = sorted({b for _, b in cls})
    if set(tails) & set(heads):
        return None
    ix = {v: i for i, v in enumerate(heads)}
    iy = {v: i for i, v in enumerate(tails)}
    return BipartiteGraph(len(heads), len(tails), [(ix[b], iy[a]) for a, b in cls])


def delta_digraph(delta: BipartiteGraph) -> Digraph:
    """A two-part graph as a digraph with every edge pointing from the upper part down."""
    return Digraph(delta.n, [(delta.nx + y, x) for x, y in delta.edges])


def matches_delta(cls: Iterable[tuple[int, int]], delta: BipartiteGraph) -> bool:
    from .symmetry import find_isomorphism

    return find_isomorphism(class_digraph(cls), delta_digraph(delta)) is not None


@dataclass
class ReachabilityReport:
    classes: list[frozenset[tuple[int, int]]]
    truncated: list[bool]
    delta: BipartiteGraph | None
    universal: bool
    bipartite: bool
    arc_transitive: bool
    classes_isomorphic: bool
    window_relative: bool


def reachability_graph(D: Digraph) -> ReachabilityReport:
    """Alternating classes of ``D`` with a representative two-part graph.

    The representative is the first class not cut by the window (the first
    class overall if all are cut).  ``classes_isomorphic`` compares the
    uncut classes only.
    """
    from .symmetry import automorphism_group, find_isomorphism

    if not D.is_connected():
        raise NotConnected("digraph is not connected")
    classes = alternating_classes(D)
    truncated = [class_is_truncated(D, c) for c in classes]
    whole = [c for c, t in zip(classes, truncated) if not t]
    rep = whole[0] if whole else (classes[0] if classes else frozenset())
    universal = len(classes) == 1
    bipartite = all(class_bipartite(c) is not None for c in classes)
    group = automorphism_group(D)
    arc_orbits = group.tuple_orbits(sorted(D.arcs))
    iso = True
    if whole:
        first = class_digraph(whole[0])
        iso = all(find_isomorphism(first, class_digraph(c)) is not None for c in whole[1:])
    return ReachabilityReport(
        classes=classes,
        truncated=truncated,
        delta=class_bipartite(rep) if rep else None,
        universal=universal,
        bipartite=bipartite,
        arc_transitive=len(arc_orbits) <= 1,
        classes_isomorphic=iso,
        window_relative=bool(D.boundary),
    )


# intersection property

@dataclass
class IntersectionReport:
    holds: bool
    witness: tuple[int, int] | None = None
    window_relative: bool = False

    def __bool__(self) -> bool:
        return self.holds


def intersection_property(D: Digraph) -> IntersectionReport:
    """Any two descendant sets that meet intersect in the descendant set of one vertex.

    Window-boundary vertices are not used as the two sources.
    """
    desc = [_reach_mask(D, v) for v in range(D.n)]
    sources = D.interior()
    for i, x in enumerate(sources):
        for y in sources[i + 1:]:
            common = desc[x] & desc[y]
            if not common:
                continue
            if not any(common & ~desc[z] == 0 for z in iter_bits(common)):
                return IntersectionReport(False, (x, y), bool(D.boundary))
    return IntersectionReport(True, None, bool(D.boundary))


# Y-configurations

Y = "Y"
YBAR = "Ybar"


@dataclass(frozen=True)
class YShape:
    """Two branches meeting at ``junction`` and continuing along a shared trunk.

    For a ``Y`` the branches run backwards (against the arcs) from the
    junction and the trunk forwards; a ``Ybar`` is the reverse.  Every path
    is stored starting at the junction.
    """

    kind: str
    junction: int
    trunk: tuple[int, ...]
    branches: frozenset[tuple[int, ...]]
    depth: int

    def vertices(self) -> set[int]:
        return set(self.trunk).union(*self.branches)

    def image(self, g: Sequence[int]) -> "YShape":
        return YShape(self.kind, g[self.junction], tuple(g[v] for v in self.trunk),
                      frozenset(tuple(g[v] for v in b) for b in self.branches), self.depth)


def _paths(adj: Sequence[int], start: int, length: int, allowed: int) -> list[tuple[int, ...]]:
    paths = [(start,)]
    for _ in range(length):
        paths = [p + (w,) for p in paths for w in iter_bits(adj[p[-1]] & allowed) if w not in p]
    return paths


def y_shapes(D: Digraph, depth: int, kind: str | None = None) -> list[YShape]:
    """Depth-bounded Y and Ybar shapes that stay away from window-boundary vertices."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    allowed = sum(1 << v for v in D.interior())
    out = []
    for k, branch_adj, trunk_adj in ((Y, D.in_adj, D.out_adj), (YBAR, D.out_adj, D.in_adj)):
        if kind is not None and kind != k:
            continue
        for j in iter_bits(allowed):
            trunks = _paths(trunk_adj, j, depth, allowed)
            if not trunks:
                continue
            branches = _paths(branch_adj, j, depth, allowed)
            for t in trunks:
                tset = set(t[1:])
                for i, b1 in enumerate(branches):
                    if tset & set(b1[1:]):
                        continue
                    for b2 in branches[i + 1:]:
                        if b1[1] == b2[1] or set(b1[1:]) & set(b2[1:]) or tset & set(b2[1:]):
                            continue
                        out.append(YShape(k, j, t, frozenset((b1, b2)), depth))
    return out


@dataclass
class YReport:
    depth: int
    y_count: int
    ybar_count: int
    y_orbits: int
    ybar_orbits: int
    window_relative: bool

    @property
    def verdict(self) -> bool:
        return self.y_orbits <= 1 and self.ybar_orbits <= 1

    def __bool__(self) -> bool:
        return self.verdict


def y_transitive(D: Digraph, depth: int, group=None) -> YReport:
    """One automorphism orbit on the Y shapes and one on the Ybar shapes of the window."""
    from .symmetry import automorphism_group, orbit_classes

    group = group or automorphism_group(D)
    counts = {}
    for k in (Y, YBAR):
        shapes = y_shapes(D, depth, k)
        orbits = orbit_classes(shapes, group.generators, lambda g, s: s.image(g))
        counts[k] = (len(shapes), len(orbits))
    return YReport(depth, counts[Y][0], counts[YBAR][0], counts[Y][1], counts[YBAR][1], bool(D.boundary))


# window checks

@dataclass
class PropertyResult:
    status: str
    detail: str = ""
    witness: object = None

    @property
    def ok(self) -> bool:
        return self.status != FAIL


@dataclass
class PReport:
    results: dict[str, PropertyResult]
    window_relative: bool
    skipped: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results.values())

    def __getitem__(self, key: str) -> PropertyResult:
        return self.results[key]


def _interior_blocks(D: Digraph) -> list[set[tuple[int, int]]]:
    """Arc sets of the cycle-carrying blocks of the interior's underlying graph."""
    inner = set(D.interior())
    g = nx.Graph()
    g.add_nodes_from(inner)
    g.add_edges_from((a, b) for a, b in D.arcs if a in inner and b in inner)
    blocks = []
    for comp in nx.biconnected_component_edges(g):
        if len(comp) < 3:
            continue
        arcs = set()
        for a, b in comp:
            arcs.add((a, b) if (a, b) in D.arcs else (b, a))
        blocks.append(arcs)
    return blocks


def check_p_properties(D: Digraph, delta: BipartiteGraph) -> PReport:
    """Window checks of four structural properties against the pattern ``delta``.

    * P2: no cycle passes straight through a vertex (one arc in, one out).
    * P3: every cycle sits inside one alternating class, and that class is a copy of ``delta``.
    * P4: at every interior vertex the out-arcs and the in-arcs each lie in a copy of ``delta``.
    * P5: each arc lies in exactly one embedded copy of ``delta``, namely its class.

    A block with a vertex that has both an in-arc and an out-arc inside the
    block carries a cycle through both arcs, which is how P2 is decided
    without listing cycles.  Classes cut by the window are skipped.
    """
    if D.level is None:
        raise MissingLevels("digraph carries no level map")
    cls_of: dict[tuple[int, int], int] = {}
    classes = alternating_classes(D)
    for i, c in enumerate(classes):
        for arc in c:
            cls_of[arc] = i
    cut = [class_is_truncated(D, c) for c in classes]
    iso_cache: dict[int, bool] = {}

    def is_delta(i: int) -> bool:
        if i not in iso_cache:
            iso_cache[i] = matches_delta(classes[i], delta)
        return iso_cache[i]

    results: dict[str, PropertyResult] = {}
    skipped = {"P3": 0, "P4": 0, "P5": 0}
    blocks = _interior_blocks(D)

    # P2 holds outright when there is no cycle at all
    res = PropertyResult(PASS)
    for arcs in blocks:
        tails = {a for a, _ in arcs}
        heads = {b for _, b in arcs}
        through = tails & heads
        if through:
            res = PropertyResult(FAIL, "a cycle passes straight through a vertex", min(through))
            break
    results["P2"] = res

    # P3
    res = PropertyResult(PASS if blocks else VACUOUS)
    for arcs in blocks:
        ids = {cls_of[a] for a in arcs}
        if len(ids) > 1:
            res = PropertyResult(FAIL, "a cycle uses arcs from two classes", min(arcs))
            break
        (i,) = ids
        if cut[i]:
            skipped["P3"] += 1
            continue
        if not is_delta(i):
            res = PropertyResult(FAIL, "a cycle's class is not a copy of the pattern", min(arcs))
            break
    results["P3"] = res

    # P4
    res = PropertyResult(VACUOUS)
    for v in D.interior():
        for arc in [(v, w) for w in D.out_neighbors(v)][:1] + [(u, v) for u in D.in_neighbors(v)][:1]:
            i = cls_of[arc]
            if cut[i]:
                skipped["P4"] += 1
                continue
            if not is_delta(i):
                res = PropertyResult(FAIL, "a star's class is not a copy of the pattern", v)
                break
            res = PropertyResult(PASS)
        if res.status == FAIL:
            break
    results["P4"] = res

    # P5
    pattern = delta_digraph(delta)
    res = PropertyResult(VACUOUS)
    for arc in sorted(D.arcs):
        i = cls_of[arc]
        if cut[i]:
            skipped["P5"] += 1
            continue
        if not is_delta(i):
            res = PropertyResult(FAIL, "an arc's class is not a copy of the pattern", arc)
            break
        copies = copies_through_arc(D, arc, pattern)
        if copies != 1:
            res = PropertyResult(FAIL, f"arc lies in {copies} copies of the pattern", arc)
            break
        res = PropertyResult(PASS)
    results["P5"] = res
    return PReport(results, bool(D.boundary), skipped)


def copies_through_arc(D: Digraph, arc: tuple[int, int], pattern: Digraph) -> int:
    """Number of distinct arc sets of embedded copies of ``pattern`` that contain ``arc``.

    Every such copy sends some pattern arc onto ``arc``, so the search pins
    each pattern arc there in turn and extends along pattern adjacency.
    """
    images: set[frozenset[tuple[int, int]]] = set()
    p_out = [set(pattern.out_neighbors(v)) for v in range(pattern.n)]
    p_in = [set(pattern.in_neighbors(v)) for v in range(pattern.n)]
    for p, q in pattern.arcs:
        order = _bfs_order(pattern, p, q)
        _extend(D, pattern, p_out, p_in, order, {p: arc[0], q: arc[1]}, {arc[0], arc[1]}, 2, images)
    return len(images)


def _bfs_order(pattern: Digraph, p: int, q: int) -> list[int]:
    order = [p, q]
    seen = {p, q}
    i = 0
    while i < len(order):
        v = order[i]
        for w in pattern.out_neighbors(v) + pattern.in_neighbors(v):
            if w not in seen:
                seen.add(w)
                order.append(w)
        i += 1
    if len(order) != pattern.n:
        raise ValueError("pattern must be connected")
    return order


def _extend(D, pattern, p_out, p_in, order, mapping, used, i, images):
    if i == len(order):
        images.add(frozenset((mapping[a], mapping[b]) for a, b in pattern.arcs))
        return
    v = order[i]
    anchor = next(u for u in order[:i] if u in p_out[v] or u in p_in[v])
    if anchor in p_in[v]:
        cands = D.out_adj[mapping[anchor]]
    else:
        cands = D.in_adj[mapping[anchor]]
    for c in iter_bits(cands):
        if c in used:
            continue
        ok = all(
            (not (u in p_out[v]) or D.out_adj[c] >> mapping[u] & 1)
            and (not (u in p_in[v]) or D.in_adj[c] >> mapping[u] & 1)
            for u in order[:i]
        )
        if ok:
            mapping[v] = c
            used.add(c)
            _extend(D, pattern, p_out, p_in, order, mapping, used, i + 1, images)
            used.discard(c)
            del mapping[v]
