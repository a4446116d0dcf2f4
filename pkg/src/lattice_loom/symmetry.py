"""Automorphism groups and the transitivity predicates built on them.

Groups are found by individualization and refinement.  A first path down the
search tree fixes a base; then, deepest level first, every vertex of the
base point's cell that is not yet known to be in its orbit is tried as an
image.  The generators found this way generate the full group and its order
is the product of the basic orbit lengths.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import NoArcs
from .graphs import BipartiteGraph, Graph, as_graph
from .poset import Poset, iter_bits

ORDER_PRESERVING = "order-preserving"
GRAPH = "graph"


# structures

class _Structure:
    """Vertex-colored digraph in array form; undirected graphs carry both arc directions."""

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]], colors: Sequence[Hashable] | None, directed: bool):
        arcs = list(arcs)
        if not directed:
            arcs = arcs + [(b, a) for a, b in arcs]
        self.n = n
        self.directed = directed
        self.src = np.array([a for a, _ in arcs], dtype=np.int64)
        self.dst = np.array([b for _, b in arcs], dtype=np.int64)
        self.codes = np.unique(self.src * n + self.dst)
        if colors is None:
            self.colors0 = np.zeros(n, dtype=np.int64)
        else:
            keys = sorted(set(colors), key=repr)
            rank = {c: i for i, c in enumerate(keys)}
            self.colors0 = np.array([rank[c] for c in colors], dtype=np.int64)
        self.color_census = tuple(sorted(np.unique(self.colors0, return_counts=True)[1].tolist()))

    def is_automorphism_of(self, perm: np.ndarray, target: "_Structure") -> bool:
        if not np.array_equal(target.colors0[perm], self.colors0):
            return False
        image = np.unique(perm[self.src] * self.n + perm[self.dst])
        return np.array_equal(image, target.codes)


def _structure_of(obj, mode: str = ORDER_PRESERVING) -> _Structure:
    from .digraph import Digraph

    if isinstance(obj, _Structure):
        return obj
    if isinstance(obj, Poset):
        if mode == GRAPH:
            return _Structure(obj.n, obj.covers, None, directed=False)
        return _Structure(obj.n, obj.covers, None, directed=True)
    if isinstance(obj, BipartiteGraph):
        edges = [(x, obj.nx + y) for x, y in obj.edges]
        if mode == GRAPH:
            return _Structure(obj.n, edges, None, directed=False)
        return _Structure(obj.n, edges, [0] * obj.nx + [1] * obj.ny, directed=True)
    if isinstance(obj, Graph):
        return _Structure(obj.n, obj.edges, obj.colors, directed=False)
    if isinstance(obj, Digraph):
        flags = [(v in obj.open_in, v in obj.open_out) for v in range(obj.n)]
        return _Structure(obj.n, obj.arcs, flags, directed=True)
    raise TypeError(f"no automorphism model for {type(obj).__name__}")


# refinement

_WEIGHTS = np.random.default_rng(0x5EED).integers(1, 2**63, size=1 << 16, dtype=np.uint64)


def _color_weights(k: int) -> np.ndarray:
    global _WEIGHTS
    if k > len(_WEIGHTS):
        extra = np.random.default_rng(k).integers(1, 2**63, size=k, dtype=np.uint64)
        _WEIGHTS = np.concatenate([_WEIGHTS, extra])
    return _WEIGHTS


def _refine(S: _Structure, colors: np.ndarray, trace: list | None = None):
    """Iterated color refinement with canonical color names.

    A vertex's signature is its color plus wrap-around sums of fixed random
    weights over the colors of its out- and in-neighbours.  The sums depend
    only on neighbour color multisets, so the result is labeling-invariant;
    a rare collision only leaves the partition coarser, which the search
    tolerates.  With ``trace`` given, every round must reproduce the
    recorded census, otherwise ``None`` is returned.
    """
    n = S.n
    k = int(colors.max()) + 1 if n else 0
    rounds = []
    r = 0
    while True:
        w = _color_weights(k)
        cols = [colors.astype(np.uint64)]
        if len(S.src):
            out = np.zeros(n, dtype=np.uint64)
            np.add.at(out, S.src, w[colors[S.dst]])
            cols.append(out)
            if S.directed:
                inn = np.zeros(n, dtype=np.uint64)
                np.add.at(inn, S.dst, w[colors[S.src]])
                cols.append(inn)
        sig = np.stack(cols, axis=1)
        rows, inv, counts = np.unique(sig, axis=0, return_inverse=True, return_counts=True)
        stamp = (len(rows), hash(rows.tobytes()), hash(counts.tobytes()))
        if trace is not None and (r >= len(trace) or trace[r] != stamp):
            return None
        rounds.append(stamp)
        inv = inv.reshape(-1).astype(np.int64)
        if len(rows) == k:
            if trace is not None and r + 1 != len(trace):
                return None
            return inv, rounds
        colors, k = inv, len(rows)
        r += 1


def _individualize(colors: np.ndarray, v: int) -> np.ndarray:
    c = colors * 2
    c[v] += 1
    return np.unique(c, return_inverse=True)[1].reshape(-1).astype(np.int64)


def _target_cell(colors: np.ndarray) -> int | None:
    counts = np.bincount(colors)
    nontrivial = np.flatnonzero(counts > 1)
    if not len(nontrivial):
        return None
    return int(nontrivial[np.argmin(counts[nontrivial])])


@dataclass
class _Level:
    colors: np.ndarray
    cell: int
    point: int
    trace: list


class _Search:
    def __init__(self, S: _Structure):
        self.S = S
        colors, self.root_trace = _refine(S, S.colors0) if S.n else (np.zeros(0, dtype=np.int64), [])
        self.path: list[_Level] = []
        while True:
            cell = _target_cell(colors)
            if cell is None:
                break
            v = int(np.flatnonzero(colors == cell)[0])
            new, tr = _refine(S, _individualize(colors, v))
            self.path.append(_Level(colors, cell, v, tr))
            colors = new
        self.leaf = colors

    def descend(self, j: int, colors: np.ndarray, target: _Structure):
        """Depth-first search below level ``j`` for a leaf giving an isomorphism onto ``target``."""
        if j == len(self.path):
            pos = np.empty(self.S.n, dtype=np.int64)
            pos[colors] = np.arange(self.S.n)
            perm = pos[self.leaf]
            return perm if self.S.is_automorphism_of(perm, target) else None
        lvl = self.path[j]
        cands = np.flatnonzero(colors == lvl.cell).tolist()
        if lvl.point in cands:
            cands.remove(lvl.point)
            cands.insert(0, lvl.point)
        for y in cands:
            r = _refine(target, _individualize(colors, y), lvl.trace)
            if r is None:
                continue
            perm = self.descend(j + 1, r[0], target)
            if perm is not None:
                return perm
        return None


# groups

class PermGroup:
    """Permutation group on ``0..degree-1`` given by generators."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]], order: int | None = None,
                 base: Sequence[int] = ()):
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if sorted(g) != list(range(degree)):
                raise ValueError("generator is not a permutation of the domain")
            if g != tuple(range(degree)):
                gens.append(g)
        self.degree = degree
        self.generators = gens
        self.base = tuple(base)
        self._order = order

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = _order_by_closure(self.degree, self.generators)
        return self._order

    def orbit(self, point: int) -> set[int]:
        seen = {point}
        stack = [point]
        while stack:
            p = stack.pop()
            for g in self.generators:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return seen

    def orbits(self) -> list[frozenset[int]]:
        return orbit_classes(range(self.degree), self.generators, lambda g, p: g[p])

    def tuple_orbits(self, tuples: Iterable[tuple[int, ...]]) -> list[frozenset]:
        return orbit_classes(tuples, self.generators, lambda g, t: tuple(g[x] for x in t))

    def set_orbits(self, sets: Iterable[frozenset[int]]) -> list[frozenset]:
        return orbit_classes(sets, self.generators, lambda g, s: frozenset(g[x] for x in s))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order}, generators={len(self.generators)})"


def _order_by_closure(degree: int, gens: list[tuple[int, ...]]) -> int:
    # groups from the search carry their order; this is for hand-built ones
    elements = {tuple(range(degree))}
    frontier = list(elements)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                c = tuple(g[h[i]] for i in range(degree))
                if c not in elements:
                    elements.add(c)
                    nxt.append(c)
        frontier = nxt
    return len(elements)


def orbit_classes(items: Iterable, gens: Sequence[Sequence[int]], act: Callable) -> list[frozenset]:
    """Partition ``items`` (a set closed under the group) into orbits, via union-find."""
    items = list(items)
    index = {it: i for i, it in enumerate(items)}
    parent = list(range(len(items)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, it in enumerate(items):
        for g in gens:
            j = index.get(act(g, it))
            if j is None:
                raise ValueError(f"item {it!r} leaves the given set under a generator")
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list] = {}
    for i, it in enumerate(items):
        groups.setdefault(find(i), []).append(it)
    return [frozenset(v) for _, v in sorted(groups.items())]


def automorphism_group(obj, mode: str = ORDER_PRESERVING) -> PermGroup:
    """Full automorphism group of a poset, graph, two-part graph or digraph.

    ``mode="graph"`` forgets orientation, so the two levels of a two-level
    poset may be exchanged.  Digraph automorphisms also preserve the
    truncation flags of each vertex.
    """
    if mode not in (ORDER_PRESERVING, GRAPH):
        raise ValueError(f"unknown mode {mode!r}")
    S = _structure_of(obj, mode)
    if S.n == 0:
        return PermGroup(0, [], 1)
    search = _Search(S)
    gens: list[tuple[int, ...]] = []
    order = 1
    for i in range(len(search.path) - 1, -1, -1):
        lvl = search.path[i]
        group = PermGroup(S.n, gens, order=1)
        orbit = group.orbit(lvl.point)
        for x in np.flatnonzero(lvl.colors == lvl.cell).tolist():
            if x in orbit:
                continue
            r = _refine(S, _individualize(lvl.colors, x), lvl.trace)
            if r is None:
                continue
            perm = search.descend(i + 1, r[0], S)
            if perm is not None:
                gens.append(tuple(perm.tolist()))
                orbit = PermGroup(S.n, gens, order=1).orbit(lvl.point)
        order *= len(orbit)
    return PermGroup(S.n, gens, order, [lvl.point for lvl in search.path])


def find_isomorphism(A, B, mode: str = ORDER_PRESERVING) -> list[int] | None:
    """A map ``perm`` with ``perm[a]`` the image in ``B`` of vertex ``a`` of ``A``, or ``None``."""
    SA, SB = _structure_of(A, mode), _structure_of(B, mode)
    if SA.n != SB.n or len(SA.codes) != len(SB.codes) or SA.directed != SB.directed:
        return None
    if SA.color_census != SB.color_census:
        return None
    if SA.n == 0:
        return []
    search = _Search(SA)
    r = _refine(SB, SB.colors0, search.root_trace)
    if r is None:
        return None
    perm = search.descend(0, r[0], SB)
    return None if perm is None else perm.tolist()


def posets_isomorphic(P: Poset, Q: Poset) -> bool:
    return find_isomorphism(P, Q) is not None


# arcs

@dataclass
class ArcOrbitReport:
    s: int
    orbit_count: int
    per_vertex: dict[int, int]
    verdict: bool
    arc_count: int = 0
    group_order: int = field(default=0, compare=False)


def s_arcs(G: Graph, s: int) -> list[tuple[int, ...]]:
    """Walks ``v0..vs`` along edges with ``v_i != v_{i+2}``."""
    if s < 0:
        raise ValueError("s must be non-negative")
    arcs = [(v,) for v in range(G.n)]
    for _ in range(s):
        nxt = []
        for a in arcs:
            for w in iter_bits(G.adj[a[-1]]):
                if len(a) >= 2 and w == a[-2]:
                    continue
                nxt.append(a + (w,))
        arcs = nxt
    return arcs


def _arc_orbits(obj, s: int) -> tuple[Graph, list[tuple[int, ...]], list[frozenset], PermGroup]:
    G = as_graph(obj)
    arcs = s_arcs(G, s)
    if not arcs:
        raise NoArcs(f"no {s}-arcs")
    group = automorphism_group(G, GRAPH)
    return G, arcs, group.tuple_orbits(arcs), group


def is_s_arc_transitive(obj, s: int) -> ArcOrbitReport:
    G, arcs, orbits, group = _arc_orbits(obj, s)
    per_vertex = _per_vertex(G, orbits)
    return ArcOrbitReport(s, len(orbits), per_vertex, len(orbits) == 1, len(arcs), group.order)


def is_locally_s_arc_transitive(obj, s: int) -> ArcOrbitReport:
    """Per-vertex count of stabilizer orbits on the ``s``-arcs starting there.

    An automorphism carrying one ``s``-arc from ``v`` to another fixes ``v``,
    so these are just the group orbits met by the arcs at ``v``.  A vertex of
    degree zero fails the verdict once ``s >= 1``.
    """
    G, arcs, orbits, group = _arc_orbits(obj, s)
    per_vertex = _per_vertex(G, orbits)
    isolated = s >= 1 and any(G.degree(v) == 0 for v in range(G.n))
    verdict = not isolated and all(c <= 1 for c in per_vertex.values())
    return ArcOrbitReport(s, len(orbits), per_vertex, verdict, len(arcs), group.order)


def _per_vertex(G: Graph, orbits: list[frozenset]) -> dict[int, int]:
    seen: dict[int, set[int]] = {v: set() for v in range(G.n)}
    for k, orb in enumerate(orbits):
        for arc in orb:
            seen[arc[0]].add(k)
    return {v: len(ks) for v, ks in seen.items()}


# connected substructures

def connected_subsets(P: Poset, k: int) -> list[frozenset[int]]:
    """Element sets of size ``k`` whose comparability graph is connected."""
    if k < 1:
        raise ValueError("k must be at least 1")
    nbr = [P.comparability_neighbors(i) for i in range(P.n)]
    found: set[frozenset[int]] = set()
    level = {1 << v for v in range(P.n)}
    for _ in range(k - 1):
        nxt = set()
        for m in level:
            reach = 0
            for v in iter_bits(m):
                reach |= nbr[v]
            for w in iter_bits(reach & ~m):
                nxt.add(m | 1 << w)
        level = nxt
    for m in level:
        found.add(frozenset(iter_bits(m)))
    return sorted(found, key=sorted)


def _pattern(P: Poset, t: Sequence[int]) -> tuple[bool, ...]:
    return tuple(P.lt(a, b) for a in t for b in t if a != b)


def _canonical_type(P: Poset, s: Iterable[int]) -> tuple[bool, ...]:
    return min(_pattern(P, p) for p in itertools.permutations(sorted(s)))


def is_k_cs_transitive(M: Poset, k: int, group: PermGroup | None = None) -> bool:
    """Each isomorphism type of connected ``k``-subposet forms a single orbit."""
    subsets = connected_subsets(M, k)
    if not subsets:
        return True
    group = group or automorphism_group(M)
    orbits = group.set_orbits(subsets)
    types = {_canonical_type(M, s) for s in subsets}
    return len(orbits) == len(types)


def is_k_cs_homogeneous(M: Poset, k: int, group: PermGroup | None = None) -> bool:
    """Every isomorphism between connected ``k``-subposets extends to an automorphism.

    Two orderings of connected ``k``-sets with the same relation pattern
    define such an isomorphism, so the property holds exactly when the orbits
    on ordered tuples are as few as the patterns.
    """
    subsets = connected_subsets(M, k)
    if not subsets:
        return True
    group = group or automorphism_group(M)
    tuples = [p for s in subsets for p in itertools.permutations(sorted(s))]
    orbits = group.tuple_orbits(tuples)
    patterns = {_pattern(M, t) for t in tuples}
    return len(orbits) == len(patterns)


def brute_force_automorphisms(obj, mode: str = ORDER_PRESERVING) -> list[tuple[int, ...]]:
    """Every automorphism by exhaustive permutation search; small inputs only."""
    S = _structure_of(obj, mode)
    if S.n > 10:
        raise ValueError("exhaustive search is limited to 10 vertices")
    out = []
    for p in itertools.permutations(range(S.n)):
        if S.is_automorphism_of(np.array(p, dtype=np.int64), S):
            out.append(p)
    return out


def extend_to_completion(C, perm: Sequence[int]) -> tuple[int, ...]:
    """Action on completion ids induced by an automorphism of the base poset."""
    index = {m: i for i, m in enumerate(C.ideal_masks)}
    out = []
    for m in C.ideal_masks:
        img = 0
        for x in iter_bits(m):
            img |= 1 << perm[x]
        out.append(index[img])
    return tuple(out)
