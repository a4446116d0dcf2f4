"""Constructors for the concrete families of two-part graphs and digraphs.

Two-part graphs put the lower level in ``X`` (ids first) and the upper
level in ``Y``.  Directed trees and the edge-digraph construction are
finite windows grown outward from one base arc.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field

from .digraph import Digraph
from .errors import BadParams, NotOneArcTransitive
from .fields import check_prime_field, projective_points
from .graphs import BipartiteGraph


class Family(enum.Enum):
    CROWN = "crown"
    COMPLETE_BIPARTITE = "complete-bipartite"
    COMPLEMENT_MATCHING = "complement-matching"
    CUBE = "cube"
    FANO_INCIDENCE = "fano-incidence"
    FANO_COMPLEMENT = "fano-complement"
    SUBSPACE = "subspace"
    NON_INCIDENCE = "non-incidence"
    DIRECTED_TREE = "directed-tree"
    DL = "dl"


ARITY = {
    Family.CROWN: 1,
    Family.COMPLETE_BIPARTITE: 2,
    Family.COMPLEMENT_MATCHING: 1,
    Family.CUBE: 1,
    Family.FANO_INCIDENCE: 0,
    Family.FANO_COMPLEMENT: 0,
    Family.SUBSPACE: 2,
    Family.NON_INCIDENCE: 2,
    Family.DIRECTED_TREE: 3,
    Family.DL: 1,
}


@dataclass(frozen=True)
class FamilySpec:
    """A family with its integer parameters; ``DL`` also needs the pattern ``delta``."""

    family: Family
    params: tuple[int, ...] = ()
    delta: "FamilySpec | None" = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        want = ARITY[self.family]
        if len(self.params) != want:
            raise BadParams(f"{self.family.value} takes {want} parameter(s), got {len(self.params)}")


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise BadParams(msg)


def generate(spec: FamilySpec):
    f, p = spec.family, spec.params
    if f is Family.CROWN:
        return crown(*p)
    if f is Family.COMPLETE_BIPARTITE:
        return complete_bipartite(*p)
    if f is Family.COMPLEMENT_MATCHING:
        return complement_perfect_matching(*p)
    if f is Family.CUBE:
        return cube(*p)
    if f is Family.FANO_INCIDENCE:
        return fano_incidence()
    if f is Family.FANO_COMPLEMENT:
        return fano_complement()
    if f is Family.SUBSPACE:
        return subspace_graph(*p)
    if f is Family.NON_INCIDENCE:
        return non_incidence_graph(*p)
    if f is Family.DIRECTED_TREE:
        return directed_tree(*p)
    if spec.delta is None:
        raise BadParams("dl needs a delta family")
    return dl_construction(generate(spec.delta), *p)


def crown(n: int) -> BipartiteGraph:
    """The ``2n``-cycle: ``x_i`` joined to ``y_i`` and ``y_{i+1}``."""
    _need(n >= 2, f"crown needs n >= 2, got {n}")
    edges = {(i, i) for i in range(n)} | {(i, (i + 1) % n) for i in range(n)}
    labels = [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)]
    return BipartiteGraph(n, n, edges, labels)


def complete_bipartite(m: int, n: int) -> BipartiteGraph:
    _need(m >= 1 and n >= 1, f"complete bipartite needs m, n >= 1, got {m}, {n}")
    labels = [f"x{i}" for i in range(m)] + [f"y{j}" for j in range(n)]
    return BipartiteGraph(m, n, [(i, j) for i in range(m) for j in range(n)], labels)


def complement_perfect_matching(n: int) -> BipartiteGraph:
    """``x_i`` joined to ``y_j`` whenever ``i != j``."""
    _need(n >= 3, f"complement of a perfect matching needs n >= 3, got {n}")
    labels = [f"x{i}" for i in range(n)] + [f"y{j}" for j in range(n)]
    return BipartiteGraph(n, n, [(i, j) for i in range(n) for j in range(n) if i != j], labels)


def cube(n: int) -> BipartiteGraph:
    """Binary words of length ``n``: even weight below, odd weight above, joined at distance one."""
    _need(n >= 2, f"cube needs n >= 2, got {n}")
    words = ["".join(w) for w in itertools.product("01", repeat=n)]
    even = [w for w in words if w.count("1") % 2 == 0]
    odd = [w for w in words if w.count("1") % 2 == 1]
    iy = {w: j for j, w in enumerate(odd)}
    edges = []
    for i, w in enumerate(even):
        for k in range(n):
            flipped = w[:k] + ("1" if w[k] == "0" else "0") + w[k + 1:]
            edges.append((i, iy[flipped]))
    return BipartiteGraph(len(even), len(odd), edges, even + odd)


def _points_and_hyperplanes(n: int, q: int, incident: bool) -> BipartiteGraph:
    _need(n >= 3, f"vector-space graphs need n >= 3, got {n}")
    check_prime_field(q)
    pts = projective_points(n, q)
    # a hyperplane is the kernel of a normalized covector
    hyps = projective_points(n, q)
    edges = [(i, j) for i, x in enumerate(pts) for j, h in enumerate(hyps) if (x.dot(h) == 0) == incident]
    labels = [f"p{x}" for x in pts] + [f"H{h}" for h in hyps]
    return BipartiteGraph(len(pts), len(hyps), edges, labels)


def subspace_graph(n: int, q: int) -> BipartiteGraph:
    """Points of ``PG(n-1, q)`` below the hyperplanes containing them."""
    return _points_and_hyperplanes(n, q, True)


def non_incidence_graph(n: int, q: int) -> BipartiteGraph:
    """Points below the hyperplanes that miss them."""
    return _points_and_hyperplanes(n, q, False)


def fano_incidence() -> BipartiteGraph:
    return subspace_graph(3, 2)


def fano_complement() -> BipartiteGraph:
    return non_incidence_graph(3, 2)


def block_design_parameters(B: BipartiteGraph) -> tuple[int, int, int] | None:
    """``(v, k, lambda)`` if the upper vertices are blocks of a 2-design on the lower ones."""
    blocks = [set() for _ in range(B.ny)]
    for x, y in B.edges:
        blocks[y].add(x)
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1:
        return None
    lams = {sum(1 for b in blocks if a in b and c in b) for a, c in itertools.combinations(range(B.nx), 2)}
    if len(lams) != 1:
        return None
    return B.nx, sizes.pop(), lams.pop()


def alt_window(length: int) -> BipartiteGraph:
    """A finite stretch of the alternating line, as a zigzag path with ``length`` edges."""
    _need(length >= 1, "alternating window needs at least one edge")
    nx_ = length // 2 + 1
    ny = (length + 1) // 2
    edges = []
    for e in range(length):
        x = (e + 1) // 2
        y = e // 2
        edges.append((x, y))
    return BipartiteGraph(nx_, ny, edges)


# trees

@dataclass
class _Tree:
    n: int
    arcs: list[tuple[int, int]]
    dist: list[int]
    level: list[int]
    ins: list[list[int]]
    outs: list[list[int]]


def _grow_tree(m: int, n: int, radius: int) -> _Tree:
    ins: list[list[int]] = [[], [0]]
    outs: list[list[int]] = [[1], []]
    dist = [0, 0]
    level = [1, 0]
    frontier = [0, 1]
    for d in range(1, radius + 1):
        nxt = []
        for w in frontier:
            while len(ins[w]) < m:
                x = len(dist)
                ins.append([])
                outs.append([w])
                ins[w].append(x)
                dist.append(d)
                level.append(level[w] + 1)
                nxt.append(x)
            while len(outs[w]) < n:
                x = len(dist)
                ins.append([w])
                outs.append([])
                outs[w].append(x)
                dist.append(d)
                level.append(level[w] - 1)
                nxt.append(x)
        frontier = nxt
    arcs = [(a, b) for a in range(len(dist)) for b in outs[a]]
    return _Tree(len(dist), arcs, dist, level, ins, outs)


def directed_tree(m: int, n: int, radius: int) -> Digraph:
    """Window of the tree where every vertex has ``m`` in-arcs and ``n`` out-arcs.

    Stage ``d`` completes every vertex at distance ``d - 1`` from the base
    arc; vertices at distance ``radius`` keep a single arc and are flagged
    open on both sides.
    """
    _need(m >= 2 and n >= 2, f"directed tree needs in- and out-valency >= 2, got {m}, {n}")
    _need(radius >= 1, f"radius must be >= 1, got {radius}")
    T = _grow_tree(m, n, radius)
    rim = [v for v in range(T.n) if T.dist[v] == radius]
    return Digraph(T.n, T.arcs, T.level, rim, rim)


ALT = "ALT"


def dl_construction(delta, radius: int, policy: str | int = "sorted") -> Digraph:
    """Window of the digraph on the arcs of a tree, patterned on ``delta``.

    The tree has in-valency ``|Y|`` and out-valency ``|X|``.  At each tree
    vertex ``b`` the arcs into ``b`` are matched with ``Y`` and the arcs out
    of ``b`` with ``X``; ``(a, b) -> (b, d)`` is an arc exactly when the
    matched vertices are joined in ``delta``.  ``policy`` picks the matching:
    ``"sorted"``, ``"reversed"`` or an integer seed for a shuffle.
    Passing ``ALT`` gives the directed tree with both valencies two.
    """
    from .symmetry import automorphism_group

    if isinstance(delta, str) and delta == ALT:
        return directed_tree(2, 2, radius)
    if not isinstance(delta, BipartiteGraph):
        raise BadParams("delta must be a two-part graph or ALT")
    _need(radius >= 1, f"radius must be >= 1, got {radius}")
    if not delta.edges or not delta.graph().is_connected():
        raise NotOneArcTransitive("delta must be connected with at least one edge")
    group = automorphism_group(delta)
    edge_ids = [(x, delta.nx + y) for x, y in sorted(delta.edges)]
    if len(group.tuple_orbits(edge_ids)) != 1:
        raise NotOneArcTransitive("delta's automorphisms are not transitive on its edges")

    T = _grow_tree(delta.ny, delta.nx, radius)
    rng = random.Random(policy) if isinstance(policy, int) else None
    if rng is None and policy not in ("sorted", "reversed"):
        raise BadParams(f"unknown bijection policy {policy!r}")

    def matched(items: list[int]) -> list[int]:
        items = sorted(items)
        if policy == "reversed":
            return items[::-1]
        if rng is not None:
            rng.shuffle(items)
        return items

    # per-vertex bijections: predecessor -> upper index, successor -> lower index
    upper_of: dict[tuple[int, int], int] = {}
    lower_of: dict[tuple[int, int], int] = {}
    for b in range(T.n):
        if len(T.ins[b]) == delta.ny:
            for yi, a in enumerate(matched(T.ins[b])):
                upper_of[(a, b)] = yi
        if len(T.outs[b]) == delta.nx:
            for xi, d in enumerate(matched(T.outs[b])):
                lower_of[(b, d)] = xi

    index = {arc: i for i, arc in enumerate(T.arcs)}
    arcs = []
    for (a, b) in T.arcs:
        for d in T.outs[b]:
            if (a, b) in upper_of and (b, d) in lower_of:
                if (lower_of[(b, d)], upper_of[(a, b)]) in delta.edges:
                    arcs.append((index[(a, b)], index[(b, d)]))
    rim = {v for v in range(T.n) if T.dist[v] == radius}
    open_in = [i for (a, b), i in index.items() if a in rim]
    open_out = [i for (a, b), i in index.items() if b in rim]
    level = [T.level[a] for a, _ in T.arcs]
    labels = [f"{a}>{b}" for a, b in T.arcs]
    return Digraph(len(T.arcs), arcs, level, open_in, open_out, labels)


def generic_bipartite(n_rounds: int, seed: int = 0, base_x: int = 1, base_y: int = 0, k: int = 2) -> BipartiteGraph:
    """Bounded approximation of the two-part graph with every finite extension witnessed.

    Each round first adds, for every ``k``-subset ``S`` of the current lower
    part (or all of it if smaller) and every ``U`` inside ``S``, a new upper
    vertex joined to ``U`` and to no other member of ``S``.  It then does
    the same with the parts exchanged, against the upper part as it stood
    when the round began.  Adjacency outside ``S`` is random under ``seed``.
    """
    _need(n_rounds >= 0 and base_x >= 0 and base_y >= 0 and k >= 1, "parameters must be non-negative")
    rng = random.Random(seed)
    xs = list(range(base_x))
    ys = list(range(base_y))
    edges: set[tuple[int, int]] = set()
    nx_, ny = base_x, base_y
    for _ in range(n_rounds):
        snap_x, snap_y = list(xs), list(ys)
        for S in itertools.combinations(snap_x, min(k, len(snap_x))):
            for r in range(len(S) + 1):
                for U in itertools.combinations(S, r):
                    y = ny
                    ny += 1
                    ys.append(y)
                    for x in snap_x:
                        if x in U or (x not in S and rng.random() < 0.5):
                            edges.add((x, y))
        for S in itertools.combinations(snap_y, min(k, len(snap_y))):
            for r in range(len(S) + 1):
                for U in itertools.combinations(S, r):
                    x = nx_
                    nx_ += 1
                    xs.append(x)
                    for y in snap_y:
                        if y in U or (y not in S and rng.random() < 0.5):
                            edges.add((x, y))
    labels = [f"x{i}" for i in range(nx_)] + [f"y{j}" for j in range(ny)]
    return BipartiteGraph(nx_, ny, edges, labels)
