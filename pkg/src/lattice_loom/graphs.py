"""Undirected graphs and two-part graphs, the bridge between posets and symmetry."""

from __future__ import annotations

from typing import Iterable, Sequence

from .poset import Poset, bits_to_list, build_poset, iter_bits


class Graph:
    """Simple undirected graph on ``0..n-1`` with optional vertex colors.

    Colors restrict automorphisms to color-preserving maps; they are how a
    two-part graph keeps its parts apart when swaps are not allowed.
    """

    __slots__ = ("n", "edges", "adj", "colors", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], colors: Sequence[int] | None = None,
                 labels: Sequence[str] | None = None):
        norm = set()
        adj = [0] * n
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop at {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) out of range")
            norm.add((min(a, b), max(a, b)))
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        self.n = n
        self.edges = frozenset(norm)
        self.adj = tuple(adj)
        self.colors = tuple(colors) if colors is not None else (0,) * n
        self.labels = tuple(labels) if labels is not None else None

    def neighbors(self, v: int) -> list[int]:
        return bits_to_list(self.adj[v])

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def adjacent(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.n)), default=0)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = frontier = 1
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={len(self.edges)})"


class BipartiteGraph:
    """Two-part graph with parts ``X`` (ids ``0..nx-1``) and ``Y`` (ids ``nx..nx+ny-1``).

    As a poset the ``X`` side is minimal and every edge is a cover ``x < y``.
    """

    __slots__ = ("nx", "ny", "edges", "labels")

    def __init__(self, nx: int, ny: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        norm = set()
        for x, y in edges:
            if not (0 <= x < nx and 0 <= y < ny):
                raise ValueError(f"edge ({x}, {y}) leaves the parts of sizes {nx}, {ny}")
            norm.add((x, y))
        self.nx = nx
        self.ny = ny
        self.edges = frozenset(norm)
        if labels is not None and len(labels) != nx + ny:
            raise ValueError(f"expected {nx + ny} labels")
        self.labels = tuple(labels) if labels is not None else None

    @property
    def n(self) -> int:
        return self.nx + self.ny

    def x_ids(self) -> range:
        return range(self.nx)

    def y_ids(self) -> range:
        return range(self.nx, self.nx + self.ny)

    def poset(self) -> Poset:
        return build_poset([(x, self.nx + y) for x, y in self.edges], n=self.n, labels=self.labels)

    def graph(self, keep_parts: bool = False) -> Graph:
        colors = [0] * self.nx + [1] * self.ny if keep_parts else None
        return Graph(self.n, [(x, self.nx + y) for x, y in self.edges], colors, self.labels)

    def degrees(self) -> tuple[list[int], list[int]]:
        dx, dy = [0] * self.nx, [0] * self.ny
        for x, y in self.edges:
            dx[x] += 1
            dy[y] += 1
        return dx, dy

    def swapped(self) -> "BipartiteGraph":
        labels = None
        if self.labels is not None:
            labels = self.labels[self.nx:] + self.labels[:self.nx]
        return BipartiteGraph(self.ny, self.nx, [(y, x) for x, y in self.edges], labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.nx, self.ny, self.edges, self.labels) == (other.nx, other.ny, other.edges, other.labels)

    def __hash__(self) -> int:
        return hash((self.nx, self.ny, self.edges))

    def __repr__(self) -> str:
        return f"BipartiteGraph({self.nx}+{self.ny}, edges={len(self.edges)})"


def cover_graph(P: Poset) -> Graph:
    """Undirected Hasse graph; for a two-level poset this is the comparability graph."""
    return Graph(P.n, P.covers, labels=P.labels)


def bipartite_from_poset(P: Poset) -> BipartiteGraph:
    """Split a two-level poset into minimal and non-minimal parts.

    Isolated points land on the minimal side.  The returned graph numbers the
    parts contiguously, so ids are permuted; ``order`` maps new id to old.
    """
    if not P.is_two_level():
        raise ValueError("poset has an element that is neither minimal nor maximal")
    lows = P.minimal()
    highs = [i for i in range(P.n) if P.down_mask(i)]
    ix = {v: i for i, v in enumerate(lows)}
    iy = {v: i for i, v in enumerate(highs)}
    labels = [P.label(v) for v in lows + highs] if P.labels is not None else None
    return BipartiteGraph(len(lows), len(highs), [(ix[a], iy[b]) for a, b in P.covers], labels)


def as_graph(obj) -> Graph:
    if isinstance(obj, Graph):
        return obj
    if isinstance(obj, BipartiteGraph):
        return obj.graph()
    if isinstance(obj, Poset):
        return cover_graph(obj)
    raise TypeError(f"cannot view {type(obj).__name__} as a graph")
