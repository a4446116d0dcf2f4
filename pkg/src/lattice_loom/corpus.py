"""Named test corpora of small structures, rebuilt deterministically on demand."""

from __future__ import annotations

import itertools
import random

from .completion import dm_completion
from .digraph import poset_of
from .generators import (
    complement_perfect_matching,
    complete_bipartite,
    crown,
    cube,
    directed_tree,
    dl_construction,
    fano_complement,
    fano_incidence,
    non_incidence_graph,
    subspace_graph,
)
from .graphs import BipartiteGraph
from .poset import Poset, build_poset

DEFAULT_SEED = 20240601


def figure_one() -> BipartiteGraph:
    """Three points below three lines, the middle point under all three."""
    return BipartiteGraph(3, 3, [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)],
                          ["x", "y", "z", "u", "v", "w"])


def fence(k: int) -> BipartiteGraph:
    """Zigzag path with ``k`` edges, lower vertices first."""
    nx_, ny = k // 2 + 1, (k + 1) // 2
    return BipartiteGraph(nx_, ny, [((e + 1) // 2, e // 2) for e in range(k)])


def random_two_level(seed: int, nx_: int, ny: int, p: float = 0.5, min_cover: int = 0) -> BipartiteGraph:
    """Random two-part graph; every upper vertex gets at least ``min_cover`` lower neighbours."""
    rng = random.Random(seed)
    edges = set()
    for y in range(ny):
        row = {x for x in range(nx_) if rng.random() < p}
        while len(row) < min(min_cover, nx_):
            row.add(rng.randrange(nx_))
        edges |= {(x, y) for x in row}
    return BipartiteGraph(nx_, ny, edges)


def disjoint_union(A: BipartiteGraph, B: BipartiteGraph) -> BipartiteGraph:
    edges = [(x, y) for x, y in A.edges] + [(A.nx + x, A.ny + y) for x, y in B.edges]
    return BipartiteGraph(A.nx + B.nx, A.ny + B.ny, edges)


def two_level_corpus(seed: int = DEFAULT_SEED) -> list[tuple[str, BipartiteGraph]]:
    items: list[tuple[str, BipartiteGraph]] = [("figure-one", figure_one())]
    items += [(f"crown-{n}", crown(n)) for n in (3, 4, 5, 6)]
    items += [(f"k-{m}-{n}", complete_bipartite(m, n)) for m, n in ((2, 2), (2, 3), (3, 3), (3, 4))]
    items += [(f"cpm-{n}", complement_perfect_matching(n)) for n in (3, 4, 5)]
    items += [(f"cube-{n}", cube(n)) for n in (3, 4)]
    items += [("fano", fano_incidence()), ("fano-complement", fano_complement())]
    items += [("subspace-3-3", subspace_graph(3, 3)), ("subspace-4-2", subspace_graph(4, 2))]
    items += [("fence-4", fence(4)), ("fence-5", fence(5))]
    items += [("crown-3+crown-4", disjoint_union(crown(3), crown(4)))]
    rng = random.Random(seed)
    for i in range(6):
        nx_, ny = rng.randint(3, 5), rng.randint(3, 5)
        items.append((f"random-{i}", random_two_level(rng.randrange(1 << 30), nx_, ny, 0.55, min_cover=2)))
    return items


def connected_two_level_corpus(seed: int = DEFAULT_SEED, min_degree: int = 2) -> list[tuple[str, BipartiteGraph]]:
    """Connected members whose every vertex has at least ``min_degree`` neighbours."""
    out = []
    for name, B in two_level_corpus(seed):
        G = B.graph()
        if G.is_connected() and G.min_degree() >= min_degree:
            out.append((name, B))
    out.append(("cube-5", cube(5)))
    out.append(("non-incidence-4-2", non_incidence_graph(4, 2)))
    return out


def boolean_minus_bounds(n: int) -> Poset:
    """Proper nonempty subsets of an ``n``-set under inclusion."""
    subsets = [m for m in range(1, (1 << n) - 1)]
    index = {m: i for i, m in enumerate(subsets)}
    rel = [(index[a], index[b]) for a in subsets for b in subsets if a != b and a & b == a]
    return build_poset(rel, n=len(subsets))


def chain(n: int) -> Poset:
    return build_poset([(i, i + 1) for i in range(n - 1)], n=n)


def poset_corpus(seed: int = DEFAULT_SEED) -> list[tuple[str, Poset]]:
    """Two-level posets plus taller ones: chains, subset orders, tree and edge-digraph windows."""
    items = [(name, B.poset()) for name, B in two_level_corpus(seed)]
    items += [("chain-1", chain(1)), ("chain-4", chain(4)), ("empty", build_poset([], n=0))]
    items += [("boolean-3", boolean_minus_bounds(3)), ("boolean-4", boolean_minus_bounds(4))]
    items += [("tree-2-2", poset_of(directed_tree(2, 2, 2))), ("tree-3-2", poset_of(directed_tree(3, 2, 2)))]
    items += [("dl-k22", poset_of(dl_construction(complete_bipartite(2, 2), 2)))]
    items += [("figure-one-completion", dm_completion(figure_one().poset()).completion)]
    items += [("y-shape", build_poset([(0, 2), (1, 2), (2, 3), (3, 4)], n=5))]
    rng = random.Random(seed + 1)
    for i in range(4):
        n = rng.randint(5, 7)
        pairs = [(a, b) for a, b in itertools.combinations(range(n), 2) if rng.random() < 0.35]
        items.append((f"random-order-{i}", build_poset(pairs, n=n)))
    return items
