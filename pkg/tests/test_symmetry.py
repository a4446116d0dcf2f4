import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_loom import (
    PermGroup,
    automorphism_group,
    build_poset,
    find_isomorphism,
    is_k_cs_homogeneous,
    is_k_cs_transitive,
    is_locally_s_arc_transitive,
    is_s_arc_transitive,
)
from lattice_loom.completion import dm_completion
from lattice_loom.corpus import connected_two_level_corpus, figure_one
from lattice_loom.errors import NoArcs
from lattice_loom.generators import (
    complement_perfect_matching,
    complete_bipartite,
    crown,
    cube,
    fano_complement,
    fano_incidence,
    subspace_graph,
)
from lattice_loom.graphs import Graph
from lattice_loom.symmetry import (
    GRAPH,
    ORDER_PRESERVING,
    brute_force_automorphisms,
    connected_subsets,
    extend_to_completion,
    posets_isomorphic,
    s_arcs,
)

import oracles


@st.composite
def small_orders(draw):
    n = draw(st.integers(1, 7))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=10))
    return build_poset([(min(a, b), max(a, b)) for a, b in pairs if a != b], n=n)


def _cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _connected_iso_pairs(P, k):
    """Every isomorphism between connected k-subposets, as (source tuple, target tuple)."""
    subsets = connected_subsets(P, k)
    for s in subsets:
        src = tuple(sorted(s))
        for t in subsets:
            for tgt in itertools.permutations(sorted(t)):
                if all(P.lt(a, b) == P.lt(c, d) for (a, c), (b, d) in itertools.product(zip(src, tgt), repeat=2)):
                    yield src, tgt


def _homogeneous_oracle(P, k):
    auts = oracles.order_automorphisms(P.n, set(P.relations()))
    return all(any(all(g[a] == b for a, b in zip(src, tgt)) for g in auts) for src, tgt in _connected_iso_pairs(P, k))


def _transitive_oracle(P, k):
    auts = oracles.order_automorphisms(P.n, set(P.relations()))
    for src, tgt in _connected_iso_pairs(P, k):
        if not any({g[a] for a in src} == set(tgt) for g in auts):
            return False
    return True


class TestAutomorphismGroup:
    def test_figure_one(self):
        assert automorphism_group(figure_one().poset()).order == 2

    def test_k33_modes(self):
        B = complete_bipartite(3, 3)
        assert automorphism_group(B, ORDER_PRESERVING).order == 36
        assert automorphism_group(B, GRAPH).order == 72

    def test_antichain(self):
        assert automorphism_group(build_poset([], n=3)).order == 6

    def test_poset_order_vs_graph_mode(self):
        # flipping a two-level poset is a graph symmetry but not an order one
        P = crown(4).poset()
        assert automorphism_group(P, GRAPH).order == 2 * automorphism_group(P).order

    @pytest.mark.parametrize("make,expected", [
        (lambda: cube(3), 48),
        (fano_incidence, 336),
        (fano_complement, 336),
        (lambda: complement_perfect_matching(4), 48),
        (lambda: crown(5), 20),
    ])
    def test_graph_orders_match_networkx(self, make, expected):
        B = make()
        G = B.graph()
        assert oracles.nx_automorphism_count(G.n, G.edges) == expected
        assert automorphism_group(B, GRAPH).order == expected

    def test_subspace_4_3_order(self):
        assert automorphism_group(subspace_graph(4, 3), GRAPH).order == 24261120

    @settings(max_examples=50, deadline=None)
    @given(small_orders())
    def test_order_matches_exhaustive(self, P):
        expected = len(oracles.order_automorphisms(P.n, set(P.relations())))
        assert automorphism_group(P).order == expected
        assert len(brute_force_automorphisms(P)) == expected

    @settings(max_examples=40, deadline=None)
    @given(small_orders(), st.randoms(use_true_random=False))
    def test_relabel_invariance(self, P, rng):
        perm = list(range(P.n))
        rng.shuffle(perm)
        Q = P.relabel(perm)
        assert automorphism_group(Q).order == automorphism_group(P).order
        iso = find_isomorphism(P, Q)
        assert iso is not None
        assert all(P.lt(a, b) == Q.lt(iso[a], iso[b]) for a in range(P.n) for b in range(P.n))

    def test_generators_are_automorphisms(self):
        P = dm_completion(fano_complement().poset()).completion
        rel = set(P.relations())
        for g in automorphism_group(P).generators:
            assert {(g[a], g[b]) for a, b in rel} == rel

    def test_extension_to_completion(self):
        P = figure_one().poset()
        C = dm_completion(P)
        rel = set(C.completion.relations())
        for g in automorphism_group(P).generators:
            h = extend_to_completion(C, g)
            assert {(h[a], h[b]) for a, b in rel} == rel


class TestIsomorphism:
    def test_non_isomorphic(self):
        assert find_isomorphism(crown(3), crown(4)) is None
        assert not posets_isomorphic(crown(3).poset(), complete_bipartite(3, 3).poset())

    def test_fano_self_dual(self):
        B = fano_incidence()
        assert find_isomorphism(B, B.swapped(), GRAPH) is not None


class TestPermGroup:
    def test_closure_order(self):
        assert PermGroup(4, [(1, 2, 3, 0), (1, 0, 2, 3)]).order == 24

    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            PermGroup(3, [(0, 0, 1)])

    def test_orbits(self):
        G = PermGroup(5, [(1, 0, 2, 3, 4), (0, 1, 3, 2, 4)])
        assert sorted(sorted(o) for o in G.orbits()) == [[0, 1], [2, 3], [4]]


class TestArcTransitivity:
    @pytest.mark.parametrize("name,make,s,count,orbits", [
        ("c6", lambda: _cycle(6), 1, 12, 1),
        ("c6", lambda: _cycle(6), 2, 12, 1),
        ("k34", lambda: complete_bipartite(3, 4), 1, 24, 2),
        ("k34", lambda: complete_bipartite(3, 4), 2, 60, 2),
        ("cube3", lambda: cube(3), 1, 24, 1),
        ("cube3", lambda: cube(3), 2, 48, 1),
    ])
    def test_table(self, name, make, s, count, orbits):
        G = make()
        g = G if isinstance(G, Graph) else G.graph()
        walks = oracles.s_arcs(g.n, g.edges, s)
        auts = oracles.graph_automorphisms(g.n, g.edges)
        assert (len(walks), oracles.orbit_count(walks, auts)) == (count, orbits)
        report = is_s_arc_transitive(G, s)
        assert (report.arc_count, report.orbit_count) == (count, orbits)
        assert report.verdict == (orbits == 1)

    def test_s_arcs_match_oracle(self):
        G = fano_incidence().graph()
        for s in range(3):
            assert sorted(s_arcs(G, s)) == sorted(oracles.s_arcs(G.n, G.edges, s))
        assert len(s_arcs(G, 3)) == 14 * 3 * 2 * 2

    def test_k34_locally_two(self):
        assert is_locally_s_arc_transitive(complete_bipartite(3, 4), 2).verdict

    def test_no_arcs(self):
        with pytest.raises(NoArcs):
            is_s_arc_transitive(Graph(3, []), 1)

    def test_isolated_vertex_fails(self):
        assert not is_locally_s_arc_transitive(Graph(3, [(0, 1)]), 1).verdict

    def test_per_vertex_counts(self):
        report = is_locally_s_arc_transitive(figure_one(), 2)
        assert not report.verdict
        assert max(report.per_vertex.values()) > 1


class TestConnectedSets:
    def test_figure_one_pairs(self):
        P = figure_one().poset()
        assert len(connected_subsets(P, 2)) == len(P.covers)

    def test_fence_pairs_are_not_homogeneous(self):
        # a<b, c<b, c<d: no symmetry moves one edge to another
        P = build_poset([(0, 1), (2, 1), (2, 3)])
        assert automorphism_group(P).order == 1
        assert not is_k_cs_homogeneous(P, 2)
        assert not is_k_cs_transitive(P, 2)

    def test_crown_is_two_cs_homogeneous(self):
        assert is_k_cs_homogeneous(crown(3).poset(), 2)

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            connected_subsets(crown(3).poset(), 0)

    @settings(max_examples=40, deadline=None)
    @given(small_orders(), st.integers(1, 3))
    def test_against_exhaustive_oracle(self, P, k):
        assert is_k_cs_homogeneous(P, k) == _homogeneous_oracle(P, k)
        assert is_k_cs_transitive(P, k) == _transitive_oracle(P, k)

    def test_corpus_against_oracle(self):
        rng = random.Random(11)
        small = [(n, B) for n, B in connected_two_level_corpus() if B.n <= 8]
        assert small
        for _, B in rng.sample(small, min(5, len(small))):
            P = B.poset()
            assert is_k_cs_homogeneous(P, 3) == _homogeneous_oracle(P, 3)
