import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_loom import (
    Digraph,
    alternating_class,
    check_p_properties,
    descendants,
    digraph_from_poset,
    directed_tree,
    dl_construction,
    find_isomorphism,
    intersection_property,
    poset_of,
    reachability_graph,
    y_shapes,
    y_transitive,
)
from lattice_loom.corpus import chain, figure_one
from lattice_loom.digraph import (
    FAIL,
    PASS,
    alternating_classes,
    class_is_truncated,
    copies_through_arc,
    delta_digraph,
    is_desc_tree,
)
from lattice_loom.errors import MissingArc, MissingLevels, NotConnected, NotGraded
from lattice_loom.generators import complete_bipartite, crown

import oracles


@st.composite
def graded_digraphs(draw, max_n=8):
    """Random digraphs whose arcs each drop one level."""
    n = draw(st.integers(2, max_n))
    level = draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    pairs = [(a, b) for a in range(n) for b in range(n) if level[a] == level[b] + 1]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Digraph(n, chosen, level)


@st.composite
def dags(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Digraph(n, chosen)


def _two_hexagons_sharing_an_arc() -> Digraph:
    # two copies of the alternating 6-cycle glued along the arc 3 -> 0
    arcs = [(3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 0),
            (3, 6), (8, 6), (8, 7), (9, 7), (9, 0)]
    level = [0, 0, 0, 1, 1, 1, 0, 0, 1, 1]
    return Digraph(10, arcs, level)


@pytest.fixture(scope="module")
def dl_c6():
    return dl_construction(crown(3), 3)


class TestDigraph:
    def test_rejects_opposite_arcs(self):
        with pytest.raises(ValueError):
            Digraph(2, [(0, 1), (1, 0)])

    def test_rejects_loop(self):
        with pytest.raises(ValueError):
            Digraph(2, [(1, 1)])

    def test_not_graded(self):
        with pytest.raises(NotGraded):
            Digraph(3, [(0, 1), (1, 2), (0, 2)], level=[2, 1, 0])

    def test_from_poset_points_down(self):
        D = digraph_from_poset(chain(3))
        assert D.arcs == {(1, 0), (2, 1)}
        assert poset_of(D) == chain(3)

    def test_from_poset_levels(self):
        D = digraph_from_poset(figure_one().poset(), require_levels=True)
        assert D.level == (0, 0, 0, 1, 1, 1)


class TestDescendants:
    def test_directed_tree_levels(self):
        D = directed_tree(2, 2, 3)
        counts = {}
        for v in descendants(D, 0):
            counts[D.level[v]] = counts.get(D.level[v], 0) + 1
        assert counts == {1: 1, 0: 2, -1: 4, -2: 8, -3: 8}
        assert is_desc_tree(D, 0)

    def test_up_direction(self):
        D = digraph_from_poset(chain(4))
        assert descendants(D, 0, "up") == {0, 1, 2, 3}
        assert descendants(D, 0) == {0}

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            descendants(directed_tree(2, 2, 1), 0, "left")

    @settings(max_examples=60, deadline=None)
    @given(dags())
    def test_down_and_up_are_adjoint(self, D):
        for x in range(D.n):
            for y in range(D.n):
                assert (y in descendants(D, x)) == (x in descendants(D, y, "up"))

    @settings(max_examples=40, deadline=None)
    @given(dags())
    def test_matches_networkx(self, D):
        import networkx as nx

        g = D.to_networkx()
        for v in range(D.n):
            assert descendants(D, v) == nx.descendants(g, v) | {v}


class TestAlternating:
    def test_missing_arc(self):
        with pytest.raises(MissingArc):
            alternating_class(directed_tree(2, 2, 1), (1, 0))

    def test_k22_is_one_class(self):
        D = delta_digraph(complete_bipartite(2, 2))
        assert len(alternating_classes(D)) == 1

    @settings(max_examples=60, deadline=None)
    @given(graded_digraphs())
    def test_classes_form_a_partition(self, D):
        classes = alternating_classes(D)
        assert sum(len(c) for c in classes) == len(D.arcs)
        assert set().union(*classes) == set(D.arcs) if classes else not D.arcs
        for c in classes:
            for arc in c:
                assert alternating_class(D, arc) == c

    @settings(max_examples=60, deadline=None)
    @given(graded_digraphs())
    def test_relation_is_an_equivalence(self, D):
        # reflexive, symmetric and transitive on arcs, checked pairwise
        rel = {a: alternating_class(D, a) for a in D.arcs}
        for a in D.arcs:
            assert a in rel[a]
            for b in rel[a]:
                assert a in rel[b]
                assert rel[b] <= rel[a]


class TestReachability:
    def test_not_connected(self):
        with pytest.raises(NotConnected):
            reachability_graph(Digraph(4, [(0, 1), (2, 3)]))

    def test_dl_c6(self, dl_c6):
        assert (dl_c6.n, len(dl_c6.arcs), len(dl_c6.interior())) == (311, 372, 61)
        r = reachability_graph(dl_c6)
        assert len(r.classes) == 62
        assert not any(r.truncated)
        assert r.classes_isomorphic and r.bipartite and not r.universal
        assert find_isomorphism(r.delta, crown(3)) is not None
        assert r.window_relative

    def test_single_delta_is_universal(self):
        r = reachability_graph(delta_digraph(crown(3)))
        assert r.universal and r.arc_transitive


class TestIntersection:
    def test_directed_tree(self):
        assert intersection_property(directed_tree(2, 2, 2)).holds

    def test_dl_c6(self, dl_c6):
        report = intersection_property(dl_c6)
        assert report.holds and report.window_relative

    def test_two_sources_two_sinks_fails(self):
        D = delta_digraph(complete_bipartite(2, 2))
        report = intersection_property(D)
        assert not report and report.witness == (2, 3)

    def test_diamond_holds(self):
        assert intersection_property(Digraph(4, [(3, 1), (3, 2), (1, 0), (2, 0)])).holds


class TestYShapes:
    def test_dl_c6(self, dl_c6):
        r = y_transitive(dl_c6, 2)
        assert (r.y_count, r.ybar_count, r.y_orbits, r.ybar_orbits) == (16, 16, 1, 1)
        assert r.verdict and r.window_relative

    def test_tree_window_is_not(self):
        r = y_transitive(directed_tree(2, 2, 3), 2)
        assert (r.y_count, r.ybar_count, r.y_orbits, r.ybar_orbits) == (32, 32, 3, 3)
        assert not r.verdict

    def test_shapes_avoid_boundary(self, dl_c6):
        for s in y_shapes(dl_c6, 2):
            assert not s.vertices() & dl_c6.boundary
            assert len(s.vertices()) == 7

    def test_depth_must_be_positive(self):
        with pytest.raises(ValueError):
            y_shapes(directed_tree(2, 2, 1), 0)


class TestPProperties:
    def test_dl_c6_passes(self, dl_c6):
        report = check_p_properties(dl_c6, crown(3))
        assert report.ok
        assert {k: r.status for k, r in report.results.items()} == {"P2": PASS, "P3": PASS, "P4": PASS, "P5": PASS}

    def test_needs_levels(self):
        with pytest.raises(MissingLevels):
            check_p_properties(Digraph(2, [(1, 0)]), crown(3))

    def test_glued_hexagons_fail_p5(self):
        D = _two_hexagons_sharing_an_arc()
        pattern = delta_digraph(crown(3))
        for arc in D.arcs:
            assert copies_through_arc(D, arc, pattern) == oracles.copies_containing(D.arcs, pattern.arcs, arc)
        assert copies_through_arc(D, (3, 0), pattern) == 2
        report = check_p_properties(D, crown(3))
        assert report["P5"].status == FAIL
        assert not report.ok

    def test_copies_in_dl_window_match_oracle(self):
        D = dl_construction(crown(3), 2)
        pattern = delta_digraph(crown(3))
        for arc in sorted(D.arcs)[:12]:
            assert copies_through_arc(D, arc, pattern) == oracles.copies_containing(D.arcs, pattern.arcs, arc)

    @settings(max_examples=60, deadline=None)
    @given(graded_digraphs())
    def test_p2_matches_cycle_oracle(self, D):
        straight = False
        for cyc in oracles.simple_cycles_undirected(D.arcs):
            k = len(cyc)
            for i in range(k):
                u, v, w = cyc[i - 1], cyc[i], cyc[(i + 1) % k]
                if ((u, v) in D.arcs and (v, w) in D.arcs) or ((w, v) in D.arcs and (v, u) in D.arcs):
                    straight = True
        status = check_p_properties(D, crown(3))["P2"].status
        assert (status == FAIL) == straight


class TestDirectedTree:
    def test_sizes(self):
        assert directed_tree(2, 2, 1).n == 8
        assert directed_tree(3, 2, 2).n == 42

    def test_interior_valencies(self):
        D = directed_tree(3, 2, 2)
        for v in D.interior():
            assert (len(D.in_neighbors(v)), len(D.out_neighbors(v))) == (3, 2)

    def test_rim_is_open_both_ways(self):
        D = directed_tree(2, 2, 2)
        assert D.open_in == D.open_out == D.boundary


class TestDLConstruction:
    def test_k22_valencies(self):
        D = dl_construction(complete_bipartite(2, 2), 2)
        assert D.n == 25
        for v in D.interior():
            assert (len(D.out_neighbors(v)), len(D.in_neighbors(v))) == (2, 2)

    @pytest.mark.parametrize("delta,radius", [(crown(3), 2), (complete_bipartite(2, 3), 2)])
    def test_policy_does_not_matter(self, delta, radius):
        base = dl_construction(delta, radius, "sorted")
        for policy in ("reversed", 7, 12345):
            assert find_isomorphism(base, dl_construction(delta, radius, policy)) is not None

    def test_alt(self):
        assert dl_construction("ALT", 2) == directed_tree(2, 2, 2)

    def test_levels_drop_by_one(self, dl_c6):
        for a, b in dl_c6.arcs:
            assert dl_c6.level[a] == dl_c6.level[b] + 1

    def test_arc_count_formula(self):
        # every interior vertex of the tree contributes one copy of the pattern
        for delta in (crown(3), complete_bipartite(2, 2), complete_bipartite(2, 3)):
            D = dl_construction(delta, 2)
            full = sum(1 for c in alternating_classes(D) if not class_is_truncated(D, c))
            assert full * len(delta.edges) <= len(D.arcs)
