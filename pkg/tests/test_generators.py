import itertools

import pytest

from lattice_loom import Family, FamilySpec, dm_completion, generate, generic_bipartite, is_dm_complete
from lattice_loom.errors import BadParams, NonPrimeField, NotOneArcTransitive
from lattice_loom.fields import FpVector, check_prime_field, is_prime, projective_points, rank
from lattice_loom.generators import (
    ALT,
    alt_window,
    block_design_parameters,
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
from lattice_loom.graphs import BipartiteGraph
from lattice_loom.poset import classify_interval


class TestFields:
    def test_is_prime(self):
        assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]

    def test_prime_power_rejected(self):
        with pytest.raises(NonPrimeField):
            check_prime_field(4)
        with pytest.raises(NonPrimeField):
            check_prime_field(9)

    def test_non_prime_power_rejected(self):
        with pytest.raises(BadParams) as info:
            check_prime_field(6)
        assert not isinstance(info.value, NonPrimeField)

    @pytest.mark.parametrize("n,p", [(3, 2), (4, 2), (3, 3), (4, 3), (3, 5)])
    def test_point_count(self, n, p):
        assert len(projective_points(n, p)) == (p ** n - 1) // (p - 1)

    def test_vector_ops(self):
        v = FpVector((1, 2, 0), 3)
        assert (v + v).coords == (2, 1, 0)
        assert v.scale(2).normalized() == v
        assert v.dot(FpVector((1, 1, 1), 3)) == 0

    def test_rank(self):
        e = [FpVector(c, 2) for c in [(1, 0, 0), (0, 1, 0), (1, 1, 0)]]
        assert rank(e) == 2
        assert rank([]) == 0


class TestTwoLevelFamilies:
    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_crown(self, n):
        B = crown(n)
        assert (B.nx, B.ny, len(B.edges)) == (n, n, 2 * n)
        assert B.graph().is_connected()

    def test_crown_too_small(self):
        with pytest.raises(BadParams):
            crown(1)

    def test_complete_bipartite(self):
        assert len(complete_bipartite(3, 4).edges) == 12

    def test_complement_matching(self):
        B = complement_perfect_matching(4)
        assert all(d == 3 for part in B.degrees() for d in part)
        with pytest.raises(BadParams):
            complement_perfect_matching(2)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_cube(self, n):
        B = cube(n)
        assert B.nx == B.ny == 2 ** (n - 1)
        assert len(B.edges) == n * 2 ** (n - 1)
        assert all(lab.count("1") % 2 == 0 for lab in B.labels[:B.nx])

    @pytest.mark.parametrize("n,added", [(3, 6), (4, 24), (5, 80)])
    def test_cube_completion(self, n, added):
        C = dm_completion(cube(n).poset())
        assert len(C.added) == added
        assert str(classify_interval(cube(n).poset())) == f"KDiamond({n - 1})"

    def test_fano(self):
        B = fano_incidence()
        assert (B.nx, B.ny) == (7, 7)
        assert B.degrees() == ([3] * 7, [3] * 7)
        assert block_design_parameters(B) == (7, 3, 1)

    def test_fano_complement(self):
        B = fano_complement()
        assert B.degrees() == ([4] * 7, [4] * 7)
        assert block_design_parameters(B) == (7, 4, 2)
        assert dm_completion(B.poset()).level_counts() == [7, 21, 7]

    def test_subspace_4_2(self):
        B = subspace_graph(4, 2)
        assert (B.nx, B.ny) == (15, 15)
        assert block_design_parameters(B) == (15, 7, 3)
        assert dm_completion(B.poset()).completion.n == 65

    def test_non_incidence_4_2(self):
        B = non_incidence_graph(4, 2)
        assert block_design_parameters(B) == (15, 8, 4)
        assert dm_completion(B.poset()).level_counts() == [15, 105, 105, 15]

    def test_subspace_4_3(self):
        B = subspace_graph(4, 3)
        assert (B.nx, B.ny) == (40, 40)
        assert B.degrees() == ([13] * 40, [13] * 40)

    def test_incidence_is_dot_product_zero(self):
        B = subspace_graph(3, 3)
        pts = projective_points(3, 3)
        for x, y in B.edges:
            assert pts[x].dot(pts[y]) == 0

    def test_vector_space_needs_prime(self):
        with pytest.raises(NonPrimeField):
            subspace_graph(3, 4)

    def test_design_none_for_irregular(self):
        assert block_design_parameters(BipartiteGraph(3, 2, [(0, 0), (1, 0), (2, 1)])) is None

    def test_alt_window(self):
        B = alt_window(5)
        assert len(B.edges) == 5
        assert B.graph().is_connected()


class TestFamilySpec:
    def test_arity(self):
        with pytest.raises(BadParams):
            FamilySpec(Family.CROWN, (3, 4))

    def test_string_family(self):
        assert FamilySpec("cube", (3,)).family is Family.CUBE

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            FamilySpec("petersen", ())

    @pytest.mark.parametrize("family,params", [
        ("crown", (4,)), ("complete-bipartite", (2, 3)), ("complement-matching", (4,)), ("cube", (3,)),
        ("fano-incidence", ()), ("fano-complement", ()), ("subspace", (3, 2)), ("non-incidence", (3, 2)),
        ("directed-tree", (2, 2, 2)),
    ])
    def test_generate_round_trip(self, family, params):
        assert generate(FamilySpec(family, params)) is not None

    def test_dl_needs_delta(self):
        with pytest.raises(BadParams):
            generate(FamilySpec(Family.DL, (2,)))

    def test_dl_with_delta(self):
        D = generate(FamilySpec(Family.DL, (2,), delta=FamilySpec(Family.COMPLETE_BIPARTITE, (2, 2))))
        assert D.n == 25


class TestTreesAndDL:
    def test_tree_valency_check(self):
        with pytest.raises(BadParams):
            directed_tree(1, 2, 2)

    def test_tree_radius_check(self):
        with pytest.raises(BadParams):
            directed_tree(2, 2, 0)

    def test_dl_rejects_non_edge_transitive(self):
        # a path on two lower and one upper vertex plus a pendant: edges fall into two orbits
        delta = BipartiteGraph(2, 2, [(0, 0), (1, 0), (1, 1)])
        with pytest.raises(NotOneArcTransitive):
            dl_construction(delta, 2)

    def test_dl_rejects_disconnected(self):
        with pytest.raises(NotOneArcTransitive):
            dl_construction(BipartiteGraph(2, 2, [(0, 0), (1, 1)]), 2)

    def test_dl_bad_policy(self):
        with pytest.raises(BadParams):
            dl_construction(crown(3), 2, "shuffled")

    def test_dl_alt_constant(self):
        assert dl_construction(ALT, 1) == directed_tree(2, 2, 1)


class TestGeneric:
    def test_first_round(self):
        B = generic_bipartite(1, 0)
        assert (B.nx, B.ny) == (2, 2)

    @pytest.mark.parametrize("seed", range(4))
    def test_not_complete_from_three_rounds(self, seed):
        assert is_dm_complete(generic_bipartite(2, seed).poset())
        assert not is_dm_complete(generic_bipartite(3, seed).poset())

    def test_larger_base_breaks_completeness_sooner(self):
        assert not is_dm_complete(generic_bipartite(2, 0, base_x=2, base_y=1).poset())

    def test_seeded_determinism(self):
        assert generic_bipartite(3, 5) == generic_bipartite(3, 5)

    def test_extension_witnesses(self):
        # every pattern on every pair of earlier lower vertices has an upper witness
        before = generic_bipartite(2, 1)
        after = generic_bipartite(3, 1)
        nbrs = [set() for _ in range(after.ny)]
        for x, y in after.edges:
            nbrs[y].add(x)
        for S in itertools.combinations(range(before.nx), 2):
            for r in range(3):
                for U in itertools.combinations(S, r):
                    assert any(nb & set(S) == set(U) for nb in nbrs)
