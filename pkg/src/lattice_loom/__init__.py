"""Finite posets, their Dedekind–MacNeille completions, and graph symmetry checks."""

from .completion import (
    CompletedPoset,
    Ideal,
    dm_completion,
    ideal_closure,
    is_cycle_free,
    is_dm_complete,
    m_plus,
    ramification_points,
)
from .digraph import (
    Digraph,
    YShape,
    alternating_class,
    check_p_properties,
    descendants,
    digraph_from_poset,
    intersection_property,
    poset_of,
    reachability_graph,
    y_shapes,
    y_transitive,
)
from .generators import (
    Family,
    FamilySpec,
    directed_tree,
    dl_construction,
    generate,
    generic_bipartite,
)
from .graphs import BipartiteGraph, Graph
from .poset import ConePartition, IntervalShape, Poset, build_poset, classify_interval, cones, interval, is_connected
from .symmetry import (
    ArcOrbitReport,
    PermGroup,
    automorphism_group,
    find_isomorphism,
    is_k_cs_homogeneous,
    is_k_cs_transitive,
    is_locally_s_arc_transitive,
    is_s_arc_transitive,
)

__version__ = "0.1.0"
