"""Structural checks on completions, shared by the claims runner and the CLI.

Each ``*_violations`` function returns a list of offending witnesses (empty
when the property holds) or ``None`` when its hypothesis does not apply.
"""

from __future__ import annotations

import itertools

from .completion import CompletedPoset, dm_completion
from .poset import DOWN, UP, Poset, cones, interval, iter_bits
from .symmetry import automorphism_group, extend_to_completion, is_locally_s_arc_transitive, orbit_classes


def is_semilinear(P: Poset) -> bool:
    """Points are the minimal elements, lines the others: each line has two points
    and two points share at most one line."""
    tops = [v for v in range(P.n) if P.down_mask(v)]
    if any(len(P.lower_covers(t)) < 2 for t in tops):
        return False
    return all(bin(P.up_mask(a) & P.up_mask(b)).count("1") <= 1
               for a, b in itertools.combinations(P.minimal(), 2))


def every_top_covers_two(P: Poset) -> bool:
    return all(len(P.lower_covers(t)) >= 2 for t in range(P.n) if P.down_mask(t))


def middle_elements(C: CompletedPoset) -> list[int]:
    Q = C.completion
    return [v for v in range(Q.n) if Q.up_mask(v) and Q.down_mask(v)]


def middle_ramification_orders(C: CompletedPoset) -> tuple[set[int], set[int]]:
    """Distinct upper and lower cone counts over the elements strictly inside the completion."""
    Q = C.completion
    ups = {cones(Q, v, UP).ro for v in middle_elements(C)}
    downs = {cones(Q, v, DOWN).ro for v in middle_elements(C)}
    return ups, downs


def counts_above_minimals(C: CompletedPoset) -> set[tuple[int, int]]:
    """Per minimal ``a``: (middle elements above ``a``, maximal elements above ``a``)."""
    Q = C.completion
    mid = sum(1 << v for v in middle_elements(C))
    top = sum(1 << v for v in Q.maximal())
    return {(bin(Q.up_mask(a) & mid).count("1"), bin(Q.up_mask(a) & top).count("1")) for a in Q.minimal()}


def _chain_intervals(Q: Poset) -> bool:
    return all(interval(Q, a, b)[0].is_chain() for a in range(Q.n) for b in iter_bits(Q.up_mask(a)))


def density_violations(P: Poset, C: CompletedPoset | None = None) -> list[tuple[int, int]] | None:
    """Every ``[a, b)`` meets the originals or the meets of incomparable originals, and dually.

    Applies when every interval of the originals plus ramification points is a chain.
    """
    C = C or dm_completion(P)
    plus, _ = C.completion.induced(C.m_plus_ids())
    if not _chain_intervals(plus):
        return None
    Q = C.completion
    low_ok = sum(1 << v for v in set(C.embed) | C.up_ram)
    high_ok = sum(1 << v for v in set(C.embed) | C.down_ram)
    bad = []
    for a in range(Q.n):
        for b in iter_bits(Q.up_mask(a)):
            half_open_low = ((Q.up_mask(a) | 1 << a) & Q.down_mask(b))
            half_open_high = (Q.up_mask(a) & (Q.down_mask(b) | 1 << b))
            if not half_open_low & low_ok or not half_open_high & high_ok:
                bad.append((a, b))
    return bad


def chain_lifting_violations(P: Poset, C: CompletedPoset | None = None) -> list[tuple[int, int]] | None:
    """If all intervals among originals plus ramification points are chains, so are all completion intervals."""
    C = C or dm_completion(P)
    plus, _ = C.completion.induced(C.m_plus_ids())
    if not _chain_intervals(plus):
        return None
    Q = C.completion
    return [(a, b) for a in range(Q.n) for b in iter_bits(Q.up_mask(a)) if not interval(Q, a, b)[0].is_chain()]


def ramification_stability_violations(P: Poset, C: CompletedPoset | None = None) -> list[str] | None:
    """With chain intervals in the completion, completing again leaves the ramification points unchanged."""
    C = C or dm_completion(P)
    Q = C.completion
    if not _chain_intervals(Q):
        return None
    again = dm_completion(Q)
    back = {c: i for i, c in enumerate(again.embed)}
    bad = []
    if {back[c] for c in again.up_ram} != set(C.up_ram):
        bad.append("up")
    if {back[c] for c in again.down_ram} != set(C.down_ram):
        bad.append("down")
    return bad


def added_point_violations(P: Poset, C: CompletedPoset | None = None) -> list[int] | None:
    """In a two-level poset every added point lies above two minimals and below two maximals."""
    if not P.is_two_level():
        return None
    C = C or dm_completion(P)
    Q = C.completion
    orig = sum(1 << c for c in C.embed)
    bad = []
    for c in C.added:
        if bin(Q.down_mask(c) & orig).count("1") < 2 or bin(Q.up_mask(c) & orig).count("1") < 2:
            bad.append(c)
    return sorted(bad)


def meet_cover_violations(P: Poset, C: CompletedPoset | None = None) -> list[tuple[int, int]]:
    """Meets of two maximal originals sit directly below both, and anything directly
    below two of them is their meet."""
    C = C or dm_completion(P)
    Q = C.completion
    tops = [C.embed[t] for t in P.maximal() if P.down_mask(t)]
    bad = []
    for b, c in itertools.combinations(tops, 2):
        y = Q.meet(b, c)
        if y is not None and not ((y, b) in Q.covers and (y, c) in Q.covers):
            bad.append((b, c))
    for y in range(Q.n):
        above = [t for t in tops if (y, t) in Q.covers]
        for b, c in itertools.combinations(above, 2):
            if Q.meet(b, c) != y:
                bad.append((b, c))
    return bad


def ramification_orbit_report(P: Poset, C: CompletedPoset | None = None) -> dict[str, int]:
    """Orbit counts of the base automorphisms on each kind of ramification point,
    and the number of distinct cone counts found on each."""
    C = C or dm_completion(P)
    group = automorphism_group(P)
    gens = [extend_to_completion(C, g) for g in group.generators]
    Q = C.completion
    out = {}
    for name, pts, direction in (("up", C.up_ram, UP), ("down", C.down_ram, DOWN)):
        out[f"{name}_orbits"] = len(orbit_classes(sorted(pts), gens, lambda g, p: g[p])) if pts else 0
        out[f"{name}_orders"] = len({cones(Q, v, direction).ro for v in pts})
    return out


def locally_two_arc_transitive(P: Poset) -> bool:
    from .errors import NoArcs

    try:
        return (is_locally_s_arc_transitive(P, 1).verdict
                and is_locally_s_arc_transitive(P, 2).verdict)
    except NoArcs:
        return False
