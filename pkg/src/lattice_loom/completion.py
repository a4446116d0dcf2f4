"""Dedekind–MacNeille completion by closed-set enumeration.

An ideal is a nonempty set ``J`` with a nonempty set of upper bounds ``J↑``
and ``J = J↑↓``.  No global top or bottom is added, so a poset with several
maximal elements keeps them all maximal in its completion.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import EmptyInput, SizeLimit, Unbounded
from .poset import Poset, bits_to_list, build_poset, iter_bits, mask_of

DEFAULT_MAX_IDEALS = 1 << 20
MAX_IDEALS_ENV = "LATTICE_LOOM_MAX_IDEALS"


def max_ideals() -> int:
    raw = os.environ.get(MAX_IDEALS_ENV)
    return int(raw) if raw else DEFAULT_MAX_IDEALS


@dataclass(frozen=True)
class Ideal:
    members: frozenset[int]
    upper_bounds: frozenset[int]


class _Galois:
    """Upper/lower bound operators on bitmasks (non-strict bounds)."""

    def __init__(self, P: Poset):
        self.n = P.n
        self.full = (1 << P.n) - 1
        self.at_or_above = [P.up_mask(i) | 1 << i for i in range(P.n)]
        self.at_or_below = [P.down_mask(i) | 1 << i for i in range(P.n)]

    def upper(self, S: int) -> int:
        m = self.full
        for s in iter_bits(S):
            m &= self.at_or_above[s]
            if not m:
                break
        return m

    def lower(self, U: int) -> int:
        m = self.full
        for u in iter_bits(U):
            m &= self.at_or_below[u]
            if not m:
                break
        return m

    def close(self, S: int) -> int:
        return self.lower(self.upper(S))


def ideal_closure(P: Poset, S: Iterable[int]) -> Ideal:
    """Smallest ideal containing ``S``, returned with its upper bounds."""
    S = mask_of(S)
    if not S:
        raise EmptyInput("cannot close the empty set")
    g = _Galois(P)
    up = g.upper(S)
    if not up:
        raise Unbounded(f"{[P.label(i) for i in iter_bits(S)]} has no common upper bound")
    return Ideal(frozenset(iter_bits(g.lower(up))), frozenset(iter_bits(up)))


def _closed_sets(g: _Galois) -> Iterator[int]:
    """All sets fixed by ``S -> S↑↓``, in lectic order (NextClosure)."""
    n = g.n
    A = g.close(0)
    while True:
        yield A
        if A == g.full:
            return
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if A & bit:
                A &= ~bit
                continue
            B = g.close(A | bit)
            # accept when closing adds nothing below i
            if (B & ~A) & (bit - 1) == 0:
                A = B
                break
        else:
            return


def enumerate_ideals(P: Poset, cap: int | None = None) -> list[int]:
    """Ideal bitmasks of ``P`` sorted by their sorted member tuples."""
    cap = max_ideals() if cap is None else cap
    g = _Galois(P)
    found = []
    for A in _closed_sets(g):
        if A and g.upper(A):
            found.append(A)
            if len(found) > cap:
                raise SizeLimit(f"more than {cap} ideals; raise {MAX_IDEALS_ENV} to allow more")
    found.sort(key=bits_to_list)
    return found


class CompletedPoset:
    """A completion together with the embedding of the original poset.

    ``embed[x]`` is the completion id of the principal ideal of ``x``;
    ``up_ram`` holds meets and ``down_ram`` joins of incomparable originals.
    """

    def __init__(self, base: Poset, ideals: list[int], completion: Poset, embed: list[int],
                 up_ram: frozenset[int], down_ram: frozenset[int]):
        self.base = base
        self.ideal_masks = ideals
        self.completion = completion
        self.embed = embed
        self.added = frozenset(range(completion.n)) - frozenset(embed)
        self.up_ram = up_ram
        self.down_ram = down_ram

    @cached_property
    def original_of(self) -> dict[int, int]:
        return {c: x for x, c in enumerate(self.embed)}

    def ideal(self, c: int) -> Ideal:
        g = _Galois(self.base)
        m = self.ideal_masks[c]
        return Ideal(frozenset(iter_bits(m)), frozenset(iter_bits(g.upper(m))))

    def members(self, c: int) -> list[int]:
        return bits_to_list(self.ideal_masks[c])

    def m_plus_ids(self) -> list[int]:
        return sorted(set(self.embed) | self.up_ram | self.down_ram)

    def level_counts(self) -> list[int]:
        h = self.completion.heights()
        counts = [0] * (max(h, default=-1) + 1)
        for v in h:
            counts[v] += 1
        return counts

    def __repr__(self) -> str:
        return f"CompletedPoset(n={self.completion.n}, added={len(self.added)})"


def dm_completion(P: Poset, cap: int | None = None) -> CompletedPoset:
    """Completion of ``P`` by its ideals ordered under inclusion."""
    ideals = enumerate_ideals(P, cap)
    index = {m: i for i, m in enumerate(ideals)}
    g = _Galois(P)

    N = len(ideals)
    rel = []
    for i, a in enumerate(ideals):
        for j, b in enumerate(ideals):
            if i != j and a & b == a:
                rel.append((i, j))
    labels = None
    if P.labels is not None:
        labels = []
        for m in ideals:
            mem = bits_to_list(m)
            labels.append("{" + ",".join(P.label(i) for i in mem) + "}")
    embed = [index[g.at_or_below[x]] for x in range(P.n)]
    if labels is not None:
        for x, c in enumerate(embed):
            labels[c] = P.label(x)
    completion = build_poset(rel, n=N, labels=labels)

    up_ram, down_ram = set(), set()
    for a in range(P.n):
        for b in range(a + 1, P.n):
            if P.comparable(a, b):
                continue
            meet = g.at_or_below[a] & g.at_or_below[b]
            if meet:
                up_ram.add(index[meet])
            both = g.at_or_below[a] | g.at_or_below[b]
            if g.upper(both):
                down_ram.add(index[g.close(both)])
    return CompletedPoset(P, ideals, completion, embed, frozenset(up_ram), frozenset(down_ram))


def is_dm_complete(P: Poset) -> bool:
    """Every pair with an upper bound has a least one, and dually."""
    up = [P.up_mask(i) | 1 << i for i in range(P.n)]
    down = [P.down_mask(i) | 1 << i for i in range(P.n)]
    for a in range(P.n):
        for b in range(a + 1, P.n):
            for common, cone in ((up[a] & up[b], up), (down[a] & down[b], down)):
                if common and not any(common & ~cone[c] == 0 for c in iter_bits(common)):
                    return False
    return True


def ramification_points(P: Poset) -> tuple[frozenset[int], frozenset[int]]:
    """``(up, down)`` ramification points as completion ids of ``dm_completion(P)``."""
    C = dm_completion(P)
    return C.up_ram, C.down_ram


def m_plus(P: Poset) -> Poset:
    """Induced subposet of the completion on the originals plus ramification points."""
    C = dm_completion(P)
    Q, _ = C.completion.induced(C.m_plus_ids())
    return Q


def hasse_is_forest(P: Poset) -> bool:
    from .poset import components
    return len(P.covers) == P.n - len(components(P))


def is_cycle_free(P: Poset) -> bool:
    """True iff the undirected Hasse graph of the completion has no cycle."""
    return hasse_is_forest(dm_completion(P).completion)
