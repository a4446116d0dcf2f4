"""Finite strict partial orders on dense integer ids, stored as bitmasks.

Every element ``i`` carries two Python ints: the strict up-set and the strict
down-set.  Bit ``j`` of ``up_mask(i)`` is set iff ``i < j``.  The cover
relation is derived (transitive reduction) and is what gets serialized.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import CycleError, NoComparablePair, NotComparable

UP = "up"
DOWN = "down"


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


class Poset:
    """Immutable finite poset on ``0..n-1``."""

    __slots__ = ("n", "covers", "labels", "_up", "_down", "_hash")

    def __init__(self, n: int, covers: Iterable[tuple[int, int]] = (), labels: Sequence[str] | None = None):
        covers = frozenset((int(a), int(b)) for a, b in covers)
        up = _closure(n, covers)
        down = [0] * n
        for a in range(n):
            for b in iter_bits(up[a]):
                down[b] |= 1 << a
        reduction = _reduction(n, up)
        if reduction != covers:
            raise ValueError("covers must be exactly the transitive reduction of the order they generate")
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise ValueError(f"expected {n} labels, got {len(labels)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "covers", covers)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_up", tuple(up))
        object.__setattr__(self, "_down", tuple(down))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poset is immutable")

    # identity

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and self.covers == other.covers and self.labels == other.labels

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.n, self.covers, self.labels)))
        return self._hash

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={len(self.covers)})"

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    # order queries

    def up_mask(self, a: int) -> int:
        return self._up[a]

    def down_mask(self, a: int) -> int:
        return self._down[a]

    def lt(self, a: int, b: int) -> bool:
        return bool(self._up[a] >> b & 1)

    def leq(self, a: int, b: int) -> bool:
        return a == b or self.lt(a, b)

    def comparable(self, a: int, b: int) -> bool:
        return self.leq(a, b) or self.lt(b, a)

    def up_set(self, a: int) -> list[int]:
        return bits_to_list(self._up[a])

    def down_set(self, a: int) -> list[int]:
        return bits_to_list(self._down[a])

    def upper_covers(self, a: int) -> list[int]:
        return sorted(b for (x, b) in self.covers if x == a)

    def lower_covers(self, b: int) -> list[int]:
        return sorted(a for (a, y) in self.covers if y == b)

    def minimal(self) -> list[int]:
        return [i for i in range(self.n) if not self._down[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(self.n) if not self._up[i]]

    def relations(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in iter_bits(self._up[a])]

    def is_chain(self) -> bool:
        return all(self.comparable(a, b) for a in range(self.n) for b in range(a + 1, self.n))

    def is_two_level(self) -> bool:
        """Every element is minimal or maximal (isolated points allowed)."""
        return all(not self._up[i] or not self._down[i] for i in range(self.n))

    def heights(self) -> list[int]:
        """Length of the longest chain ending at each element (minimal elements get 0)."""
        h = [0] * self.n
        for a in self.topological_order():
            for b in iter_bits(self._up[a]):
                if h[b] < h[a] + 1:
                    h[b] = h[a] + 1
        return h

    def topological_order(self) -> list[int]:
        return sorted(range(self.n), key=lambda i: (bin(self._down[i]).count("1"), i))

    def meet(self, a: int, b: int) -> int | None:
        """Greatest common lower bound of ``a`` and ``b`` if it exists."""
        common = (self._down[a] | 1 << a) & (self._down[b] | 1 << b)
        return _extreme(common, self._down)

    def join(self, a: int, b: int) -> int | None:
        common = (self._up[a] | 1 << a) & (self._up[b] | 1 << b)
        return _extreme(common, self._up)

    def comparability_neighbors(self, a: int) -> int:
        return self._up[a] | self._down[a]

    def induced(self, elements: Iterable[int]) -> tuple["Poset", list[int]]:
        """Induced subposet; returns it with ``ids[new] = old``."""
        ids = sorted(set(elements))
        index = {old: new for new, old in enumerate(ids)}
        rel = [(index[a], index[b]) for a in ids for b in iter_bits(self._up[a]) if b in index]
        labels = [self.label(i) for i in ids] if self.labels is not None else None
        return build_poset(rel, n=len(ids), labels=labels), ids

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """Image of this poset under ``i -> perm[i]``."""
        labels = None
        if self.labels is not None:
            labels = [""] * self.n
            for i, p in enumerate(perm):
                labels[p] = self.labels[i]
        return Poset(self.n, [(perm[a], perm[b]) for a, b in self.covers], labels)

    def dual(self) -> "Poset":
        return Poset(self.n, [(b, a) for a, b in self.covers], self.labels)


def _extreme(common: int, below: Sequence[int]) -> int | None:
    # the greatest element of `common` is the one whose strict down-set holds all the others
    for c in iter_bits(common):
        if common & ~(1 << c) & ~below[c] == 0:
            return c
    return None


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"pair ({a}, {b}) references an id outside 0..{n - 1}")
        if a == b:
            raise CycleError(f"relation {a} < {a} is reflexive")
        succ[a].append(b)
        indeg[b] += 1
    queue = deque(i for i in range(n) if indeg[i] == 0)
    order = []
    while queue:
        a = queue.popleft()
        order.append(a)
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    if len(order) != n:
        stuck = sorted(i for i in range(n) if indeg[i] > 0)
        raise CycleError(f"relations contain a directed cycle through {stuck[:6]}")
    up = [0] * n
    for a in reversed(order):
        m = 0
        for b in succ[a]:
            m |= (1 << b) | up[b]
        up[a] = m
    return up


def _reduction(n: int, up: Sequence[int]) -> frozenset[tuple[int, int]]:
    covers = set()
    for a in range(n):
        above_above = 0
        for b in iter_bits(up[a]):
            above_above |= up[b]
        for b in iter_bits(up[a] & ~above_above):
            covers.add((a, b))
    return frozenset(covers)


def build_poset(
    pairs: Iterable[tuple[int, int]],
    n: int | None = None,
    mode: str = "relations",
    labels: Sequence[str] | None = None,
) -> Poset:
    """Build a poset from ``a < b`` pairs.

    ``mode="relations"`` accepts any generating relation; ``mode="covers"``
    additionally insists every pair is a cover of the result.  Duplicate
    pairs are ignored.  Raises :class:`CycleError` on a directed cycle.
    """
    if mode not in ("relations", "covers"):
        raise ValueError(f"unknown mode {mode!r}")
    pairs = {(int(a), int(b)) for a, b in pairs}
    if n is None:
        n = 1 + max((max(p) for p in pairs), default=-1)
    up = _closure(n, pairs)
    covers = _reduction(n, up)
    if mode == "covers":
        extra = sorted(pairs - covers)
        if extra:
            raise ValueError(f"pairs {extra[:4]} are implied by others and are not covers")
    return Poset(n, covers, labels)


def interval(P: Poset, a: int, b: int) -> tuple[Poset, list[int]]:
    """The induced subposet on ``{x : a <= x <= b}`` and its id map."""
    if not P.leq(a, b):
        raise NotComparable(f"{P.label(a)} is not below {P.label(b)}")
    inside = ((P.up_mask(a) | 1 << a) & (P.down_mask(b) | 1 << b))
    return P.induced(iter_bits(inside))


# shapes

CHAIN = "chain"
KDIAMOND = "kdiamond"
OTHER = "other"


@dataclass(frozen=True)
class IntervalShape:
    """``kind`` is chain/kdiamond/other; ``size`` is the chain length or k."""

    kind: str
    size: int | None = None
    witness: Poset | None = field(default=None, compare=False)
    counterexample: tuple | None = field(default=None, compare=False)

    def __str__(self) -> str:
        if self.kind == CHAIN:
            return f"Chain({self.size})"
        if self.kind == KDIAMOND:
            return f"KDiamond({self.size})"
        return "Other"


def shape_of(Q: Poset) -> IntervalShape:
    """Classify a single bounded poset as a chain, a k-diamond, or neither."""
    if Q.is_chain():
        return IntervalShape(CHAIN, Q.n, Q)
    mins, maxs = Q.minimal(), Q.maximal()
    if len(mins) == 1 and len(maxs) == 1 and Q.n >= 4:
        bot, top = mins[0], maxs[0]
        middle = [i for i in range(Q.n) if i not in (bot, top)]
        if all(not Q.comparable(x, y) for i, x in enumerate(middle) for y in middle[i + 1:]):
            return IntervalShape(KDIAMOND, len(middle), Q)
    return IntervalShape(OTHER, None, Q)


def classify_interval(M: Poset) -> IntervalShape:
    """Common shape of the completion intervals ``[x, y]``, ``x`` minimal < ``y`` maximal.

    All such intervals are checked to be pairwise isomorphic; if they are not,
    the result is ``Other`` with the offending pair of (x, y) pairs recorded.
    """
    from .completion import dm_completion
    from .symmetry import posets_isomorphic

    pairs = [(x, y) for x in M.minimal() for y in M.maximal() if M.lt(x, y)]
    if not pairs:
        raise NoComparablePair("no minimal element lies below a maximal element")
    C = dm_completion(M)
    reps: list[tuple[tuple[int, int], Poset, tuple]] = []
    for x, y in pairs:
        Q, _ = interval(C.completion, C.embed[x], C.embed[y])
        key = _cheap_invariant(Q)
        if not reps:
            reps.append(((x, y), Q, key))
            continue
        first_pair, first, first_key = reps[0]
        if key != first_key or not posets_isomorphic(first, Q):
            return IntervalShape(OTHER, None, first, (first_pair, (x, y)))
    return shape_of(reps[0][1])


def _cheap_invariant(Q: Poset) -> tuple:
    h = Q.heights()
    return (Q.n, len(Q.covers), tuple(sorted(h)),
            tuple(sorted((h[i], len(Q.upper_covers(i)), len(Q.lower_covers(i))) for i in range(Q.n))))


# cones

@dataclass(frozen=True)
class ConePartition:
    base: int
    direction: str
    classes: tuple[frozenset[int], ...]

    @property
    def ro(self) -> int:
        return len(self.classes)


def cones(P: Poset, x: int, direction: str = UP) -> ConePartition:
    """Upper (or lower) cones of ``x``.

    Two elements above ``x`` share a cone iff some ``y > x`` lies below both.
    Every strict upper bound sits above an upper cover, so it is enough to
    merge the up-closures of the covers that overlap.
    """
    if direction not in (UP, DOWN):
        raise ValueError(f"direction must be 'up' or 'down', not {direction!r}")
    if direction == UP:
        beyond, seeds = P.up_mask, P.upper_covers(x)
    else:
        beyond, seeds = P.down_mask, P.lower_covers(x)
    groups = [(1 << c) | beyond(c) for c in seeds]
    merged: list[int] = []
    for g in groups:
        keep = []
        for h in merged:
            if g & h:
                g |= h
            else:
                keep.append(h)
        merged = keep + [g]
    classes = sorted((frozenset(iter_bits(g)) for g in merged), key=min)
    return ConePartition(x, direction, tuple(classes))


def is_connected(P: Poset) -> bool:
    """Connectivity of the comparability graph.

    Every completion element is an ideal sandwiched between original points,
    so the completion is connected exactly when ``P`` is; the check runs on
    ``P`` directly.  The empty poset counts as connected.
    """
    if P.n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for a in iter_bits(frontier):
            nxt |= P.comparability_neighbors(a)
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << P.n) - 1


def components(P: Poset) -> list[list[int]]:
    left = (1 << P.n) - 1
    out = []
    while left:
        start = left & -left
        seen = frontier = start
        while frontier:
            nxt = 0
            for a in iter_bits(frontier):
                nxt |= P.comparability_neighbors(a)
            frontier = nxt & ~seen
            seen |= nxt
        out.append(bits_to_list(seen))
        left &= ~seen
    return out
