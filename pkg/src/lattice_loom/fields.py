"""Vectors over a prime field and projective point enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BadParams, NonPrimeField


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q ** 0.5) + 1))


def check_prime_field(q: int) -> None:
    if is_prime(q):
        return
    for p in range(2, q):
        if is_prime(p):
            power = p
            while power < q:
                power *= p
            if power == q:
                raise NonPrimeField(f"q={q} is a power of {p}; only prime fields are supported")
    raise BadParams(f"q={q} is not a prime power")


@dataclass(frozen=True, order=True)
class FpVector:
    coords: tuple[int, ...]
    p: int

    def __post_init__(self):
        if any(not 0 <= c < self.p for c in self.coords):
            object.__setattr__(self, "coords", tuple(c % self.p for c in self.coords))

    def __add__(self, other: "FpVector") -> "FpVector":
        return FpVector(tuple((a + b) % self.p for a, b in zip(self.coords, other.coords)), self.p)

    def scale(self, c: int) -> "FpVector":
        return FpVector(tuple(a * c % self.p for a in self.coords), self.p)

    def dot(self, other: "FpVector") -> int:
        return sum(a * b for a, b in zip(self.coords, other.coords)) % self.p

    def is_zero(self) -> bool:
        return not any(self.coords)

    def normalized(self) -> "FpVector":
        """Scalar multiple whose first nonzero coordinate is 1."""
        for c in self.coords:
            if c:
                return self.scale(pow(c, -1, self.p))
        return self

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


def projective_points(n: int, p: int) -> list[FpVector]:
    """One normalized representative per 1-dimensional subspace of ``F_p^n``, sorted."""
    pts = set()
    for coords in itertools.product(range(p), repeat=n):
        v = FpVector(coords, p)
        if not v.is_zero():
            pts.add(v.normalized())
    return sorted(pts)


def rank(vectors: list[FpVector]) -> int:
    """Dimension of the span, by row reduction mod ``p``."""
    if not vectors:
        return 0
    p = vectors[0].p
    rows = [list(v.coords) for v in vectors]
    r = 0
    for col in range(len(rows[0])):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r
