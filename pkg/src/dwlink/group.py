"""The metacyclic group G = Z_q x|_n Z_p and its conjugacy data.

Elements a^i b^j are stored as residue pairs ``(i, j)``; the defining relation
is ``b a b^-1 = a^n``.  Besides the tuple API, every group carries integer
codes ``code = j*q + i`` and lookup tables over those codes, which the
vectorised braid engine uses for gathers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import NamedTuple

import numpy as np

__all__ = ["GroupSpec", "GroupElement", "ConjugacyClass", "MetacyclicGroup", "is_prime"]


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    f = 2
    while f * f <= m:
        if m % f == 0:
            return False
        f += 1
    return True


class GroupElement(NamedTuple):
    """a^i b^j."""

    i: int
    j: int

    def __str__(self):
        return f"a^{self.i} b^{self.j}"


@dataclass(frozen=True)
class GroupSpec:
    q: int = 11
    p: int = 5
    n: int = 3

    def __post_init__(self):
        q, p, n = self.q, self.p, self.n
        if not (is_prime(q) and q % 2 == 1):
            raise ValueError(f"q={q} must be an odd prime")
        if not is_prime(p) or (q - 1) % p != 0:
            raise ValueError(f"p={p} must be a prime dividing q-1={q - 1}")
        if gcd(p, q) != 1:
            raise ValueError("p and q must be coprime")
        if n % q == 1 or pow(n, p, q) != 1:
            raise ValueError(f"n={n} must have multiplicative order exactly {p} mod {q}")

    @property
    def order(self) -> int:
        return self.q * self.p


@dataclass(frozen=True)
class ConjugacyClass:
    representative: GroupElement
    members: tuple[GroupElement, ...]

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members


@dataclass(frozen=True, eq=False)
class MetacyclicGroup:
    spec: GroupSpec = field(default_factory=GroupSpec)

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def order(self) -> int:
        return self.spec.order

    @property
    def identity(self) -> GroupElement:
        return GroupElement(0, 0)

    @property
    def a(self) -> GroupElement:
        return GroupElement(1 % self.q, 0)

    @property
    def b(self) -> GroupElement:
        return GroupElement(0, 1 % self.p)

    def element(self, i: int, j: int) -> GroupElement:
        return GroupElement(i % self.q, j % self.p)

    def elements(self) -> list[GroupElement]:
        """All elements, sorted by ``(j, i)``."""
        return [GroupElement(i, j) for j in range(self.p) for i in range(self.q)]

    def multiply(self, x: GroupElement, y: GroupElement) -> GroupElement:
        # a^i b^j a^k b^l = a^(i + n^j k) b^(j + l)
        q, p = self.q, self.p
        return GroupElement((x[0] + pow(self.n, x[1], q) * y[0]) % q, (x[1] + y[1]) % p)

    def inverse(self, x: GroupElement) -> GroupElement:
        q, p = self.q, self.p
        j = (-x[1]) % p
        return GroupElement((-pow(self.n, j, q) * x[0]) % q, j)

    def power(self, x: GroupElement, e: int) -> GroupElement:
        if e < 0:
            x, e = self.inverse(x), -e
        r = self.identity
        for _ in range(e):
            r = self.multiply(r, x)
        return r

    def conjugate(self, g: GroupElement, x: GroupElement) -> GroupElement:
        """g x g^-1."""
        return self.multiply(self.multiply(g, x), self.inverse(g))

    def centralizer(self, x: GroupElement) -> tuple[GroupElement, ...]:
        return tuple(g for g in self.elements() if self.multiply(g, x) == self.multiply(x, g))

    def conjugacy_class(self, x: GroupElement) -> ConjugacyClass:
        for c in self.conjugacy_classes():
            if x in c.members:
                return c
        raise ValueError(f"{x} is not an element of the group")

    @cached_property
    def _classes(self) -> tuple[ConjugacyClass, ...]:
        seen = set()
        orbits = []
        for x in self.elements():
            if x in seen:
                continue
            orbit = sorted({self.conjugate(g, x) for g in self.elements()}, key=lambda e: (e.j, e.i))
            seen.update(orbit)
            orbits.append(orbit)
        # least member in (j, i) order is the representative: e, a, a^m, b, ..., b^(p-1)
        orbits.sort(key=lambda o: (o[0].j, o[0].i))
        return tuple(ConjugacyClass(o[0], tuple(o)) for o in orbits)

    def conjugacy_classes(self) -> list[ConjugacyClass]:
        return list(self._classes)

    # --- integer codes and lookup tables -------------------------------------

    def code(self, x: GroupElement) -> int:
        return x[1] * self.q + x[0]

    def decode(self, c: int) -> GroupElement:
        return GroupElement(c % self.q, c // self.q)

    @cached_property
    def mul_table(self) -> np.ndarray:
        els = self.elements()
        t = np.empty((self.order, self.order), dtype=np.int64)
        for x in els:
            for y in els:
                t[self.code(x), self.code(y)] = self.code(self.multiply(x, y))
        t.setflags(write=False)
        return t

    @cached_property
    def inv_table(self) -> np.ndarray:
        t = np.array([self.code(self.inverse(self.decode(c))) for c in range(self.order)], dtype=np.int64)
        t.setflags(write=False)
        return t

    @cached_property
    def b_exponent(self) -> np.ndarray:
        """j-component of each code (the quotient map G -> Z_p)."""
        t = np.arange(self.order, dtype=np.int64) // self.q
        t.setflags(write=False)
        return t
