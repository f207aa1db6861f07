"""Alexander quandle colouring counts: an independent route to B-type invariants.

The class [b^k] with conjugation is the Alexander quandle on Z/q with

    x |> y = (1 - t) x + t y,    t = n^k mod q,

so the all-B_{k,s} invariant of a braid closure is  theta^writhe * C_{X_k}.
Nothing here touches the group tables, cocycles or the braid engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .braids import BraidWord, writhe
from .cyclotomic import CyclotomicInteger, ring

__all__ = [
    "AlexanderQuandle",
    "quandle_op",
    "count_colorings",
    "count_colorings_bruteforce",
    "count_colorings_linear",
    "quandle_prediction",
    "figure_eight_count",
    "rank_mod_p",
]


@dataclass(frozen=True)
class AlexanderQuandle:
    q: int = 11
    n: int = 3
    k: int = 1

    @property
    def t(self) -> int:
        return pow(self.n, self.k, self.q)

    @property
    def t_inv(self) -> int:
        return pow(self.t, -1, self.q)

    def op(self, x: int, y: int) -> int:
        return ((1 - self.t) * x + self.t * y) % self.q

    def op_inv(self, x: int, z: int) -> int:
        """The w with x |> w = z."""
        return (self.t_inv * (z - (1 - self.t) * x)) % self.q


def quandle_op(x: int, y: int, quandle: AlexanderQuandle) -> int:
    return quandle.op(x, y)


def _act(quandle: AlexanderQuandle, braid: BraidWord, colours: tuple[int, ...]) -> tuple[int, ...]:
    c = list(colours)
    for gen, sign in braid.letters:
        i = gen - 1
        x, y = c[i], c[i + 1]
        if sign > 0:
            c[i], c[i + 1] = quandle.op(x, y), x
        else:
            c[i], c[i + 1] = y, quandle.op_inv(y, x)
    return tuple(c)


def count_colorings_bruteforce(braid: BraidWord, quandle: AlexanderQuandle) -> int:
    """Tuples in X^n fixed by the braid action, by enumeration over q^n tuples."""
    q = quandle.q
    return sum(1 for c in product(range(q), repeat=braid.strands) if _act(quandle, braid, c) == c)


def rank_mod_p(M: np.ndarray, p: int) -> int:
    A = [[int(v) % p for v in row] for row in np.asarray(M)]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [(v * inv) % p for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(vi - f * vr) % p for vi, vr in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


def count_colorings_linear(braid: BraidWord, quandle: AlexanderQuandle) -> int:
    """Same count via the kernel of (M - 1), M the linear crossing map over Z/q."""
    q, t, ti = quandle.q, quandle.t, quandle.t_inv
    n = braid.strands
    M = np.eye(n, dtype=np.int64)
    for gen, sign in braid.letters:
        i = gen - 1
        L = np.eye(n, dtype=np.int64)
        if sign > 0:
            # (x, y) -> ((1-t) x + t y, x)
            L[i, i], L[i, i + 1] = 1 - t, t
            L[i + 1, i], L[i + 1, i + 1] = 1, 0
        else:
            # (x, y) -> (y, t^-1 (x - (1-t) y))
            L[i, i], L[i, i + 1] = 0, 1
            L[i + 1, i], L[i + 1, i + 1] = ti, -ti * (1 - t)
        M = (L @ M) % q
    nullity = n - rank_mod_p((M - np.eye(n, dtype=np.int64)) % q, q)
    return q**nullity


def count_colorings(braid: BraidWord, k: int, q: int = 11, n: int = 3, method: str = "linear") -> int:
    quandle = AlexanderQuandle(q, n, k)
    if method == "linear":
        return count_colorings_linear(braid, quandle)
    if method == "bruteforce":
        return count_colorings_bruteforce(braid, quandle)
    raise ValueError(f"unknown method {method!r}")


def quandle_prediction(braid: BraidWord, k: int, s: int, u: int, q: int = 11, p: int = 5, n: int = 3) -> CyclotomicInteger:
    """twist(B_{k,s})^writhe * C_{X_k}(closure), twist = exp(2 pi i (s p + u k) k / p^2)."""
    N = np.lcm(q, p * p)
    e = ((s * p + u * k) * k * (N // (p * p)) * writhe(braid)) % N
    C = count_colorings(braid, k, q, n)
    return ring(int(N)).from_exponents(np.full(C, e))


def figure_eight_count(k: int, q: int = 11, n: int = 3) -> int:
    """Pairs (x, y) with x = (y*x) *bar (x*y) and y = (x*y) *bar (y*x) in X_k.

    Here x * y = y x y^-1 (so x * y = y |> x) and x *bar y = y^-1 x y.
    """
    Q = AlexanderQuandle(q, n, k)

    def star(x, y):
        return Q.op(y, x)

    def star_bar(x, y):
        return Q.op_inv(y, x)

    return sum(
        1
        for x in range(q)
        for y in range(q)
        if x == star_bar(star(y, x), star(x, y)) and y == star_bar(star(x, y), star(y, x))
    )
