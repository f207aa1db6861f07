"""Exact arithmetic in the ring of cyclotomic integers Z[zeta_N].

An element is stored by its coefficient vector in the power basis
1, zeta, ..., zeta^(phi(N)-1), reduced modulo the N-th cyclotomic polynomial.
That representation is canonical, so equality and hashing are plain tuple
operations.

Most values in this package are produced as multisets of roots of unity (a
histogram of exponents mod N, i.e. an element of the group ring Z[C_N]);
:meth:`CyclotomicRing.reduce` maps such histograms to canonical form, also in
batch.
"""

from __future__ import annotations

from functools import cached_property, lru_cache

import numpy as np

__all__ = [
    "CyclotomicRing",
    "CyclotomicInteger",
    "GroupRingDFT",
    "cyclotomic_polynomial",
    "ring",
    "DEFAULT_N",
]

DEFAULT_N = 275

# float64 matmuls are exact while every partial sum stays below this
_FLOAT_EXACT = 2**52


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first), den monic."""
    num = list(num)
    dq = len(den) - 1
    out = [0] * (len(num) - dq)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dq]
        out[k] = c
        if c:
            for t, d in enumerate(den):
                num[k + t] -= c * d
    if any(num[:dq]):
        raise ArithmeticError("polynomial division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N, lowest degree first."""
    poly = [-1] + [0] * (N - 1) + [1]  # x^N - 1
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CyclotomicRing:
    """Z[zeta_N] with vectorised reduction helpers."""

    def __init__(self, N: int = DEFAULT_N):
        if N < 1:
            raise ValueError("N must be positive")
        self.N = N
        self.phi = cyclotomic_polynomial(N)
        self.degree = len(self.phi) - 1

    def __repr__(self):
        return f"CyclotomicRing({self.N})"

    @cached_property
    def reduction_matrix(self) -> np.ndarray:
        """Row k holds the canonical coefficients of zeta^k, for 0 <= k < N."""
        N, deg = self.N, self.degree
        R = np.zeros((N, deg), dtype=np.int64)
        cur = np.zeros(deg, dtype=np.int64)
        cur[0] = 1
        low = np.array(self.phi[:-1], dtype=np.int64)
        for k in range(N):
            R[k] = cur
            top = cur[-1]
            cur = np.concatenate(([0], cur[:-1]))
            if top:
                cur -= top * low
        R.setflags(write=False)
        return R

    @cached_property
    def _reduction_float(self) -> np.ndarray:
        return self.reduction_matrix.astype(np.float64)

    @cached_property
    def _max_abs_reduction(self) -> int:
        return int(np.abs(self.reduction_matrix).sum(axis=0).max())

    def reduce(self, counts: np.ndarray) -> np.ndarray:
        """Canonical coefficients of group-ring elements.

        ``counts[..., k]`` is the coefficient of zeta^k, ``k < N``.  Returns an
        int64 array of shape ``counts.shape[:-1] + (degree,)``.
        """
        counts = np.asarray(counts)
        if counts.shape[-1] != self.N:
            raise ValueError(f"last axis must have length {self.N}")
        bound = int(np.abs(counts).max(initial=0)) * self._max_abs_reduction
        if bound < _FLOAT_EXACT:
            out = counts.astype(np.float64) @ self._reduction_float
            return np.rint(out).astype(np.int64)
        if bound < 2**62:
            return counts.astype(np.int64) @ self.reduction_matrix
        out = counts.astype(object) @ self.reduction_matrix.astype(object)
        return out

    def from_counts(self, counts) -> CyclotomicInteger:
        return CyclotomicInteger(self, self.reduce(np.asarray(counts)))

    def from_exponents(self, exponents) -> CyclotomicInteger:
        """Sum of zeta^e over the given exponents (with multiplicity)."""
        e = np.asarray(exponents, dtype=np.int64) % self.N
        return self.from_counts(np.bincount(e, minlength=self.N))

    def root(self, e: int) -> CyclotomicInteger:
        return self.from_exponents([e])

    def integer(self, m: int) -> CyclotomicInteger:
        c = np.zeros(self.degree, dtype=np.int64)
        c[0] = m
        return CyclotomicInteger(self, c)

    @property
    def zero(self) -> CyclotomicInteger:
        return self.integer(0)

    @property
    def one(self) -> CyclotomicInteger:
        return self.integer(1)

    def to_counts(self, coeffs: np.ndarray) -> np.ndarray:
        """Embed canonical coefficients back into the group ring (zero padded)."""
        coeffs = np.asarray(coeffs)
        pad = np.zeros(coeffs.shape[:-1] + (self.N - self.degree,), dtype=coeffs.dtype)
        return np.concatenate([coeffs, pad], axis=-1)

    def conj_counts(self, counts: np.ndarray) -> np.ndarray:
        """Complex conjugation on group-ring elements: zeta^k -> zeta^-k."""
        idx = (-np.arange(self.N)) % self.N
        return np.asarray(counts)[..., idx]

    @cached_property
    def _powers(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.degree) / self.N)

    def approx(self, coeffs: np.ndarray) -> np.ndarray:
        return np.asarray(coeffs, dtype=np.float64) @ self._powers


_RINGS: dict[int, CyclotomicRing] = {}


def ring(N: int = DEFAULT_N) -> CyclotomicRing:
    """Shared ring instance for a given N."""
    r = _RINGS.get(N)
    if r is None:
        r = _RINGS[N] = CyclotomicRing(N)
    return r


class CyclotomicInteger:
    """An element of Z[zeta_N] in canonical (reduced power-basis) form."""

    __slots__ = ("ring", "coeffs", "_key")

    def __init__(self, ring_: CyclotomicRing, coeffs):
        c = np.asarray(coeffs)
        if c.shape != (ring_.degree,):
            raise ValueError(f"expected {ring_.degree} coefficients, got shape {c.shape}")
        self.ring = ring_
        self.coeffs = c
        self._key = tuple(int(v) for v in c)

    @property
    def N(self) -> int:
        return self.ring.N

    def key(self) -> tuple[int, ...]:
        return self._key

    def __hash__(self):
        return hash((self.ring.N, self._key))

    def __eq__(self, other):
        if isinstance(other, CyclotomicInteger):
            return self.ring.N == other.ring.N and self._key == other._key
        if isinstance(other, (int, np.integer)):
            return self.is_integer() and self._key[0] == int(other)
        return NotImplemented

    def _coerce(self, other) -> CyclotomicInteger:
        if isinstance(other, CyclotomicInteger):
            if other.ring.N != self.ring.N:
                raise ValueError("mixing cyclotomic rings of different order")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ring.integer(int(other))
        raise TypeError(f"cannot combine CyclotomicInteger with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CyclotomicInteger(self.ring, self.coeffs + o.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInteger(self.ring, -self.coeffs)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CyclotomicInteger(self.ring, self.coeffs - o.coeffs)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        N = self.ring.N
        full = np.convolve(self.coeffs.astype(object), o.coeffs.astype(object))
        counts = np.zeros(N, dtype=object)
        np.add.at(counts, np.arange(full.size) % N, full)
        return CyclotomicInteger(self.ring, _reduce_exact(self.ring, counts))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not ring elements in general")
        r = self.ring.one
        base = self
        while e:
            if e & 1:
                r = r * base
            base = base * base
            e >>= 1
        return r

    def conjugate(self) -> CyclotomicInteger:
        counts = self.ring.to_counts(self.coeffs.astype(object))
        return CyclotomicInteger(self.ring, _reduce_exact(self.ring, self.ring.conj_counts(counts)))

    def galois(self, k: int) -> CyclotomicInteger:
        """Image under zeta -> zeta^k (k coprime to N)."""
        N = self.ring.N
        counts = np.zeros(N, dtype=object)
        np.add.at(counts, (np.arange(self.ring.degree) * k) % N, self.coeffs.astype(object))
        return CyclotomicInteger(self.ring, _reduce_exact(self.ring, counts))

    def is_integer(self) -> bool:
        return not any(self._key[1:])

    def __int__(self):
        if not self.is_integer():
            raise ValueError(f"{self!r} is not a rational integer")
        return self._key[0]

    def __complex__(self):
        return complex(self.ring.approx(self.coeffs))

    def exponent_dict(self) -> dict[int, int]:
        """Nonzero canonical coefficients keyed by zeta exponent."""
        return {k: v for k, v in enumerate(self._key) if v}

    @classmethod
    def from_exponent_dict(cls, d: dict, N: int = DEFAULT_N) -> CyclotomicInteger:
        r = ring(N)
        counts = np.zeros(N, dtype=np.int64)
        for k, v in d.items():
            counts[int(k) % N] += int(v)
        return r.from_counts(counts)

    def __repr__(self):
        terms = [f"{v}*z^{k}" if k else str(v) for k, v in self.exponent_dict().items()]
        body = " + ".join(terms) if terms else "0"
        return f"Cyc{self.ring.N}({body})"

    def __format__(self, spec):
        z = complex(self)
        if self.is_integer():
            return format(self._key[0], spec or "d")
        return f"{z.real:.6g}{z.imag:+.6g}i"


def _reduce_exact(r: CyclotomicRing, counts: np.ndarray) -> np.ndarray:
    out = counts.astype(object) @ r.reduction_matrix.astype(object)
    if all(abs(int(v)) < 2**62 for v in out):
        return np.array([int(v) for v in out], dtype=np.int64)
    return out


def _is_prime(m: int) -> bool:
    return m > 1 and all(m % f for f in range(2, int(m**0.5) + 1))


def _prime_factors(m: int) -> list[int]:
    return [f for f in range(2, m + 1) if m % f == 0 and _is_prime(f)]


class GroupRingDFT:
    """Exact batched products in the group ring Z[C_N].

    Elements are evaluated at all N-th roots of unity of F_P for a few primes
    P = 1 mod N below 2^21, where products become pointwise.  Any matmul over
    residues with at most 2048 summands stays below 2^53 and can use float64
    BLAS.  :meth:`inverse` recovers integer coefficients by CRT, valid when
    they lie in (-M/2, M/2), M the product of the primes.
    """

    PRIME_LIMIT = 2**21

    def __init__(self, N: int = DEFAULT_N, nprimes: int = 2):
        self.N = N
        primes = []
        P = self.PRIME_LIMIT - (self.PRIME_LIMIT - 1) % N
        while len(primes) < nprimes:
            if P < N:
                raise ValueError(f"not enough primes = 1 mod {N} below 2^21")
            if _is_prime(P):
                primes.append(P)
            P -= N
        self.primes = primes
        self.modulus = 1
        for P in primes:
            self.modulus *= P
        if self.modulus >= 2**62:
            raise ValueError("CRT modulus would overflow int64")
        self._fwd, self._inv = [], []
        jk = np.outer(np.arange(N), np.arange(N))
        for P in primes:
            w = self._root(P)
            pw = np.array([pow(w, e, P) for e in range(N)], dtype=np.int64)
            self._fwd.append(pw[jk % N].astype(np.float64))
            ninv = pow(N, -1, P)
            self._inv.append(((pw[(-jk) % N] * ninv) % P).astype(np.float64))

    def _root(self, P: int) -> int:
        N = self.N
        for x in range(2, P):
            w = pow(x, (P - 1) // N, P)
            if all(pow(w, N // f, P) != 1 for f in _prime_factors(N)):
                return w
        raise ValueError(f"no primitive {N}-th root mod {P}")

    def forward(self, counts: np.ndarray) -> list[np.ndarray]:
        """Evaluations of ``counts[..., N]`` at every root, one array per prime."""
        counts = np.asarray(counts, dtype=np.int64)
        return [np.rint((counts % P).astype(np.float64) @ F).astype(np.int64) % P for P, F in zip(self.primes, self._fwd)]

    def inverse(self, evals: list[np.ndarray]) -> np.ndarray:
        residues = [
            np.rint((np.asarray(e) % P).astype(np.float64) @ Fi).astype(np.int64) % P
            for P, e, Fi in zip(self.primes, evals, self._inv)
        ]
        x = residues[0]
        m = self.primes[0]
        for P, r in zip(self.primes[1:], residues[1:]):
            t = ((r - x) % P) * pow(m, -1, P) % P
            x = x + m * t
            m *= P
        return np.where(x > self.modulus // 2, x - self.modulus, x)

    @staticmethod
    def matmul(A: np.ndarray, B: np.ndarray, P: int) -> np.ndarray:
        """(A @ B) mod P for residue arrays with inner dimension <= 2048."""
        if A.shape[-1] > 2048:
            raise ValueError("inner dimension too large for exact float64 accumulation")
        return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64) % P
