"""Generalized permutation matrices with root-of-unity entries.

A :class:`MonomialOperator` sends basis vector ``e_s`` to
``zeta_N^phase[s] * e_target[s]``.  Composition, inversion, tensor products
and traces are exact index/exponent manipulations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclotomic import DEFAULT_N, CyclotomicInteger, ring

__all__ = ["MonomialOperator"]


@dataclass(frozen=True, eq=False)
class MonomialOperator:
    target: np.ndarray
    phase: np.ndarray
    N: int = DEFAULT_N

    def __post_init__(self):
        t = np.asarray(self.target, dtype=np.int64)
        ph = np.asarray(self.phase, dtype=np.int64) % self.N
        if t.shape != ph.shape or t.ndim != 1:
            raise ValueError("target and phase must be 1-d arrays of equal length")
        if t.size and not np.array_equal(np.sort(t), np.arange(t.size)):
            raise ValueError("target is not a bijection")
        object.__setattr__(self, "target", t)
        object.__setattr__(self, "phase", ph)

    @property
    def dim(self) -> int:
        return int(self.target.size)

    @classmethod
    def identity(cls, dim: int, N: int = DEFAULT_N) -> MonomialOperator:
        return cls(np.arange(dim), np.zeros(dim, dtype=np.int64), N)

    @classmethod
    def scalar(cls, dim: int, e: int, N: int = DEFAULT_N) -> MonomialOperator:
        return cls(np.arange(dim), np.full(dim, e, dtype=np.int64), N)

    def _check(self, other: MonomialOperator):
        if other.N != self.N or other.dim != self.dim:
            raise ValueError("incompatible monomial operators")

    def __matmul__(self, other: MonomialOperator) -> MonomialOperator:
        """``self @ other`` applies ``other`` first."""
        self._check(other)
        return MonomialOperator(self.target[other.target], other.phase + self.phase[other.target], self.N)

    def then(self, other: MonomialOperator) -> MonomialOperator:
        return other @ self

    def inverse(self) -> MonomialOperator:
        t = np.empty_like(self.target)
        t[self.target] = np.arange(self.dim)
        ph = np.empty_like(self.phase)
        ph[self.target] = -self.phase
        return MonomialOperator(t, ph, self.N)

    def times_phase(self, e) -> MonomialOperator:
        """Multiply each column by zeta^e (scalar or per-source array)."""
        return MonomialOperator(self.target, self.phase + np.asarray(e, dtype=np.int64), self.N)

    def kron(self, other: MonomialOperator) -> MonomialOperator:
        """Tensor product, basis index ``i * other.dim + j``."""
        if other.N != self.N:
            raise ValueError("incompatible root-of-unity orders")
        t = (self.target[:, None] * other.dim + other.target[None, :]).ravel()
        ph = (self.phase[:, None] + other.phase[None, :]).ravel()
        return MonomialOperator(t, ph, self.N)

    def __eq__(self, other):
        if not isinstance(other, MonomialOperator):
            return NotImplemented
        return (
            self.N == other.N
            and np.array_equal(self.target, other.target)
            and np.array_equal(self.phase, other.phase)
        )

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.target, np.arange(self.dim)) and not self.phase.any())

    def trace(self) -> CyclotomicInteger:
        fixed = self.target == np.arange(self.dim)
        return ring(self.N).from_exponents(self.phase[fixed])

    def to_dense(self) -> np.ndarray:
        m = np.zeros((self.dim, self.dim), dtype=complex)
        m[self.target, np.arange(self.dim)] = np.exp(2j * np.pi * self.phase / self.N)
        return m

    def __repr__(self):
        return f"MonomialOperator(dim={self.dim}, N={self.N})"
