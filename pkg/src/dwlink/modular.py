"""Modular data, Verlinde fusion and modular permutations.

S-matrices are kept unnormalised: S~_ab is the Hopf-link closure invariant
(braid ``aa``) with components labelled a, b, so S~_{unit,a} = d_a and
S~ conj(S~)^T = D^2 I with D^2 = sum d_a^2.

A modular permutation from u_i to u_j is a bijection rho from the labels of
the u_i category to those of the u_j category with

    T^(j)[rho a] = T^(i)[a],   S~^(j)[rho a, rho b] = S~^(i)[a, b].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterator

import numpy as np

from .anyons import build_category
from .braids import engine, parse_braidword, InvariantTensor, invariant_tensor
from .cyclotomic import CyclotomicInteger, GroupRingDFT, ring
from .group import GroupSpec

__all__ = [
    "ModularData",
    "ModularPermutation",
    "FusionError",
    "compute_modular_data",
    "unitarity_defect",
    "verlinde_fusion",
    "fusion_blocks",
    "shared_value_ids",
    "TRespectingEnumeration",
    "enumerate_T_respecting",
    "modular_permutations",
    "backtrack_modular_permutations",
    "modular_data_equal_as_sets",
    "w_matrix",
    "HOPF_WORD",
    "WHITEHEAD_WORD",
]

HOPF_WORD = "aa"
WHITEHEAD_WORD = "AAbAb"


class FusionError(ArithmeticError):
    """A Verlinde multiplicity came out non-integral or negative."""


@dataclass(eq=False)
class ModularData:
    u: int
    names: list[str]
    dims: np.ndarray
    twists: np.ndarray  # exponents of zeta_N
    S_counts: np.ndarray  # (n, n, N) root-of-unity histograms of S~
    N: int

    @property
    def rank(self) -> int:
        return len(self.names)

    @cached_property
    def S(self) -> np.ndarray:
        """Canonical cyclotomic coefficients of S~, shape (n, n, phi(N))."""
        return ring(self.N).reduce(self.S_counts)

    def S_entry(self, a: int, b: int) -> CyclotomicInteger:
        return CyclotomicInteger(ring(self.N), self.S[a, b])

    @property
    def global_dim_sq(self) -> int:
        return int((self.dims**2).sum())

    def index(self, name: str) -> int:
        return self.names.index(name)

    def fingerprints(self) -> list[tuple[int, int]]:
        return [(int(d), int(t)) for d, t in zip(self.dims, self.twists)]


@lru_cache(maxsize=None)
def compute_modular_data(u: int, spec: GroupSpec | None = None) -> ModularData:
    E = engine(u, spec)
    C = E.category
    n = len(C)
    pairs = np.array([(a, b) for a in range(n) for b in range(n)], dtype=np.int64)
    counts = E.trace_counts(parse_braidword(HOPF_WORD), pairs).reshape(n, n, E.N)
    return ModularData(u=u, names=list(C.names), dims=C.dims.copy(), twists=C.twists.copy(), S_counts=counts, N=E.N)


def unitarity_defect(md: ModularData) -> np.ndarray:
    """Canonical coefficients of S~ conj(S~)^T - D^2 I; all zero iff unitary up to D^2."""
    R = ring(md.N)
    dft = GroupRingDFT(md.N)
    A = dft.forward(md.S_counts)
    B = dft.forward(R.conj_counts(md.S_counts))
    prods = []
    for P, ea, eb in zip(dft.primes, A, B):
        # out[a, b, k] = sum_x ea[a, x, k] * eb[b, x, k]
        out = np.empty_like(ea)
        for k in range(md.N):
            out[:, :, k] = dft.matmul(ea[:, :, k], eb[:, :, k].T, P)
        prods.append(out)
    coeffs = R.reduce(dft.inverse(prods))
    coeffs[..., 0] -= md.global_dim_sq * np.eye(md.rank, dtype=np.int64)
    return coeffs


def verlinde_fusion(md: ModularData) -> np.ndarray:
    """N[a, b, c] = (1/D^2) sum_x S~_ax S~_bx conj(S~_cx) / d_x, evaluated exactly.

    D is an integer here and every d_x divides it, so the sum is scaled by
    D/d_x to stay in the group ring, then divided by D^3 at the end.
    """
    R = ring(md.N)
    D = math.isqrt(md.global_dim_sq)
    if D * D != md.global_dim_sq or np.any(D % md.dims):
        raise FusionError("integral scaling needs D integral and divisible by every dimension")
    scale = D // md.dims
    dft = GroupRingDFT(md.N)
    A = dft.forward(md.S_counts)
    Cc = dft.forward(R.conj_counts(md.S_counts) * scale[None, :, None])
    n = md.rank
    out = np.zeros((n, n, n), dtype=np.int64)
    denom = D**3
    for a in range(n):
        per_prime = []
        for P, ea, ec in zip(dft.primes, A, Cc):
            res = np.empty((n, n, md.N), dtype=np.int64)
            for k in range(md.N):
                left = (ea[a, :, k][None, :] * ea[:, :, k]) % P  # (b, x)
                res[:, :, k] = dft.matmul(left, ec[:, :, k].T, P)
            per_prime.append(res)
        coeffs = R.reduce(dft.inverse(per_prime))
        if np.any(coeffs[..., 1:]):
            raise FusionError(f"irrational fusion multiplicity in row {md.names[a]}")
        vals = coeffs[..., 0]
        if np.any(vals % denom) or np.any(vals < 0):
            raise FusionError(f"non-integral or negative fusion multiplicity in row {md.names[a]}")
        out[a] = vals // denom
    return out


def fusion_blocks(fusion: np.ndarray, dims: np.ndarray) -> list[list[int]]:
    """Orbits of labels under fusion with invertible (dimension one) labels."""
    n = fusion.shape[0]
    invertible = [g for g in range(n) if dims[g] == 1]
    seen: set[int] = set()
    blocks = []
    for a in range(n):
        if a in seen:
            continue
        orbit = sorted({int(c) for g in invertible for c in np.nonzero(fusion[g, a])[0]} | {a})
        seen.update(orbit)
        blocks.append(orbit)
    return blocks


@lru_cache(maxsize=None)
def _fusion(u: int, spec: GroupSpec | None = None) -> np.ndarray:
    return verlinde_fusion(compute_modular_data(u, spec))


def shared_value_ids(*arrays: np.ndarray) -> list[np.ndarray]:
    """Integer ids for the coefficient rows of several tensors, over one common table."""
    flat = [a.reshape(-1, a.shape[-1]) for a in arrays]
    _, ids = np.unique(np.concatenate(flat), axis=0, return_inverse=True)
    ids = ids.ravel()
    out, start = [], 0
    for a, f in zip(arrays, flat):
        out.append(ids[start : start + len(f)].reshape(a.shape[:-1]))
        start += len(f)
    return out


@dataclass(frozen=True)
class ModularPermutation:
    source: int
    target: int
    images: tuple[int, ...]  # images[a] = label index of rho(a) in the target category
    names: tuple[str, ...] = field(repr=False, compare=False, default=())

    def __call__(self, a: int) -> int:
        return self.images[a]

    def as_names(self) -> dict[str, str]:
        return {self.names[a]: self.names[b] for a, b in enumerate(self.images)}

    def is_identity(self) -> bool:
        return self.images == tuple(range(len(self.images)))


class TRespectingEnumeration:
    """Block-structured enumeration of T-respecting bijections u_i -> u_j.

    Invertible labels and labels in singleton fusion blocks are grouped by
    (d, theta); each group maps onto the matching group of the target in
    every possible way.  The remaining fusion blocks move as wholes onto target blocks with the same twist
    multiset, the map inside a block being forced by the twists.  The unit
    is fixed.  Candidates are indexed by a mixed-radix integer.
    """

    def __init__(self, ui: int, uj: int, spec: GroupSpec | None = None):
        mi, mj = compute_modular_data(ui, spec), compute_modular_data(uj, spec)
        self.ui, self.uj, self.n = ui, uj, mi.rank
        bi = fusion_blocks(_fusion(ui, spec), mi.dims)
        bj = fusion_blocks(_fusion(uj, spec), mj.dims)
        fp_i, fp_j = mi.fingerprints(), mj.fingerprints()
        unit = 0
        self.fixed = [(unit, unit)]
        # each factor: list of (sources, targets) partial maps
        self.factors: list[list[tuple[np.ndarray, np.ndarray]]] = []

        def groups(blocks, fp):
            g: dict[tuple[int, int], list[int]] = {}
            for blk in blocks:
                if len(blk) == 1 or unit in blk:
                    for a in blk:
                        if a != unit:
                            g.setdefault(fp[a], []).append(a)
            return g

        gi, gj = groups(bi, fp_i), groups(bj, fp_j)
        if {k: len(v) for k, v in gi.items()} != {k: len(v) for k, v in gj.items()}:
            self.factors.append([])
        for key in sorted(gi):
            src = np.array(gi[key])
            tgt = gj.get(key, [])
            self.factors.append([(src, np.array(p)) for p in permutations(tgt)] if len(tgt) == len(src) else [])

        def big(blocks, fp):
            return [blk for blk in blocks if len(blk) > 1 and unit not in blk]

        def by_multiset(blocks, fp):
            g: dict[tuple, list[list[int]]] = {}
            for blk in blocks:
                tw = tuple(sorted(fp[a] for a in blk))
                if len(set(tw)) != len(tw):
                    raise ValueError("twists inside a fusion block are not distinct")
                g.setdefault(tw, []).append(blk)
            return g

        Bi, Bj = by_multiset(big(bi, fp_i), fp_i), by_multiset(big(bj, fp_j), fp_j)
        for tw in sorted(Bi):
            src_blocks, tgt_blocks = Bi[tw], Bj.get(tw, [])
            options = []
            if len(tgt_blocks) == len(src_blocks):
                src = np.concatenate(src_blocks)
                for perm in permutations(tgt_blocks):
                    tgt = []
                    for sb, tb in zip(src_blocks, perm):
                        by_fp = {fp_j[x]: x for x in tb}
                        tgt.extend(by_fp[fp_i[x]] for x in sb)
                    options.append((src, np.array(tgt)))
            self.factors.append(options)
        if sorted(Bi) != sorted(Bj):
            self.factors.append([])
        self.radices = [len(f) for f in self.factors]

    @property
    def count(self) -> int:
        return math.prod(self.radices)

    def decode(self, indices: np.ndarray) -> np.ndarray:
        """Candidate bijections for the given mixed-radix indices, shape (K, n)."""
        indices = np.asarray(indices, dtype=np.int64)
        out = np.full((indices.size, self.n), -1, dtype=np.int64)
        for s, t in self.fixed:
            out[:, s] = t
        rest = indices.copy()
        for f, r in zip(self.factors, self.radices):
            choice = rest % r
            rest //= r
            for c, (src, tgt) in enumerate(f):
                sel = choice == c
                if sel.any():
                    out[np.ix_(sel, src)] = tgt
        return out

    def batches(self, size: int = 200_000) -> Iterator[np.ndarray]:
        total = self.count
        for start in range(0, total, size):
            yield self.decode(np.arange(start, min(total, start + size)))


def enumerate_T_respecting(ui: int, uj: int, spec: GroupSpec | None = None) -> TRespectingEnumeration:
    return TRespectingEnumeration(ui, uj, spec)


def _s_ids(ui: int, uj: int, spec: GroupSpec | None):
    mi, mj = compute_modular_data(ui, spec), compute_modular_data(uj, spec)
    return shared_value_ids(mi.S, mj.S)


@lru_cache(maxsize=None)
def _modular_permutations(ui: int, uj: int, spec: GroupSpec | None) -> tuple[ModularPermutation, ...]:
    Si, Sj = _s_ids(ui, uj, spec)
    enum = enumerate_T_respecting(ui, uj, spec)
    n = enum.n
    rng = np.random.default_rng(0)
    probe = rng.integers(0, n, size=(256, 2))
    found = []
    for rho in enum.batches():
        # cheap probe on a few entries, then the full check on survivors
        ok = np.all(Sj[rho[:, probe[:, 0]], rho[:, probe[:, 1]]] == Si[probe[:, 0], probe[:, 1]], axis=1)
        for r in rho[ok]:
            if np.array_equal(Sj[np.ix_(r, r)], Si):
                found.append(tuple(int(x) for x in r))
    names = tuple(compute_modular_data(ui, spec).names)
    return tuple(ModularPermutation(ui, uj, img, names) for img in sorted(found))


def modular_permutations(ui: int, uj: int, spec: GroupSpec | None = None) -> list[ModularPermutation]:
    """Every T-respecting candidate that also transports S~, sorted by images."""
    return list(_modular_permutations(ui, uj, spec))


def backtrack_modular_permutations(ui: int, uj: int, spec: GroupSpec | None = None) -> list[ModularPermutation]:
    """Independent search over (d, theta)-preserving bijections with row-fingerprint refinement.

    No fusion data is used: a label may go to any target label with the same
    dimension, twist and sorted S-row, and each assignment must agree with all
    earlier ones on S~.
    """
    mi, mj = compute_modular_data(ui, spec), compute_modular_data(uj, spec)
    Si, Sj = shared_value_ids(mi.S, mj.S)
    n = mi.rank
    row_i = [tuple(sorted(Si[a])) for a in range(n)]
    row_j = [tuple(sorted(Sj[b])) for b in range(n)]
    fi, fj = mi.fingerprints(), mj.fingerprints()
    cands = [[b for b in range(n) if fj[b] == fi[a] and row_j[b] == row_i[a]] for a in range(n)]
    order = sorted(range(n), key=lambda a: (len(cands[a]), a))
    images = [-1] * n
    taken = [False] * n
    results = []

    def extend(depth: int):
        if depth == n:
            results.append(tuple(images))
            return
        a = order[depth]
        done = order[:depth]
        for b in cands[a]:
            if taken[b] or Sj[b, b] != Si[a, a]:
                continue
            if any(Sj[b, images[c]] != Si[a, c] for c in done):
                continue
            images[a] = b
            taken[b] = True
            extend(depth + 1)
            taken[b] = False
            images[a] = -1

    extend(0)
    names = tuple(mi.names)
    return [ModularPermutation(ui, uj, img, names) for img in sorted(results)]


def modular_data_equal_as_sets(ui: int, uj: int, spec: GroupSpec | None = None) -> bool:
    """True iff at least one modular permutation u_i -> u_j exists."""
    if ui == uj:
        return True
    mi, mj = compute_modular_data(ui, spec), compute_modular_data(uj, spec)
    if sorted(mi.fingerprints()) != sorted(mj.fingerprints()):
        return False
    return bool(backtrack_modular_permutations(ui, uj, spec))


@dataclass(eq=False)
class WMatrix:
    """Framing-normalised Whitehead matrix W_ab = (theta_a / theta_b) W~_ab."""

    u: int
    raw: InvariantTensor
    coeffs: np.ndarray
    N: int

    def __getitem__(self, ab) -> CyclotomicInteger:
        return CyclotomicInteger(ring(self.N), self.coeffs[ab])


def w_matrix(u: int, spec: GroupSpec | None = None) -> WMatrix:
    raw = invariant_tensor(u, parse_braidword(WHITEHEAD_WORD), spec)
    C = build_category(u, spec)
    R = ring(C.N)
    counts = R.to_counts(raw.coeffs)  # (n, n, N)
    shift = (C.twists[:, None] - C.twists[None, :]) % C.N
    idx = (np.arange(C.N)[None, None, :] - shift[:, :, None]) % C.N
    rolled = np.take_along_axis(counts, idx, axis=-1)
    return WMatrix(u=u, raw=raw, coeffs=R.reduce(rolled), N=C.N)
