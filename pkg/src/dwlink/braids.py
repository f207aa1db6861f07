"""Braid words, colored braid representations and trace-closure invariants.

Tensor products are left-normalised, ((V_1 (x) V_2) (x) V_3) (x) ..., with
the associator of Vec_G^omega acting on homogeneous vectors of degrees
(x, y, z) by omega(x, y, z)^-1.  The generator sigma_i acts as

    assoc^-1 . (id (x) c_{V_i, V_{i+1}}) . assoc,

with braiding  c(v_x (x) w) = rho(x) w (x) v_x.  Every operator is monomial in
the basis of homogeneous vectors, so a braid is evaluated by pushing index
arrays through its letters.  Many strand colourings are processed in one
batch: each basis state carries its own label and index per position.

Invariants are plain traces (blackboard framing, no framing correction).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .anyons import AnyonLabel, CategoryData, build_category
from .cyclotomic import CyclotomicInteger, ring
from .group import GroupSpec
from .monomial import MonomialOperator

__all__ = [
    "BraidWord",
    "BraidParseError",
    "LabelingError",
    "ComponentLabeling",
    "InvariantTensor",
    "BraidEngine",
    "engine",
    "parse_braidword",
    "writhe",
    "components",
    "braiding",
    "represent",
    "represent_strands",
    "closure_invariant",
    "invariant_tensor",
]

# max number of basis states pushed through the engine at once
CHUNK_STATES = 1_500_000


class BraidParseError(ValueError):
    pass


class LabelingError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for gen, sign in self.letters:
            if not 1 <= gen < self.strands:
                raise ValueError(f"generator sigma_{gen} needs more than {self.strands} strands")
            if sign not in (1, -1):
                raise ValueError(f"bad sign {sign}")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        """Concatenation; ``self`` is read first."""
        if self.strands != other.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple((g, -s) for g, s in reversed(self.letters)))

    def conjugate_by(self, other: BraidWord) -> BraidWord:
        """other^-1 . self . other (reading order)."""
        return other.inverse() * self * other

    def permutation(self) -> list[int]:
        """perm[s] = final position of the strand starting at position s."""
        pos = list(range(self.strands))
        at = list(range(self.strands))  # at[position] = strand
        for gen, _ in self.letters:
            i = gen - 1
            at[i], at[i + 1] = at[i + 1], at[i]
        for position, strand in enumerate(at):
            pos[strand] = position
        return pos

    def to_braidword(self) -> str:
        if self.strands > 3:
            raise ValueError("letter notation covers at most three strands")
        out = []
        for gen, sign in self.letters:
            ch = "a" if gen == 1 else "b"
            out.append(ch if sign > 0 else ch.upper())
        return "".join(out)

    def __str__(self):
        if not self.letters:
            return f"1 (B_{self.strands})"
        return " ".join(f"s{g}" + ("" if s > 0 else "^-1") for g, s in self.letters)


_LETTERS = {"a": (1, 1), "A": (1, -1), "b": (2, 1), "B": (2, -1)}


def parse_braidword(word: str, strands: int | None = None) -> BraidWord:
    """Letter notation: ``a``, ``b`` = sigma_1, sigma_2 and ``A``, ``B`` their inverses."""
    letters = []
    for pos, ch in enumerate(word.strip()):
        if ch not in _LETTERS:
            raise BraidParseError(f"unknown braid letter {ch!r} at position {pos} in {word!r}")
        letters.append(_LETTERS[ch])
    if strands is None:
        strands = 1 + max((g for g, _ in letters), default=0)
        strands = max(strands, 2) if letters else 1
    if any(g >= strands for g, _ in letters):
        raise BraidParseError(f"{word!r} uses a generator outside B_{strands}")
    return BraidWord(strands, tuple(letters))


def writhe(braid: BraidWord) -> int:
    return sum(s for _, s in braid.letters)


def components(braid: BraidWord) -> list[list[int]]:
    """Cycles of the braid permutation, each sorted, ordered by least strand."""
    perm = braid.permutation()
    seen = set()
    out = []
    for s in range(braid.strands):
        if s in seen:
            continue
        cyc = []
        t = s
        while t not in seen:
            seen.add(t)
            cyc.append(t)
            t = perm[t]
        out.append(sorted(cyc))
    return out


@dataclass(frozen=True)
class ComponentLabeling:
    """One anyon label per closure component; strands inherit their component's label."""

    assignment: tuple[AnyonLabel, ...]
    strand_labels: tuple[AnyonLabel, ...]

    @classmethod
    def for_braid(cls, braid: BraidWord, labels: Sequence) -> ComponentLabeling:
        comps = components(braid)
        labels = tuple(_as_label(l) for l in labels)
        if len(labels) != len(comps):
            raise LabelingError(f"braid closure has {len(comps)} components, got {len(labels)} labels")
        strands: list[AnyonLabel | None] = [None] * braid.strands
        for lab, comp in zip(labels, comps):
            for s in comp:
                strands[s] = lab
        return cls(labels, tuple(strands))

    @classmethod
    def from_strands(cls, braid: BraidWord, strand_labels: Sequence) -> ComponentLabeling:
        strand_labels = tuple(_as_label(l) for l in strand_labels)
        if len(strand_labels) != braid.strands:
            raise LabelingError("one label per strand required")
        assignment = []
        for comp in components(braid):
            labs = {strand_labels[s] for s in comp}
            if len(labs) != 1:
                raise LabelingError(f"strands {comp} form one component but carry labels {sorted(map(str, labs))}")
            assignment.append(strand_labels[comp[0]])
        return cls(tuple(assignment), strand_labels)


def _as_label(l) -> AnyonLabel:
    if isinstance(l, AnyonLabel):
        return l
    if isinstance(l, str):
        return AnyonLabel.parse(l)
    if hasattr(l, "label"):
        return l.label
    raise TypeError(f"not an anyon label: {l!r}")


class BraidEngine:
    """Batched monomial braid representation for one category."""

    def __init__(self, category: CategoryData):
        C = self.category = category
        G = C.group
        self.N = C.N
        n_any = len(C)
        self.dmax = dmax = int(C.dims.max())
        o = G.order
        self.dims = C.dims.copy()
        self.grading = np.zeros((n_any, dmax), dtype=np.int64)
        self.act_t = np.zeros((n_any, o, dmax), dtype=np.int64)
        self.act_p = np.zeros((n_any, o, dmax), dtype=np.int64)
        self.inv_t = np.zeros((n_any, o, dmax), dtype=np.int64)
        self.inv_p = np.zeros((n_any, o, dmax), dtype=np.int64)
        for a in C:
            d = a.dim
            self.grading[a.index, :d] = a.grading
            self.act_t[a.index, :, :d] = a.action_target
            self.act_p[a.index, :, :d] = a.action_phase
            for g in range(o):
                inv = a.action(g).inverse()
                self.inv_t[a.index, g, :d] = inv.target
                self.inv_p[a.index, g, :d] = inv.phase
        self.mul = G.mul_table
        self.inv = G.inv_table
        self.omega = C.cocycle.table * (self.N // C.cocycle.modulus)

    # --- state batches ---------------------------------------------------------

    def initial_states(self, strand_labels: np.ndarray):
        """All basis states of every colouring in ``strand_labels`` (shape (L, n)).

        Returns ``(owner, lab, idx)``: owning colouring per state and per-position
        label / basis-index arrays of shape (n, S), row-major within a colouring.
        """
        strand_labels = np.asarray(strand_labels, dtype=np.int64)
        L, n = strand_labels.shape
        d = self.dims[strand_labels]
        sizes = d.prod(axis=1)
        owner = np.repeat(np.arange(L), sizes)
        starts = np.concatenate(([0], np.cumsum(sizes)[:-1]))
        offset = np.arange(int(sizes.sum())) - starts[owner]
        strides = np.ones_like(d)
        for k in range(n - 2, -1, -1):
            strides[:, k] = strides[:, k + 1] * d[:, k + 1]
        lab = strand_labels[owner].T.copy()
        idx = np.empty_like(lab)
        for k in range(n):
            idx[k] = (offset // strides[owner, k]) % d[owner, k]
        return owner, lab, idx

    def run(self, letters: Iterable[tuple[int, int]], lab: np.ndarray, idx: np.ndarray):
        """Apply letters in order to state arrays; returns new (lab, idx, phase)."""
        lab = lab.copy()
        idx = idx.copy()
        phase = np.zeros(lab.shape[1], dtype=np.int64)
        mul, inv, W, grading = self.mul, self.inv, self.omega, self.grading
        for gen, sign in letters:
            p = gen - 1
            P = None
            for k in range(p):
                gk = grading[lab[k], idx[k]]
                P = gk if P is None else mul[P, gk]
            X, Y = lab[p].copy(), lab[p + 1].copy()
            ix, iy = idx[p].copy(), idx[p + 1].copy()
            gx = grading[X, ix]
            gy = grading[Y, iy]
            if sign > 0:
                new_first = self.act_t[Y, gx, iy]
                phase += self.act_p[Y, gx, iy]
                if P is not None:
                    gy2 = mul[mul[gx, gy], inv[gx]]
                    phase += W[P, gy2, gx] - W[P, gx, gy]
                idx[p] = new_first
                idx[p + 1] = ix
            else:
                new_second = self.inv_t[X, gy, ix]
                phase += self.inv_p[X, gy, ix]
                if P is not None:
                    gx2 = grading[X, new_second]
                    phase += W[P, gy, gx2] - W[P, gx, gy]
                idx[p] = iy
                idx[p + 1] = new_second
            lab[p] = Y
            lab[p + 1] = X
        return lab, idx, phase % self.N

    def _spans(self, strand_labels: np.ndarray):
        """Consecutive colouring ranges holding at most CHUNK_STATES states (or one colouring)."""
        L = strand_labels.shape[0]
        sizes = self.dims[strand_labels].prod(axis=1)
        start = 0
        while start < L:
            stop = start + 1
            total = int(sizes[start])
            while stop < L and total + sizes[stop] <= CHUNK_STATES:
                total += int(sizes[stop])
                stop += 1
            yield start, stop
            start = stop

    def _chunks(self, braid: BraidWord, strand_labels: np.ndarray):
        """Yield (start, stop, counts) with counts[l, e] = fixed states of phase e."""
        for start, stop in self._spans(strand_labels):
            owner, lab0, idx0 = self.initial_states(strand_labels[start:stop])
            lab, idx, phase = self.run(braid.letters, lab0, idx0)
            if not np.array_equal(lab, lab0):
                raise LabelingError("colouring is not constant on closure components")
            fixed = np.all(idx == idx0, axis=0)
            keys = owner[fixed] * self.N + phase[fixed]
            counts = np.bincount(keys, minlength=(stop - start) * self.N).reshape(stop - start, self.N)
            yield start, stop, counts

    def trace_counts(self, braid: BraidWord, strand_labels: np.ndarray) -> np.ndarray:
        """Closure traces as root-of-unity histograms (group-ring form), shape (L, N)."""
        strand_labels = np.asarray(strand_labels, dtype=np.int64)
        out = np.zeros((strand_labels.shape[0], self.N), dtype=np.int64)
        for start, stop, counts in self._chunks(braid, strand_labels):
            out[start:stop] = counts
        return out

    def traces(self, braid: BraidWord, strand_labels: np.ndarray) -> np.ndarray:
        """Canonical cyclotomic coefficients of the closure trace per colouring."""
        strand_labels = np.asarray(strand_labels, dtype=np.int64)
        R = ring(self.N)
        out = np.zeros((strand_labels.shape[0], R.degree), dtype=np.int64)
        for start, stop, counts in self._chunks(braid, strand_labels):
            out[start:stop] = R.reduce(counts)
        return out

    def agree(self, first: BraidWord, second: BraidWord, strand_labels: np.ndarray) -> np.ndarray:
        """Per colouring: do the two braids act by the same operator?"""
        strand_labels = np.asarray(strand_labels, dtype=np.int64)
        L = strand_labels.shape[0]
        out = np.ones(L, dtype=bool)
        for start, stop in self._spans(strand_labels):
            owner, lab0, idx0 = self.initial_states(strand_labels[start:stop])
            l1, i1, p1 = self.run(first.letters, lab0, idx0)
            l2, i2, p2 = self.run(second.letters, lab0, idx0)
            bad = np.any(l1 != l2, axis=0) | np.any(i1 != i2, axis=0) | (p1 != p2)
            out[start:stop] = np.bincount(owner[bad], minlength=stop - start) == 0
        return out

    def operator(self, braid: BraidWord, strand_labels: Sequence[int]) -> tuple[MonomialOperator, tuple[int, ...]]:
        """Monomial operator of the braid on one colouring, plus the top labels."""
        sl = np.asarray([list(strand_labels)], dtype=np.int64)
        _, lab0, idx0 = self.initial_states(sl)
        lab, idx, phase = self.run(braid.letters, lab0, idx0)
        top = tuple(int(v) for v in lab[:, 0]) if lab.shape[1] else tuple(int(v) for v in sl[0])
        d = self.dims[list(top)]
        flat = np.zeros(idx.shape[1], dtype=np.int64)
        for k in range(braid.strands):
            flat = flat * d[k] + idx[k]
        return MonomialOperator(flat, phase, self.N), top


@lru_cache(maxsize=None)
def engine(u: int, spec: GroupSpec | None = None) -> BraidEngine:
    return BraidEngine(build_category(u, spec))


def braiding(u: int, x, y, sign: int = 1, spec: GroupSpec | None = None) -> MonomialOperator:
    """c_{x,y}: V_x (x) V_y -> V_y (x) V_x (sign +1), or c_{y,x}^-1 (sign -1)."""
    E = engine(u, spec)
    C = E.category
    op, _ = E.operator(BraidWord(2, ((1, 1 if sign > 0 else -1),)), [C.index(x), C.index(y)])
    return op


def represent_strands(u: int, braid: BraidWord, strand_labels: Sequence, spec: GroupSpec | None = None):
    """Operator for an arbitrary strand colouring; returns (operator, top labels)."""
    E = engine(u, spec)
    C = E.category
    op, top = E.operator(braid, [C.index(l) for l in strand_labels])
    return op, tuple(C[t].label for t in top)


def represent(u: int, braid: BraidWord, labeling, spec: GroupSpec | None = None) -> MonomialOperator:
    if not isinstance(labeling, ComponentLabeling):
        labeling = ComponentLabeling.for_braid(braid, labeling)
    else:
        ComponentLabeling.from_strands(braid, labeling.strand_labels)
    op, _ = represent_strands(u, braid, labeling.strand_labels, spec)
    return op


def closure_invariant(u: int, braid: BraidWord, labeling, spec: GroupSpec | None = None) -> CyclotomicInteger:
    if not isinstance(labeling, ComponentLabeling):
        labeling = ComponentLabeling.for_braid(braid, labeling)
    else:
        ComponentLabeling.from_strands(braid, labeling.strand_labels)
    E = engine(u, spec)
    C = E.category
    coeffs = E.traces(braid, [[C.index(l) for l in labeling.strand_labels]])
    return CyclotomicInteger(ring(E.N), coeffs[0])


@dataclass(eq=False)
class InvariantTensor:
    """Link invariant indexed by one anyon per component.

    ``coeffs[l_1, ..., l_c]`` holds canonical cyclotomic coefficients.
    """

    link: str
    u: int
    writhe: int
    coeffs: np.ndarray
    N: int

    @property
    def order(self) -> int:
        return self.coeffs.ndim - 1

    @property
    def shape(self) -> tuple[int, ...]:
        return self.coeffs.shape[:-1]

    def __getitem__(self, labels) -> CyclotomicInteger:
        if not isinstance(labels, tuple):
            labels = (labels,)
        return CyclotomicInteger(ring(self.N), self.coeffs[labels])

    @cached_property
    def value_ids(self) -> tuple[np.ndarray, np.ndarray]:
        """(ids, values): entry ids into a table of distinct coefficient rows."""
        flat = self.coeffs.reshape(-1, self.coeffs.shape[-1])
        values, ids = np.unique(flat, axis=0, return_inverse=True)
        return ids.reshape(self.shape), values

    def approx(self) -> np.ndarray:
        return ring(self.N).approx(self.coeffs)


def invariant_tensor(u: int, record, spec: GroupSpec | None = None) -> InvariantTensor:
    """Invariant of every labelling of the closure of ``record.braid``.

    ``record`` is anything with ``braid`` (a BraidWord) and ``id`` attributes,
    or a bare BraidWord.
    """
    braid = record if isinstance(record, BraidWord) else record.braid
    link_id = getattr(record, "id", str(braid))
    comps = components(braid)
    c = len(comps)
    if c > 3:
        raise ValueError(f"{link_id}: {c} components; at most 3 are supported")
    E = engine(u, spec)
    n_any = len(E.category)
    strand_of = np.empty(braid.strands, dtype=np.int64)
    for ci, comp in enumerate(comps):
        strand_of[comp] = ci
    combos = np.array(list(product(range(n_any), repeat=c)), dtype=np.int64).reshape(-1, c)
    strand_labels = combos[:, strand_of]
    coeffs = E.traces(braid, strand_labels)
    return InvariantTensor(
        link=link_id,
        u=u,
        writhe=writhe(braid),
        coeffs=coeffs.reshape((n_any,) * c + (coeffs.shape[-1],)),
        N=E.N,
    )
