"""Simple objects of the twisted Drinfeld center Z(Vec_G^omega).

A simple object is a pair (conjugacy class [r], projective irrep pi of the
centralizer C(r)) with  pi(h) pi(l) = beta_r(h, l) pi(hl).  Its underlying
space is  V = sum over x in [r] of V_x,  V_x a copy of the irrep space, and a
group element g acts by

    rho(g) [x, v] = tau_r(g, t_x) / tau_r(t_y, h) * [y, pi(h) v],

with y = g x g^-1, t_x a fixed coset representative (t_x r t_x^-1 = x) and
h = t_y^-1 g t_x in C(r).  Every such rho(g) is monomial.

Labels follow the basis order  I_r, A_{1,i}, A_{2,i}, B_{1,s}, ..., B_{p-1,s}:

* ``I_r`` (r < p): the character b -> exp(2 pi i r / p) inflated to G.
* ``I_{p+c-1}``: induced from the <a>-character a -> exp(2 pi i m_c / q),
  where a^{m_c} is the c-th class representative among powers of a.
* ``A_{c,i}``: class of a^{m_c}, character a -> exp(2 pi i i / q).
* ``B_{k,s}``: class of b^k, the projective character whose twist is
  exp(2 pi i (p k s + k^2 u) / p^2).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import lcm
from typing import NamedTuple

import numpy as np

from .cocycle import ThreeCocycle, default_group
from .group import ConjugacyClass, GroupElement, GroupSpec, MetacyclicGroup
from .monomial import MonomialOperator

__all__ = [
    "AnyonLabel",
    "Anyon",
    "CategoryData",
    "build_category",
    "twist",
    "qdim",
    "double_action",
    "root_order",
    "ProjectivityError",
    "reference_twist",
]


class ProjectivityError(RuntimeError):
    """The projective irrep equations have no solution under our normalisation."""


def root_order(spec: GroupSpec) -> int:
    """Order N of the root of unity carrying every scalar in the category."""
    return lcm(spec.q, spec.p**2)


_LABEL_RE = re.compile(r"^\s*([IAB])[_\s]*(\d+)(?:[_,\s]+(\d+))?\s*$")


class AnyonLabel(NamedTuple):
    kind: str
    first: int
    second: int | None = None

    @property
    def name(self) -> str:
        if self.kind == "I":
            return f"I_{self.first}"
        return f"{self.kind}_{self.first}_{self.second}"

    def __str__(self):
        return self.name

    @classmethod
    def parse(cls, text: str) -> AnyonLabel:
        """Accepts ``I_5``, ``A_1_3``, ``B_2,0``, ``B2 0`` and similar."""
        m = _LABEL_RE.match(text)
        if not m:
            raise ValueError(f"cannot parse anyon label {text!r}")
        kind, a, b = m.group(1), int(m.group(2)), m.group(3)
        if kind == "I":
            if b is not None:
                raise ValueError(f"I-labels take one index: {text!r}")
            return cls("I", a)
        if b is None:
            raise ValueError(f"{kind}-labels take two indices: {text!r}")
        return cls(kind, a, int(b))


@dataclass(eq=False)
class Anyon:
    label: AnyonLabel
    index: int
    conj_class: ConjugacyClass
    centralizer: tuple[GroupElement, ...]
    irrep: dict[GroupElement, MonomialOperator]
    coset_reps: tuple[GroupElement, ...]
    twist: int
    N: int
    # action_target[g, s], action_phase[g, s] over group codes g
    action_target: np.ndarray = field(repr=False)
    action_phase: np.ndarray = field(repr=False)
    grading: np.ndarray = field(repr=False)

    @property
    def name(self) -> str:
        return self.label.name

    @property
    def irrep_dim(self) -> int:
        return next(iter(self.irrep.values())).dim

    @property
    def qdim(self) -> int:
        return len(self.conj_class) * self.irrep_dim

    @property
    def dim(self) -> int:
        return self.qdim

    def action(self, code: int) -> MonomialOperator:
        return MonomialOperator(self.action_target[code], self.action_phase[code], self.N)


def _solve_projective_characters(w: ThreeCocycle, r: GroupElement, gen: GroupElement, N: int) -> list[list[int]]:
    """All 1-dim beta_r-projective reps of the cyclic group <gen>.

    Returns exponent lists ``e[j]`` (mod N) with pi(gen^j) = zeta_N^e[j].
    """
    G = w.group
    scale = N // w.modulus
    order = 1
    x = gen
    while x != G.identity:
        x = G.multiply(x, gen)
        order += 1
    powers = [G.power(gen, j) for j in range(order)]
    b = {(i, j): w.beta(r, powers[i], powers[j]) * scale for i in range(order) for j in range(order)}
    solutions = []
    for x in range(N):
        e = [0] * order
        for j in range(1, order):
            # pi(gen) pi(gen^(j-1)) = beta(gen, gen^(j-1)) pi(gen^j)
            e[j] = (x + e[j - 1] - b[1, j - 1]) % N
        ok = all(
            (e[i] + e[j] - b[i, j] - e[(i + j) % order]) % N == 0 for i in range(order) for j in range(order)
        )
        if ok:
            solutions.append(e)
    return solutions


def _induced_from_a(G: MetacyclicGroup, m: int, N: int) -> dict[GroupElement, MonomialOperator]:
    """G-irrep induced from the <a>-character a -> zeta_q^m, basis b^j."""
    scale = N // G.q
    binv = G.inverse(G.b)
    reps = [G.power(G.b, j) for j in range(G.p)]
    out = {}
    for g in G.elements():
        tgt = np.empty(G.p, dtype=np.int64)
        ph = np.empty(G.p, dtype=np.int64)
        for j, t in enumerate(reps):
            gt = G.multiply(g, t)
            jj = gt.j
            h = G.multiply(G.power(binv, jj), gt)
            assert h.j == 0
            tgt[j] = jj
            ph[j] = m * h.i * scale
        out[g] = MonomialOperator(tgt, ph, N)
    return out


class CategoryData:
    """The 49 (in general) simple objects for one cocycle parameter u."""

    def __init__(self, u: int, spec: GroupSpec | None = None):
        spec = spec or GroupSpec()
        self.spec = spec
        self.group = G = default_group(spec)
        self.u = u
        self.cocycle = ThreeCocycle(G, u)
        self.N = N = root_order(spec)
        self.anyons: list[Anyon] = []
        classes = G.conjugacy_classes()
        a_classes = [c for c in classes if c.representative.j == 0 and c.representative.i != 0]
        b_classes = [c for c in classes if c.representative.j != 0]
        unit_class = classes[0]
        p, q = G.p, G.q
        zp, zq = N // p, N // q

        centralizer_G = tuple(G.elements())
        for r in range(p):
            irrep = {g: MonomialOperator.scalar(1, r * g.j * zp, N) for g in centralizer_G}
            self._add(AnyonLabel("I", r), unit_class, irrep)
        for c, cls in enumerate(a_classes):
            irrep = _induced_from_a(G, cls.representative.i, N)
            self._add(AnyonLabel("I", p + c), unit_class, irrep)
        for c, cls in enumerate(a_classes, start=1):
            cent = G.centralizer(cls.representative)
            for i in range(q):
                # beta vanishes on <a>; asserted by _add's projectivity check
                irrep = {h: MonomialOperator.scalar(1, i * h.i * zq, N) for h in cent}
                self._add(AnyonLabel("A", c, i), cls, irrep)
        for cls in b_classes:
            rep = cls.representative
            k = rep.j
            cent = G.centralizer(rep)
            sols = _solve_projective_characters(self.cocycle, rep, G.b, N)
            if len(sols) != p:
                raise ProjectivityError(f"expected {p} projective characters for [b^{k}], found {len(sols)}")
            by_s = {}
            for e in sols:
                tw = e[k]
                # twist = zeta_{p^2}^(p k s + k^2 u)
                if tw % (N // p**2):
                    raise ProjectivityError("twist is not a p^2-th root of unity")
                t25 = (tw // (N // p**2)) % p**2
                rest = (t25 - k * k * u) % p**2
                if rest % p:
                    raise ProjectivityError(f"twist exponent {t25} of [b^{k}] does not match the u={u} family")
                s = (rest // p) * pow(k, -1, p) % p
                by_s[s] = e
            if sorted(by_s) != list(range(p)):
                raise ProjectivityError(f"projective characters of [b^{k}] do not cover all s")
            for s in range(p):
                e = by_s[s]
                irrep = {h: MonomialOperator.scalar(1, e[h.j], N) for h in cent}
                self._add(AnyonLabel("B", k, s), cls, irrep)
        self._by_label = {a.label: a for a in self.anyons}
        self._by_name = {a.name: a for a in self.anyons}

    def _add(self, label: AnyonLabel, cls: ConjugacyClass, irrep: dict[GroupElement, MonomialOperator]):
        G, w, N = self.group, self.cocycle, self.N
        scale = N // w.modulus
        r = cls.representative
        cent = tuple(sorted(irrep, key=lambda e: (e.j, e.i)))
        for h in cent:
            for l in cent:
                lhs = irrep[h] @ irrep[l]
                rhs = irrep[G.multiply(h, l)].times_phase(w.beta(r, h, l) * scale)
                if lhs != rhs:
                    raise ProjectivityError(f"{label.name}: pi({h}) pi({l}) != beta pi(hl)")
        els = G.elements()
        coset = []
        for x in cls.members:
            coset.append(next(g for g in els if G.conjugate(g, r) == x))
        pos = {x: n for n, x in enumerate(cls.members)}
        m = next(iter(irrep.values())).dim
        dim = len(cls.members) * m
        tau = w.transgression_table
        tgt = np.empty((G.order, dim), dtype=np.int64)
        ph = np.empty((G.order, dim), dtype=np.int64)
        rc = G.code(r)
        for g in els:
            gc = G.code(g)
            for xi, x in enumerate(cls.members):
                y = G.conjugate(g, x)
                yi = pos[y]
                t_x, t_y = coset[xi], coset[yi]
                h = G.multiply(G.multiply(G.inverse(t_y), g), t_x)
                pi_h = irrep[h]
                corr = int(tau[rc, gc, G.code(t_x)]) - int(tau[rc, G.code(t_y), G.code(h)])
                sl = slice(xi * m, xi * m + m)
                tgt[gc, sl] = yi * m + pi_h.target
                ph[gc, sl] = (pi_h.phase + corr * scale) % N
        rep_op = irrep[r]
        if not (np.array_equal(rep_op.target, np.arange(m)) and np.all(rep_op.phase == rep_op.phase[0])):
            raise ProjectivityError(f"{label.name}: representative does not act by a scalar")
        grading = np.repeat([G.code(x) for x in cls.members], m).astype(np.int64)
        for arr in (tgt, ph, grading):
            arr.setflags(write=False)
        self.anyons.append(
            Anyon(
                label=label,
                index=len(self.anyons),
                conj_class=cls,
                centralizer=cent,
                irrep=irrep,
                coset_reps=tuple(coset),
                twist=int(rep_op.phase[0]),
                N=N,
                action_target=tgt,
                action_phase=ph,
                grading=grading,
            )
        )

    def __len__(self):
        return len(self.anyons)

    def __iter__(self):
        return iter(self.anyons)

    def __getitem__(self, key) -> Anyon:
        if isinstance(key, (int, np.integer)):
            return self.anyons[key]
        if isinstance(key, AnyonLabel):
            return self._by_label[key]
        if isinstance(key, Anyon):
            return key
        if isinstance(key, str):
            return self._by_label[AnyonLabel.parse(key)]
        raise KeyError(key)

    def index(self, key) -> int:
        return self[key].index

    @cached_property
    def labels(self) -> list[AnyonLabel]:
        return [a.label for a in self.anyons]

    @cached_property
    def names(self) -> list[str]:
        return [a.name for a in self.anyons]

    @cached_property
    def dims(self) -> np.ndarray:
        return np.array([a.qdim for a in self.anyons], dtype=np.int64)

    @cached_property
    def twists(self) -> np.ndarray:
        """Twist exponents mod N."""
        return np.array([a.twist for a in self.anyons], dtype=np.int64)

    def kinds(self, kind: str) -> list[int]:
        return [a.index for a in self.anyons if a.label.kind == kind]

    def action_defect(self, anyon) -> int:
        """Count of (g, h, basis) triples violating rho(g) rho(h) = tau rho(gh)."""
        a = self[anyon]
        G = self.group
        scale = self.N // self.cocycle.modulus
        tau = self.cocycle.transgression_table
        bad = 0
        for g in range(G.order):
            for h in range(G.order):
                lhs = a.action(g) @ a.action(h)
                gh = int(G.mul_table[g, h])
                rhs = a.action(gh).times_phase(tau[a.grading, g, h] * scale)
                bad += int(np.count_nonzero((lhs.target != rhs.target) | (lhs.phase != rhs.phase)))
        return bad


@lru_cache(maxsize=None)
def build_category(u: int, spec: GroupSpec | None = None) -> CategoryData:
    spec = spec or GroupSpec()
    if not 0 <= u < spec.p:
        raise ValueError(f"u={u} outside [0, {spec.p})")
    return CategoryData(u, spec)


def twist(label, u: int, spec: GroupSpec | None = None) -> int:
    return build_category(u, spec)[label].twist


def qdim(label, spec: GroupSpec | None = None) -> int:
    return build_category(0, spec)[label].qdim


def double_action(u: int, g: GroupElement, anyon, spec: GroupSpec | None = None) -> MonomialOperator:
    C = build_category(u, spec)
    return C[anyon].action(C.group.code(g))


def reference_twist(label, u: int, spec: GroupSpec | None = None) -> int:
    """Closed-form twist exponent (mod N): I trivial, A_{c,i} -> c i / q, B_{k,s} -> (p k s + k^2 u) / p^2."""
    spec = spec or GroupSpec()
    lab = label if isinstance(label, AnyonLabel) else AnyonLabel.parse(str(label))
    N = root_order(spec)
    q, p = spec.q, spec.p
    if lab.kind == "I":
        return 0
    if lab.kind == "A":
        return (lab.first * lab.second * (N // q)) % N
    k, s = lab.first, lab.second
    return ((p * k * s + k * k * u) * (N // (p * p))) % N
