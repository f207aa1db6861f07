"""3-cocycles on G inflated from Z_p, and their transgressions.

All phases are integer exponents of exp(2 pi i / p^2).  The cocycle with
parameter u is

    omega_u(x, y, z) = exp(2 pi i u j_x (j_y + j_z - [j_y + j_z]_p) / p^2),

i.e. exponent ``u * p * j_x * carry(j_y, j_z)``, where j is the b-exponent.
"""

from __future__ import annotations

from functools import cached_property, lru_cache

import numpy as np

from .group import GroupElement, GroupSpec, MetacyclicGroup

__all__ = [
    "ThreeCocycle",
    "cocycle",
    "omega",
    "verify_cocycle",
    "cocycle_defect",
    "beta",
    "transgression",
    "default_group",
]


@lru_cache(maxsize=None)
def default_group(spec: GroupSpec | None = None) -> MetacyclicGroup:
    return MetacyclicGroup(spec or GroupSpec())


class ThreeCocycle:
    """omega_u on a metacyclic group, as a dense exponent table mod p^2."""

    def __init__(self, group: MetacyclicGroup, u: int):
        if not 0 <= u < group.p:
            raise ValueError(f"cocycle parameter u={u} outside [0, {group.p})")
        self.group = group
        self.u = u
        self.modulus = group.p**2

    def __repr__(self):
        return f"ThreeCocycle(u={self.u}, spec={self.group.spec})"

    def __call__(self, x: GroupElement, y: GroupElement, z: GroupElement) -> int:
        p = self.group.p
        carry = 1 if y[1] + z[1] >= p else 0
        return (self.u * p * x[1] * carry) % self.modulus

    @cached_property
    def table(self) -> np.ndarray:
        """``table[cx, cy, cz]`` for group codes; read-only."""
        g = self.group
        j = g.b_exponent
        carry = (j[:, None] + j[None, :] >= g.p).astype(np.int64)
        t = (self.u * g.p * j[:, None, None] * carry[None, :, :]) % self.modulus
        t.setflags(write=False)
        return t

    def transgression(self, x: GroupElement, g: GroupElement, h: GroupElement) -> int:
        """Phase tau_x(g, h) in  rho(g) rho(h) v = tau_x(g, h) rho(gh) v,  v of degree x.

        tau_x(g, h) = omega(g, h, x) omega(g h x (gh)^-1, g, h) / omega(g, h x h^-1, h).
        """
        G = self.group
        hx = G.conjugate(h, x)
        ghx = G.conjugate(G.multiply(g, h), x)
        return (self(g, h, x) + self(ghx, g, h) - self(g, hx, h)) % self.modulus

    @cached_property
    def transgression_table(self) -> np.ndarray:
        """``[cx, cg, ch]`` table of :meth:`transgression` over group codes."""
        G = self.group
        m, inv, w = G.mul_table, G.inv_table, self.table
        o = G.order
        x = np.arange(o)[:, None, None]
        g = np.arange(o)[None, :, None]
        h = np.arange(o)[None, None, :]
        gh = m[g, h]
        hx = m[m[h, x], inv[h]]
        ghx = m[m[gh, x], inv[gh]]
        t = (w[g, h, x] + w[ghx, g, h] - w[g, hx, h]) % self.modulus
        t.setflags(write=False)
        return t

    def beta(self, g: GroupElement, h: GroupElement, l: GroupElement) -> int:
        """Transgressed 2-cocycle beta_g(h, l) on the centralizer of g."""
        G = self.group
        if G.multiply(g, h) != G.multiply(h, g) or G.multiply(g, l) != G.multiply(l, g):
            raise ValueError(f"{h} and {l} must both centralize {g}")
        hl = G.multiply(h, l)
        a = self(g, h, l)
        b = self(h, G.conjugate(G.inverse(h), g), l)
        c = self(h, l, G.conjugate(G.inverse(hl), g))
        return (a - b + c) % self.modulus


@lru_cache(maxsize=None)
def cocycle(u: int, spec: GroupSpec | None = None) -> ThreeCocycle:
    return ThreeCocycle(default_group(spec), u)


def omega(u: int, x: GroupElement, y: GroupElement, z: GroupElement, spec: GroupSpec | None = None) -> int:
    return cocycle(u, spec)(x, y, z)


def beta(u: int, g: GroupElement, h: GroupElement, l: GroupElement, spec: GroupSpec | None = None) -> int:
    return cocycle(u, spec).beta(g, h, l)


def transgression(u: int, x: GroupElement, g: GroupElement, h: GroupElement, spec: GroupSpec | None = None) -> int:
    return cocycle(u, spec).transgression(x, g, h)


def cocycle_defect(group: MetacyclicGroup, table: np.ndarray, modulus: int) -> int:
    """Number of quadruples violating the 3-cocycle identity

        omega(y,z,w) omega(x,yz,w) omega(x,y,z) = omega(xy,z,w) omega(x,y,zw).
    """
    m = group.mul_table
    o = group.order
    t = np.asarray(table)
    y = np.arange(o)[:, None, None]
    z = np.arange(o)[None, :, None]
    w = np.arange(o)[None, None, :]
    yz, zw = m[y, z], m[z, w]
    left_fixed = t[y, z, w]
    bad = 0
    for x in range(o):
        xy = m[x, y]
        lhs = left_fixed + t[x, yz, w] + t[x, y, z]
        rhs = t[xy, z, w] + t[x, y, zw]
        bad += int(np.count_nonzero((lhs - rhs) % modulus))
    return bad


def verify_cocycle(u: int, spec: GroupSpec | None = None, table: np.ndarray | None = None) -> bool:
    """Exhaustive check of the cocycle identity over all |G|^4 quadruples."""
    w = cocycle(u, spec)
    return cocycle_defect(w.group, w.table if table is None else table, w.modulus) == 0
