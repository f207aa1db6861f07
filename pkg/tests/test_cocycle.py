import numpy as np
import pytest

from dwlink.cocycle import cocycle, cocycle_defect, default_group, verify_cocycle

G = default_group()


@pytest.mark.parametrize("u", range(5))
def test_cocycle_identity(u):
    assert verify_cocycle(u)


def test_broken_table_detected():
    t = np.array(cocycle(1).table)
    t[3, 7, 11] = (t[3, 7, 11] + 1) % 25
    assert cocycle_defect(G, t, 25) > 0
    assert not verify_cocycle(1, table=t)


def test_normalised():
    w = cocycle(2)
    e = G.identity
    assert all(w(e, x, y) == w(x, e, y) == w(x, y, e) == 0 for x in G.elements() for y in G.elements())


def test_beta_requires_centralizer():
    with pytest.raises(ValueError):
        cocycle(1).beta(G.b, G.a, G.b)


@pytest.mark.parametrize("u", [1, 3])
def test_beta_is_a_2_cocycle_on_centralizer(u):
    w = cocycle(u)
    g = G.b
    C = G.centralizer(g)
    for h in C:
        for k in C:
            for l in C:
                lhs = w.beta(g, k, l) + w.beta(g, h, G.multiply(k, l))
                rhs = w.beta(g, G.multiply(h, k), l) + w.beta(g, h, k)
                assert (lhs - rhs) % 25 == 0


def test_u_out_of_range():
    with pytest.raises(ValueError):
        cocycle(5)
