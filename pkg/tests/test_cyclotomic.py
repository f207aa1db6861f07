import numpy as np
from hypothesis import given, settings, strategies as st

from dwlink.cyclotomic import CyclotomicInteger, GroupRingDFT, cyclotomic_polynomial, ring

R = ring(275)
exps = st.lists(st.integers(0, 274), max_size=12)


def test_degree():
    assert R.degree == 200
    assert len(cyclotomic_polynomial(275)) == 201


def test_sum_of_primitive_fifth_roots():
    s = sum((R.root(55 * k) for k in range(1, 5)), R.zero)
    assert s == -1


@given(exps, exps)
def test_product_matches_floats(a, b):
    x, y = R.from_exponents(a), R.from_exponents(b)
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-8


@given(exps)
def test_conjugate_and_norm(a):
    x = R.from_exponents(a)
    assert abs(complex(x.conjugate()) - complex(x).conjugate()) < 1e-9
    assert (x * x.conjugate()).conjugate() == x * x.conjugate()


@given(exps)
def test_exponent_dict_roundtrip(a):
    x = R.from_exponents(a)
    assert CyclotomicInteger.from_exponent_dict(x.exponent_dict(), 275) == x


def test_galois_fixes_integers():
    assert R.integer(7).galois(3) == 7
    assert R.root(1).galois(2) == R.root(2)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(0, 30), min_size=275, max_size=275), st.lists(st.integers(0, 30), min_size=275, max_size=275))
def test_dft_convolution(a, b):
    dft = GroupRingDFT(275)
    a, b = np.array(a), np.array(b)
    ea, eb = dft.forward(a), dft.forward(b)
    got = dft.inverse([(x * y) % P for x, y, P in zip(ea, eb, dft.primes)])
    want = np.zeros(275, dtype=np.int64)
    for i in range(275):
        want[(i + np.arange(275)) % 275] += a[i] * b
    assert np.array_equal(got, want)
