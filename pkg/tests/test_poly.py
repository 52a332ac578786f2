from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padic_crit.fuzz import Lcg64
from padic_crit.poly import Poly, interpolate, poly_gcd, resultant, strip_common

from oracles import sylvester_resultant

small = st.fractions(min_value=-20, max_value=20, max_denominator=20)
polys = st.lists(small, min_size=1, max_size=6).map(Poly)


def test_zero_polynomial_degree_sentinel():
    assert Poly([]).degree == -1
    assert Poly([0, 0]).is_zero()
    assert Poly([1, 2, 0]).degree == 1


def test_basic_arithmetic():
    z = Poly.z()
    assert (z + 1) * (z - 1) == Poly([-1, 0, 1])
    q, r = divmod(Poly([1, 0, 0, 1]), Poly([1, 1]))
    assert q * Poly([1, 1]) + r == Poly([1, 0, 0, 1])
    assert r == Poly([0])
    assert Poly([1, 2, 3])(Fraction(1, 2)) == Fraction(11, 4)


def test_shift_and_reverse():
    P = Poly([0, 0, 1])
    assert P.shift(1) == Poly([1, 2, 1])
    assert Poly([1, 2, 3]).reversed(2) == Poly([3, 2, 1])
    assert Poly([0, 0, 0, 1, 5]).strip_zero_root() == Poly([1, 5])


def test_gcd_and_strip_common():
    a = Poly.from_roots([1, 1, 2])
    b = Poly.from_roots([1, 3])
    assert poly_gcd(a, b) == Poly.from_roots([1])
    assert strip_common(a, b) == Poly.from_roots([2])


@pytest.mark.parametrize("a, b, expected", [
    ([-1, 0, 1], [-2, 1], 3),
    ([0, 1], [0, 1], 0),
])
def test_resultant_examples(a, b, expected):
    assert resultant(Poly(a), Poly(b)) == expected


def test_resultant_rejects_zero():
    with pytest.raises(ValueError):
        resultant(Poly([]), Poly([1, 1]))


def test_resultant_matches_sylvester_oracle():
    rng = Lcg64(2024)
    for _ in range(300):
        a = [rng.rational() for _ in range(rng.randint(1, 5))] + [rng.rational(nonzero=True)]
        b = [rng.rational() for _ in range(rng.randint(0, 4))] + [rng.rational(nonzero=True)]
        assert resultant(Poly(a), Poly(b)) == sylvester_resultant(a, b)


def test_resultant_is_product_over_roots():
    a = Poly.from_roots([1, -2, Fraction(1, 3)], lead=5)
    b = Poly([7, 0, -1, 2])
    expected = Fraction(5) ** 3 * b(1) * b(-2) * b(Fraction(1, 3))
    assert resultant(a, b) == expected


@settings(max_examples=60, deadline=None)
@given(a=polys, b=polys)
def test_resultant_symmetry_and_vanishing(a, b):
    if a.is_zero() or b.is_zero():
        return
    ra, rb = resultant(a, b), resultant(b, a)
    assert ra == (-1) ** (a.degree * b.degree) * rb
    assert (ra == 0) == (poly_gcd(a, b).degree > 0)


@given(xs=st.lists(st.integers(-10, 10), min_size=1, max_size=6, unique=True),
       ys=st.lists(small, min_size=6, max_size=6))
def test_interpolation_reproduces_samples(xs, ys):
    P = interpolate([Fraction(x) for x in xs], ys[: len(xs)])
    assert P.degree < len(xs)
    for x, y in zip(xs, ys):
        assert P(x) == y
