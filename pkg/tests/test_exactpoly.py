from fractions import Fraction

import pytest
from hypothesis import given

from conftest import nonzero_polys, polys
from stabcomb.exactpoly import (
    DegreeTooLarge,
    InexactDivision,
    Poly,
    derivative,
    even_odd_split,
    exact_div,
    gcd,
    moebius_numerator,
    mul,
    reciprocal,
    reflect,
    squarefree_part,
    subs_power,
)

P = Poly


def test_zero_poly_degree_is_below_naturals():
    assert P().degree < 0
    assert P([0, 0]).is_zero()
    assert P([1, 2, 0]).coeffs == (1, 2)


def test_mul_examples():
    assert mul(P([1, 1]), P([1, -1])) == P([1, 0, -1])
    assert mul(P(), P([1, 4, 1])).is_zero()
    assert P([1, 1]) * P([1, 1]) == P([1, 2, 1])


def test_derivative_examples():
    assert derivative(P([0, 0, 1])) == P([0, 2])
    assert derivative(P([7])).is_zero()
    assert derivative(P([0, 1, 1, 1])) == P([1, 2, 3])


def test_reciprocal_examples():
    assert reciprocal(P([1, 2]), 2) == P([0, 2, 1])
    assert reciprocal(P([1, 4, 1]), 2) == P([1, 4, 1])
    assert reciprocal(P([2]), 1) == P([0, 2])
    with pytest.raises(DegreeTooLarge):
        reciprocal(P([1, 1, 1]), 1)


def test_reflect_examples():
    assert reflect(P([0, 1]), 1) == P([1, 1])
    assert reflect(P([1, 2, 1]), 2) == P([0, 0, 1])
    assert reflect(reflect(P([1, 3]), 2), 2) == P([1, 3])


def test_even_odd_split_examples():
    assert even_odd_split(P([0, 1, 1])) == (P([0, 1]), P([1]))
    assert even_odd_split(P([3, 2, 3])) == (P([3, 3]), P([2]))
    assert even_odd_split(P([1])) == (P([1]), P())


def test_gcd_and_squarefree():
    assert gcd(P([-1, 0, 1]), P([1, -2, 1])) == P([-1, 1])
    assert squarefree_part(P([0, 0, 1])) == P([0, 1])
    g = gcd(P([2, 4]), P())
    assert g.lead == 1 and exact_div(P([2, 4]), g) == P([4])


def test_exact_div():
    assert exact_div(P([0, 1, 1, 1]), P([0, 1])) == P([1, 1, 1])
    assert exact_div(P([1, 2, 1]), P([1, 1])) == P([1, 1])
    with pytest.raises(InexactDivision):
        exact_div(P([1, 1]), P([0, 1]))
    with pytest.raises(ZeroDivisionError):
        exact_div(P([1]), P())


def test_moebius_examples():
    assert moebius_numerator(P([1, 1]), 1, 1, 0, 1, 1) == P([1, 2])
    f = moebius_numerator(P([1, 3, 1]), 2, 1, 0, 1, 1)
    assert moebius_numerator(f, 2, 1, 0, -1, 1) == P([1, 3, 1])
    assert moebius_numerator(P([1]), 2, 3, 1, 2, 5) == P([5, 2]) ** 2


def test_parse_and_strings():
    p = P.parse("1/2,0,-3")
    assert p.coeffs == (Fraction(1, 2), 0, -3)
    assert p.to_strings() == ["1/2", "0/1", "-3/1"]


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@given(nonzero_polys())
def test_reciprocal_involution(p):
    n = p.degree
    if p[0] != 0:
        assert reciprocal(reciprocal(p, n), n) == p


@given(polys(), polys(max_deg=1))
def test_reflect_involution(p, extra):
    n = max(p.degree, 0) + max(extra.degree, 0)
    assert reflect(reflect(p, n), n) == p


@given(polys(max_deg=6))
def test_even_odd_reassembly(p):
    e, o = even_odd_split(p)
    assert subs_power(e, 2) + P([0, 1]) * subs_power(o, 2) == p


@given(polys(max_deg=4))
def test_moebius_roundtrip(p):
    n = max(p.degree, 0) + 1
    f = moebius_numerator(p, n, 1, 0, 1, 1)
    assert moebius_numerator(f, n, 1, 0, -1, 1) == p


@given(nonzero_polys(), nonzero_polys())
def test_divmod_reconstructs(p, q):
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree
