from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from conftest import nonzero_polys
from stabcomb.exactpoly import Poly, even_odd_split
from stabcomb.families import family
from stabcomb.hurwitz import hb_even_odd_test, is_hurwitz_stable, rhp_root_count
from stabcomb.realroots import PreconditionViolated, ZeroPolynomial

P = Poly


def _counts(p):
    r = rhp_root_count(p)
    return r.strictly_right_count, r.imaginary_axis_count, r.origin_multiplicity


def test_rhp_examples():
    assert _counts(P([2, -2, 1])) == (2, 0, 0)
    assert _counts(P([0, 1, 1, 1])) == (0, 0, 1)
    assert _counts(P([-2, 1, 1])) == (1, 0, 0)
    with pytest.raises(ZeroPolynomial):
        rhp_root_count(P())


def test_axis_roots_counted():
    # (x^2+1)^2 (x-3)(x+1)
    p = P([1, 0, 1]) ** 2 * P([-3, 1]) * P([1, 1])
    assert _counts(p) == (1, 4, 0)
    assert rhp_root_count(p).left_count == 1


def test_stability_examples():
    assert is_hurwitz_stable(P([0, 1, 1, 1]))
    assert is_hurwitz_stable(P([1, 0, 1]))
    assert is_hurwitz_stable(P([3, 2, 3]))
    assert is_hurwitz_stable(P())
    assert not is_hurwitz_stable(P([-1, 1]))


def test_hb_examples():
    assert hb_even_odd_test(P([0, 1, 1]))
    assert hb_even_odd_test(P([3, 2, 3]))
    assert not hb_even_odd_test(P([2, -2, 1]))
    with pytest.raises(PreconditionViolated):
        hb_even_odd_test(P([1, 0, 1]))


def _linear(re_num, re_den):
    return P([-Fraction(re_num, re_den), 1])


def _quad(re, im2):
    # roots re +- i sqrt(im2)
    return P([re * re + im2, -2 * re, 1])


factors = st.one_of(
    st.builds(lambda a: P([-a, 1]), st.integers(-4, 4)),
    st.builds(_quad, st.integers(-3, 3), st.integers(1, 4)),
)


@given(st.lists(factors, min_size=1, max_size=4))
def test_count_matches_known_roots(fs):
    p = P([1])
    right = 0
    for f in fs:
        p = p * f
        if f.degree == 1:
            right += -f[0] > 0
        else:
            right += 2 * (-f[1] > 0)
    assert rhp_root_count(p).strictly_right_count == right
    assert is_hurwitz_stable(p) == (right == 0)


@given(nonzero_polys(4), nonzero_polys(4))
def test_multiplicativity(p, q):
    assert rhp_root_count(p * q).strictly_right_count == (
        rhp_root_count(p).strictly_right_count + rhp_root_count(q).strictly_right_count
    )


@given(nonzero_polys(6))
def test_report_adds_up(p):
    r = rhp_root_count(p)
    assert r.left_count >= 0
    assert r.strictly_right_count + r.imaginary_axis_count + r.origin_multiplicity + r.left_count == p.degree


@given(nonzero_polys(6))
def test_stable_positive_lead_has_nonnegative_coefficients(p):
    if p.lead < 0:
        p = -p
    if is_hurwitz_stable(p):
        assert all(c >= 0 for c in p.coeffs)


@given(nonzero_polys(6))
def test_hb_agrees_with_count(p):
    e, o = even_odd_split(p)
    assume(not e.is_zero() and not o.is_zero())
    assert hb_even_odd_test(p) == is_hurwitz_stable(p)


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_quadratic_closed_form(a, b, c):
    assume(a != 0)
    p = P([c, b, a])
    # roots sum -b/a, product c/a; both in the closed left half-plane iff both ratios >= 0
    expected = b * a >= 0 and c * a >= 0
    assert is_hurwitz_stable(p) == expected


def test_hb_agrees_on_families():
    for name, params in [("stirling_runs", {}), ("alt_desc_A", {}), ("alt_desc_B", {}), ("flower", {}),
                         ("stirling_peaks_T", {"r": 3}), ("eulerian", {}), ("bell", {})]:
        t = family(name, params, 10)
        for p in t.polys:
            e, o = even_odd_split(p)
            if e.is_zero() or o.is_zero():
                continue
            assert hb_even_odd_test(p) == is_hurwitz_stable(p), (name, p)
