"""Hurwitz stability: no zeros in the open right half-plane.

Zeros on the imaginary axis, including the origin, are allowed.  The count
of right half-plane zeros is exact: roots symmetric about the imaginary axis
are split off through gcd(g(x), g(-x)), and the rest is handled by a Cauchy
index computed with a Sturm-type remainder sequence along the axis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactpoly import Poly, even_odd_split, exact_div, gcd, poly_divmod, primitive_same_sign, x_power_strip
from .realroots import (
    PreconditionViolated,
    ZeroPolynomial,
    _count_chain,
    interlacing_relation,
    is_real_rooted,
    squarefree_factorization,
    sturm_chain,
)

__all__ = ["RhpCountReport", "rhp_root_count", "is_hurwitz_stable", "hb_even_odd_test"]


@dataclass(frozen=True)
class RhpCountReport:
    strictly_right_count: int
    imaginary_axis_count: int
    origin_multiplicity: int
    degree: int

    @property
    def left_count(self) -> int:
        return self.degree - self.strictly_right_count - self.imaginary_axis_count - self.origin_multiplicity

    def as_dict(self) -> dict:
        return {
            "strictly_right": self.strictly_right_count,
            "imaginary_axis": self.imaginary_axis_count,
            "origin": self.origin_multiplicity,
            "left": self.left_count,
        }


def _axis_parts(h: Poly) -> tuple[Poly, Poly]:
    """h(iy) = P(y) + i Q(y) with P, Q real."""
    P, Q = [0] * len(h.coeffs), [0] * len(h.coeffs)
    for k, a in enumerate(h.coeffs):
        # i^k cycles 1, i, -1, -i
        r = k % 4
        if r == 0:
            P[k] = a
        elif r == 1:
            Q[k] = a
        elif r == 2:
            P[k] = -a
        else:
            Q[k] = -a
    return Poly(P), Poly(Q)


def _cauchy_index(num: Poly, den: Poly) -> int:
    """Cauchy index of num/den over the whole real line."""
    if num.is_zero():
        return 0
    chain = [primitive_same_sign(den), primitive_same_sign(num)]
    while True:
        _, r = poly_divmod(chain[-2], chain[-1])
        if r.is_zero():
            break
        chain.append(primitive_same_sign(-r))
    return _count_chain(chain, None, None)


def _rhp_no_symmetric(h: Poly) -> int:
    """Right half-plane zeros of h, assuming no pair {z, -z} of zeros."""
    n = h.degree
    if n == 0:
        return 0
    P, Q = _axis_parts(h)
    # total argument change along the axis, in units of pi
    if n % 2 == 0:
        turns = -_cauchy_index(Q, P)
    else:
        turns = _cauchy_index(P, Q)
    right, rem = divmod(n - turns, 2)
    assert rem == 0 and 0 <= right <= n, "inconsistent Cauchy index"
    return right


def _negative_real_roots(e: Poly) -> int:
    """Roots of e in (-inf, 0), with multiplicity; e(0) != 0."""
    total = 0
    for f, k in squarefree_factorization(e):
        total += k * _count_chain(sturm_chain(f), None, 0)
    return total


def rhp_root_count(p: Poly) -> RhpCountReport:
    if p.is_zero():
        raise ZeroPolynomial("rhp_root_count of the zero polynomial")
    g, k = x_power_strip(p)
    sigma = Poly((-a if i % 2 else a) for i, a in enumerate(g.coeffs))
    d = gcd(g, sigma)
    dE, dO = even_odd_split(d)
    assert dO.is_zero(), "symmetric factor must be even"
    neg = _negative_real_roots(dE)
    axis = 2 * neg
    right_sym = dE.degree - neg
    right = right_sym + _rhp_no_symmetric(exact_div(g, d))
    rep = RhpCountReport(right, axis, k, p.degree)
    assert rep.left_count >= 0
    # symmetric part splits evenly between the two open half-planes
    assert right_sym == (d.degree - axis) // 2
    return rep


def is_hurwitz_stable(p: Poly) -> bool:
    if p.is_zero():
        return True
    return rhp_root_count(p).strictly_right_count == 0


def hb_even_odd_test(p: Poly) -> bool:
    """Hermite-Biehler style test via the even/odd split p = fE(x^2) + x fO(x^2).

    Stable iff fE and fO have only real nonpositive zeros, fO precedes fE
    in the interlacing order and their leading coefficients agree in sign.
    """
    fE, fO = even_odd_split(p)
    if fE.is_zero() or fO.is_zero():
        raise PreconditionViolated("fE * fO vanishes identically")
    for h in (fE, fO):
        if not is_real_rooted(h):
            return False
        h1, _ = x_power_strip(h)
        if not h1.is_constant() and _count_chain(sturm_chain(h1), 0, None) > 0:
            return False
    if (fE.lead > 0) != (fO.lead > 0):
        return False
    return interlacing_relation(fO, fE).g_ll_f
