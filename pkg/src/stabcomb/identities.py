"""Closed-form identities tying the families to generating functions.

Each verifier rebuilds both sides with exact arithmetic, compares them
coefficientwise and returns a ``Verdict`` whose failure names the first
offending index.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, prod
from typing import Callable

from .exactpoly import Poly, as_rational, binomial_power
from .families import BadParams, colored_minus_count, family, family_offset, pattern_parts, q_integer
from .series import Series, XSeries, binomial_xseries, jcf_expand, series_int_pow, series_mul, trig_series, xD_pow
from .verdict import Verdict, first_mismatch

__all__ = [
    "NonIntegerExponent",
    "jcf_data",
    "verify_egf_crossmul",
    "verify_jcf",
    "verify_xd_identity",
    "verify_convolution",
    "verify_counting_identity",
    "verify_gamma_basis",
    "sym_T_params",
]


class NonIntegerExponent(ValueError):
    pass


def sym_T_params(family_name: str, params: dict | None = None) -> dict:
    """beta, nu, mu, delta of the symmetric families."""
    params = dict(params or {})
    if family_name == "alt_desc_A":
        return {"beta": 1, "nu": Fraction(1, 2), "mu": Fraction(-1, 2), "delta": 2}
    if family_name == "alt_desc_B":
        return {"beta": 1, "nu": 1, "mu": -1, "delta": 1}
    if family_name == "sym_T":
        out = {"beta": 1, "nu": 1, "mu": -1, "delta": 1}
        out.update(params)
        return {k: as_rational(v) for k, v in out.items() if k in ("beta", "nu", "mu", "delta")}
    raise BadParams(f"{family_name} is not a symmetric family")


def jcf_data(family_name: str, params: dict | None = None) -> tuple[Callable, Callable]:
    """Continued-fraction coefficients (r_i, s_i) known for the family."""
    params = dict(params or {})
    one_x, one_x2 = Poly([1, 1]), Poly([1, 0, 1])
    if family_name in ("alt_desc_A", "alt_desc_B", "sym_T"):
        p = sym_T_params(family_name, params)
        b, v = as_rational(p["beta"]), as_rational(p["nu"])
        return (lambda i: one_x * (2 * v * i + b), lambda i: one_x2 * (2 * v * i * (b + v * (i - 1))))
    if family_name == "derivative_Q":
        d = int(params.get("delta", 1))
        return (lambda i: Poly([0, 2 * i + d]), lambda i: one_x2 * (i * (i + d - 1)))
    if family_name == "s_triangle_rows":
        v = as_rational(params.get("nu", Fraction(1, 2)))
        b = as_rational(params.get("beta", 1))
        return (lambda i: Poly([2 * v * i + b]), lambda i: Poly([0, 2 * v * i * (v * (i - 1) + b)]))
    raise BadParams(f"no continued fraction known for {family_name}")


def _first_terms(family_name: str, params: dict, count: int) -> list[Poly]:
    """The first ``count`` entries of the family, starting at its first index."""
    start = family_offset(family_name, params)
    return list(family(family_name, params, start + count - 1).polys)


def verify_jcf(family_name: str, params: dict | None = None, r_formula=None, s_formula=None, order: int = 10) -> Verdict:
    params = dict(params or {})
    if r_formula is None or s_formula is None:
        r0, s0 = jcf_data(family_name, params)
        r_formula = r_formula or r0
        s_formula = s_formula or s0
    expanded = jcf_expand(r_formula, s_formula, order)
    table = _first_terms(family_name, params, order + 1)
    return first_mismatch(table, list(expanded.coeffs))


def _egf(polys: list[Poly], order: int) -> Series:
    return Series.from_polys([p * Fraction(1, factorial(n)) for n, p in enumerate(polys)], order)


def verify_egf_crossmul(family_name: str, params: dict | None = None, order: int = 10) -> Verdict:
    """sum T t^n/n! times the denominator power equals the numerator, to t^order."""
    params = dict(params or {})
    table = _first_terms(family_name, params, order + 1)
    lhs = _egf(table, order)
    if family_name == "derivative_Q":
        d = int(params.get("delta", 1))
        cos, sin = trig_series(Poly([1]), order)
        den = cos - sin * Poly([0, 1])
        rhs = Series.one(order)
        e = d
    else:
        p = sym_T_params(family_name, params)
        b, v = Fraction(p["beta"]), Fraction(p["nu"])
        if p["mu"] + p["nu"] != 0:
            raise BadParams("the closed form needs mu + nu = 0")
        e = b / v
        if e.denominator != 1 or e < 0:
            raise NonIntegerExponent(f"exponent {e} is not a nonnegative integer")
        e = int(e)
        one_minus = Poly([1, -1])
        cos, sin = trig_series(one_minus * v, order)
        den = cos * one_minus - sin * Poly([1, 1])
        rhs = Series.from_polys([one_minus**e], order)
    got = series_mul(lhs, series_int_pow(den, e))
    for k in range(order + 1):
        if got[k] != rhs[k]:
            return Verdict.fail(k, rhs[k], got[k])
    return Verdict.ok(exponent=e)


def verify_xd_identity(which: str, n_max: int = 6, order: int | None = None) -> Verdict:
    """(x d/dx)^n of the seed function, cleared of denominators, equals the family polynomial.

    eulerian: (xD)^n 1/(1-x) * (1-x)^(n+1) = x A_n for n >= 1, and = A_0 at n = 0.
    stirling_runs: (xD)^n sqrt((1+x)/(1-x)) * (1-x)^(n+1/2) (1+x)^(n-1/2) = R_n.
    """
    order = 2 * n_max + 5 if order is None else order
    if which == "eulerian":
        seed = XSeries.from_list([1] * (order + 1), order)
        table = family("eulerian", {}, n_max)
    elif which == "stirling_runs":
        seed = binomial_xseries(1, Fraction(1, 2), order) * binomial_xseries(-1, Fraction(-1, 2), order)
        table = family("stirling_runs", {}, n_max)
    else:
        raise BadParams(f"no xD identity for {which}")
    for n in range(n_max + 1):
        lhs = xD_pow(seed, n)
        if which == "eulerian":
            cleared = lhs * binomial_xseries(-1, n + 1, order)
            target = table[n] * Poly.x() if n >= 1 else table[0]
        else:
            cleared = lhs * binomial_xseries(-1, Fraction(2 * n + 1, 2), order) * binomial_xseries(
                1, Fraction(2 * n - 1, 2), order
            )
            target = table[n]
        want = XSeries.from_poly(target, order)
        if cleared.coeffs != want.coeffs:
            return Verdict.fail(n, target, Poly(cleared.coeffs))
    return Verdict.ok(order=order)


def _T_delta(delta: int, count: int) -> list[Poly]:
    """T^{(delta)}_{k+delta-1} for k < count, with beta = 1, nu = -mu = 1/delta."""
    p = {"beta": 1, "nu": Fraction(1, delta), "mu": Fraction(-1, delta), "delta": delta}
    t = family("sym_T", p, delta - 1 + max(count - 1, 0))
    return [t[k + delta - 1] for k in range(count)]


def verify_convolution(delta1: int, delta2: int, n_max: int = 8) -> Verdict:
    if delta1 < 1 or delta2 < 1:
        raise BadParams("deltas must be positive")
    A = _T_delta(delta1, n_max + 1)
    B = _T_delta(delta2, n_max + 1)
    C = _T_delta(delta1 + delta2, n_max + 1)
    for n in range(n_max + 1):
        lhs = C[n] * (delta1 + delta2) ** n
        rhs = Poly()
        for k in range(n + 1):
            rhs = rhs + A[k] * B[n - k] * (comb(n, k) * delta1**k * delta2 ** (n - k))
        if lhs != rhs:
            return Verdict.fail(n, lhs, rhs)
    return Verdict.ok()


def verify_alt_desc_convolution(n_max: int = 8) -> Verdict:
    """2^n A^_{n+1} = sum_k C(n,k) B^_k B^_{n-k}, straight from the two family tables."""
    A = family("alt_desc_A", {}, n_max + 1)
    B = family("alt_desc_B", {}, n_max)
    for n in range(n_max + 1):
        lhs = A[n + 1] * 2**n
        rhs = Poly()
        for k in range(n + 1):
            rhs = rhs + B[k] * B[n - k] * comb(n, k)
        if lhs != rhs:
            return Verdict.fail(n, lhs, rhs)
    return Verdict.ok()


def _counting(family_name: str, params: dict):
    """(index n, counting function, power of 1-x) for the counting families."""
    n = int(params.get("n", 3))
    if family_name == "colored_eulerian":
        r = int(params.get("r", 2))
        return n, lambda m: (r * m + 1) ** n, n + 1
    if family_name == "colored_plus":
        r = int(params.get("r", 2))
        return n, lambda m: (r * m + 1) ** n - (r * m) ** n, n
    if family_name == "colored_minus":
        r = int(params.get("r", 2))
        return n, lambda m: colored_minus_count(r, n, m), n
    if family_name == "kary_ascent":
        k = int(params.get("k", 2))
        return n, lambda m: comb(n + k * m, n), n + 1
    if family_name == "signed_multiset":
        parts = pattern_parts(params, n)
        s = sum(parts)
        return n, lambda m: (m + 1) ** (s - n) * (2 * m + 1) ** n, s + 1
    if family_name == "colored_q_eulerian":
        r = int(params.get("r", 2))
        q = params.get("q", [1])
        q = q if isinstance(q, (list, tuple)) else [q]
        cs = [q_integer(r, q[i % len(q)]) for i in range(n)]
        return n, lambda m: prod((c * m + 1 for c in cs), start=Fraction(1)), n + 1
    raise BadParams(f"no counting series known for {family_name}")


def verify_counting_identity(family_name: str, params: dict | None = None, m_max: int = 10) -> Verdict:
    """Expand h / (1-x)^d and compare with the counting function for m <= m_max."""
    params = dict(params or {})
    n, count, d = _counting(family_name, params)
    fam_params = {k: v for k, v in params.items() if k != "n"}
    h = family(family_name, fam_params, n)[n]
    series = XSeries.from_poly(h, m_max) * binomial_xseries(-1, -d, m_max)
    for m in range(m_max + 1):
        want = as_rational(count(m))
        if series[m] != want:
            return Verdict.fail(m, Poly([want]), Poly([series[m]]))
    return Verdict.ok(h=h, power=d)


def _basis_sum(weights: list, n: int, step: int) -> Poly:
    """sum_k (step)^k [sum_i w_i C(i,k)] x^k (1+x)^(n-2k)."""
    out = Poly()
    for k in range(n // 2 + 1):
        c = sum(w * comb(i, k) for i, w in enumerate(weights))
        if c:
            out = out + Poly.monomial(k, c * step**k) * binomial_power(1, 1, n - 2 * k)
    return out


def verify_gamma_basis(which: str, n_max: int = 8, literal: bool = False) -> Verdict:
    """Rebuild A^_n or B^_n from their expansions in the basis x^k (1+x)^(n-2k).

    Type A uses the S-triangle (nu = 1/2, beta = 1), row n-1, with (-2)^k.
    Type B uses left-peak numbers weighted by 2^i with (-2)^k; ``literal``
    switches to unweighted numbers with (-4)^k, which does not reproduce B^_2.
    """
    if which == "alt_desc_A":
        fam = family("alt_desc_A", {}, n_max)
        S = family("s_triangle_rows", {"nu": Fraction(1, 2), "beta": 1}, max(n_max - 1, 0))
        for n in range(1, n_max + 1):
            got = _basis_sum(list(S[n - 1].coeffs), n - 1, -2)
            if got != fam[n]:
                return Verdict.fail(n, fam[n], got)
        return Verdict.ok()
    if which == "alt_desc_B":
        fam = family("alt_desc_B", {}, n_max)
        W = family("peaks_Wtilde", {}, n_max)
        for n in range(0, n_max + 1):
            w = list(W[n].coeffs)
            if literal:
                got = _basis_sum(w, n, -4)
            else:
                got = _basis_sum([c * 2**i for i, c in enumerate(w)], n, -2)
            if got != fam[n]:
                return Verdict.fail(n, fam[n], got)
        return Verdict.ok()
    raise BadParams(f"no gamma-basis expansion for {which}")
