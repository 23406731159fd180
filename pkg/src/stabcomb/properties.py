"""Derived properties of polynomial sequences.

Turan expressions and q-log-convexity, gamma and semi-gamma expansions,
the symmetric a + x b decompositions, coefficient-chain tests, the
subdivision operator, and the parameter conditions (``criterion_check``)
under which the stability results are claimed.  The conditions are pure
predicates: no decider here consults them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .exactpoly import (
    DegreeTooLarge,
    Poly,
    as_rational,
    binomial_power,
    exact_div,
    reciprocal,
    reflect,
    shift,
    x_power_strip,
)
from .families import RecurrenceSpec, family_spec, q_integer
from .realroots import PreconditionViolated, interlacing_relation
from .verdict import Verdict

__all__ = [
    "GammaData",
    "SemiGammaData",
    "SymDecomp",
    "NotSymmetric",
    "NotSymmetricAfterStrip",
    "UnknownCriterion",
    "MissingParams",
    "turan",
    "q_log_convexity",
    "strong_q_log_convexity",
    "gamma_vector",
    "semi_gamma",
    "sym_decomposition",
    "is_alternatingly_increasing",
    "is_unimodal",
    "is_nonnegative",
    "epsilon_subdivision",
    "dec_ab_equivalence_check",
    "criterion_check",
    "CRITERIA",
    "linear_combination",
]


class NotSymmetric(ValueError):
    pass


class NotSymmetricAfterStrip(NotSymmetric):
    pass


class UnknownCriterion(KeyError):
    pass


class MissingParams(KeyError):
    pass


def _at(seq, n: int) -> Poly:
    try:
        return seq[n]
    except (IndexError, KeyError) as exc:
        raise IndexError(f"sequence has no entry at {n}") from exc


def _first_index(seq) -> int:
    return getattr(seq, "offset", 0)


def _last_index(seq) -> int:
    return _first_index(seq) + len(seq) - 1


def is_nonnegative(p: Poly) -> bool:
    return all(c >= 0 for c in p.coeffs)


# ---------------------------------------------------------------------------
# Turan expressions


def turan(seq, n: int, shift_by=0) -> Poly:
    """P_{n+1}^2 - P_{n+2} P_n, optionally composed with x -> x + shift_by."""
    a, b, c = _at(seq, n), _at(seq, n + 1), _at(seq, n + 2)
    t = b * b - c * a
    return shift(t, shift_by) if shift_by else t


def q_log_convexity(seq, N: int | None = None) -> Verdict:
    """-Turan(n) has nonnegative coefficients for every n < N with P_{n+2} known."""
    lo, hi = _first_index(seq), _last_index(seq) - 2
    if N is not None:
        hi = min(hi, N - 1)
    for n in range(lo, hi + 1):
        d = -turan(seq, n)
        if not is_nonnegative(d):
            return Verdict.fail(n, Poly(), d)
    return Verdict.ok(checked=max(hi - lo + 1, 0))


def strong_q_log_convexity(seq, N: int | None = None) -> Verdict:
    """f_{n+1} f_{m-1} - f_n f_m >= 0 coefficientwise for 1 <= m <= n < N (indices relative to the start)."""
    lo = _first_index(seq)
    top = len(seq) - 2 if N is None else min(N - 1, len(seq) - 2)
    f = lambda i: _at(seq, lo + i)
    for n in range(1, top + 1):
        for m in range(1, n + 1):
            d = f(n + 1) * f(m - 1) - f(n) * f(m)
            if not is_nonnegative(d):
                return Verdict.fail((lo + n, lo + m), Poly(), d)
    return Verdict.ok()


# ---------------------------------------------------------------------------
# gamma and semi-gamma expansions


@dataclass(frozen=True)
class GammaData:
    gamma: tuple
    center: int

    def reconstruct(self) -> Poly:
        out = Poly()
        for k, g in enumerate(self.gamma):
            out = out + Poly.monomial(k, g) * binomial_power(1, 1, self.center - 2 * k)
        return out

    @property
    def positive(self) -> bool:
        return all(g >= 0 for g in self.gamma)


def gamma_vector(p: Poly, n: int) -> GammaData:
    """Coordinates of p in the basis x^k (1+x)^(n-2k)."""
    if p.degree > n:
        raise DegreeTooLarge(f"degree {p.degree} exceeds {n}")
    if reciprocal(p, n) != p:
        raise NotSymmetric(f"{p} is not symmetric about degree {n}")
    rest = p
    gam = []
    for k in range(n // 2 + 1):
        g = rest[k]
        gam.append(g)
        if g:
            rest = rest - Poly.monomial(k, g) * binomial_power(1, 1, n - 2 * k)
    assert rest.is_zero()
    return GammaData(tuple(gam), n)


@dataclass(frozen=True)
class SemiGammaData:
    nu: int
    stripped_power: int
    g: Poly
    center: int  # the m of the basis x^k (1+x^2)^(m-k)

    def reconstruct(self) -> Poly:
        out = Poly()
        for k, gk in enumerate(self.g.coeffs):
            if gk:
                out = out + Poly.monomial(k, gk) * _one_plus_x2_pow(self.center - k)
        return out * binomial_power(1, 1, self.nu) * Poly.monomial(self.stripped_power, 1)

    @property
    def positive(self) -> bool:
        return is_nonnegative(self.g)


def _one_plus_x2_pow(k: int) -> Poly:
    return Poly([comb(k, j // 2) if j % 2 == 0 else 0 for j in range(2 * k + 1)])


def semi_gamma(p: Poly) -> SemiGammaData:
    """p = x^s (1+x)^nu sum_k g_k x^k (1+x^2)^(m-k), after stripping x^s."""
    if p.is_zero():
        raise NotSymmetricAfterStrip("the zero polynomial has no semi-gamma expansion")
    q, s = x_power_strip(p)
    N = q.degree
    if reciprocal(q, N) != q:
        raise NotSymmetricAfterStrip(f"{q} is not palindromic")
    nu = N % 2
    if nu:
        q = exact_div(q, Poly([1, 1]))
    m = q.degree // 2
    rest, g = q, []
    for k in range(m + 1):
        gk = rest[k]
        g.append(gk)
        if gk:
            rest = rest - Poly.monomial(k, gk) * _one_plus_x2_pow(m - k)
    if not rest.is_zero():
        raise NotSymmetricAfterStrip(f"{p} is not spanned by the semi-gamma basis")
    return SemiGammaData(nu, s, Poly(g), m)


# ---------------------------------------------------------------------------
# a + x b decompositions


@dataclass(frozen=True)
class SymDecomp:
    a: Poly
    b: Poly
    n: int
    flavor: str


def sym_decomposition(p: Poly, n: int, flavor: str = "I") -> SymDecomp:
    """The unique p = a + x b with a symmetric at n and b at n - 1.

    Flavor I uses reversal x^n p(1/x); flavor R uses (-1)^n p(-1-x).
    """
    if p.degree > n:
        raise DegreeTooLarge(f"degree {p.degree} exceeds {n}")
    if flavor == "I":
        # I_n(a + x b) = a + b, so p - I_n(p) = (x - 1) b
        b = exact_div(p - reciprocal(p, n), Poly([-1, 1]))
    elif flavor == "R":
        # R_n(a + x b) = a + (1 + x) b
        b = reflect(p, n) - p
    else:
        raise ValueError("flavor must be 'I' or 'R'")
    a = p - Poly.x() * b
    return SymDecomp(a, b, n, flavor)


# ---------------------------------------------------------------------------
# coefficient chains


def is_alternatingly_increasing(p: Poly, n: int) -> bool:
    """0 <= p_0 <= p_n <= p_1 <= p_{n-1} <= ..."""
    if p.degree > n:
        raise DegreeTooLarge(f"degree {p.degree} exceeds {n}")
    order = []
    lo, hi = 0, n
    while lo <= hi:
        order.append(lo)
        if hi != lo:
            order.append(hi)
        lo, hi = lo + 1, hi - 1
    chain = [p[i] for i in order]
    return chain[0] >= 0 and all(chain[i] <= chain[i + 1] for i in range(len(chain) - 1))


def is_unimodal(p: Poly) -> bool:
    c = list(p.coeffs)
    i = 0
    while i + 1 < len(c) and c[i] <= c[i + 1]:
        i += 1
    while i + 1 < len(c) and c[i] >= c[i + 1]:
        i += 1
    return i >= len(c) - 1


def epsilon_subdivision(p: Poly) -> Poly:
    """Send the binomial basis C(x, k) to x^k."""
    if p.is_zero():
        return p
    vals = [p(k) for k in range(p.degree + 1)]
    out = []
    for _ in range(p.degree + 1):
        out.append(vals[0])
        vals = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    return Poly(out)


def dec_ab_equivalence_check(p: Poly, n: int) -> Verdict:
    """The four conditions b << a, a << p, b << p, I_n(p) << p must agree."""
    d = sym_decomposition(p, n, "I")
    if not (is_nonnegative(d.a) and is_nonnegative(d.b)):
        raise PreconditionViolated("decomposition parts must have nonnegative coefficients")
    conds = {
        "b_ll_a": interlacing_relation(d.b, d.a).g_ll_f,
        "a_ll_p": interlacing_relation(d.a, p).g_ll_f,
        "b_ll_p": interlacing_relation(d.b, p).g_ll_f,
        "In_p_ll_p": interlacing_relation(reciprocal(p, n), p).g_ll_f,
    }
    vals = set(conds.values())
    if len(vals) == 1:
        return Verdict.ok(all_true=vals == {True}, **conds)
    return Verdict.fail(n, d.a, d.b, **conds)


# ---------------------------------------------------------------------------
# criteria


def _FG(spec: RecurrenceSpec, n: int) -> tuple[Poly, Poly, dict, int]:
    c = spec.coefficients(n)
    m = spec.m(n)
    F = Poly([c["gamma"], c["beta"], c["alpha"]])
    G = Poly([m * c["psi"], c["gamma"] + m * c["phi"], c["beta"] + m * c["nu"], c["alpha"] + m * c["mu"]])
    return F, G, c, m


def _lead_pos(p: Poly) -> bool:
    return not p.is_zero() and p.lead > 0


def _thm_FG(spec, n, **_):
    F, G, _, _ = _FG(spec, n)
    return interlacing_relation(F, G).g_ll_f


def _thm_RS_1(spec, n, **_):
    F, G, c, m = _FG(spec, n)
    if not (_lead_pos(F) and _lead_pos(G) and 0 <= G.degree - F.degree <= 1 and F.degree <= 1):
        return False
    b, g, v, f, s = c["beta"], c["gamma"], c["nu"], c["phi"], c["psi"]
    return b * g * f - g * g * v - b * b * s >= 0


def _thm_RS_2(spec, n, **_):
    F, G, c, m = _FG(spec, n)
    if not (_lead_pos(F) and _lead_pos(G) and F.degree == 2 and G.degree == 2 and c["psi"] == 0):
        return False
    a, b, g, v, f = c["alpha"], c["beta"], c["gamma"], c["nu"], c["phi"]
    return m * (b + m * v) * (b * f - g * v) - a * (g + m * f) ** 2 >= 0


def _hs_shape(c) -> bool:
    return c["nu"] == 0 and c["psi"] == 0 and min(c["beta"], c["gamma"], c["phi"]) >= 0


def _thm_HS_1(spec, n, **_):
    c, m = spec.coefficients(n), spec.m(n)
    return _hs_shape(c) and m == n and c["alpha"] == -n * c["mu"] and c["alpha"] >= 0


def _thm_HS_2(spec, n, **_):
    c, m = spec.coefficients(n), spec.m(n)
    return _hs_shape(c) and m != n and c["alpha"] >= -m * c["mu"] >= 0


def _prop_HS_lincomb(spec, n, rho=None, eta=None, **_):
    if rho is None or eta is None:
        raise MissingParams("prop_HS_lincomb needs rho and eta")
    c, m = spec.coefficients(n), spec.m(n)
    rho, eta = as_rational(rho), as_rational(eta)
    b, g, v, f = c["beta"], c["gamma"], c["nu"], c["phi"]
    return f >= 0 and rho >= 0 and (b + m * v) * v <= 0 and (b * f - g * v) * rho + f * eta >= 0


def _thm_sym_HS(spec, n, **_):
    c, m = spec.coefficients(n), spec.m(n)
    mu, nu, beta = c["mu"], c["nu"], c["beta"]
    return mu + nu <= 0 and 2 * beta + m * (mu + nu) >= 0


def _need(params: dict, *keys):
    missing = [k for k in keys if k not in params]
    if missing:
        raise MissingParams(f"missing parameters {missing}")
    return [as_rational(params[k]) for k in keys]


def _prop_oper_A(params, n, **_):
    a1, a2, a3, b1, b2, b3 = _need(params, "a1", "a2", "a3", "b1", "b2", "b3")
    U = b1 * a2 - a1 * b2
    V = (b1 + b2 + b3) * a2 - (a1 + a3) * b2
    return V + n * U >= 0


def _cor_wang_yeh(params, n, **_):
    a1, a2, a3, b1, b2, b3 = _need(params, "a1", "a2", "a3", "b1", "b2", "b3")
    return a1 * b2 <= a2 * b1 and (a1 + a3) * b2 <= (b1 + b2 + b3) * a2


def _cor_swr(params, n, **_):
    a1, a2, b1, b2, lam = _need(params, "a1", "a2", "b1", "b2", "lam")
    return min(a1, a2, b1, b2, lam) >= 0 and a1 * (b1 + b2) >= a2 * b1


def _cor_gen_eulerian(params, n, **_):
    a1, a2, b1, b2, d, lam = _need(params, "a1", "a2", "b1", "b2", "d", "lam")
    return min(a1, b1, lam) > 0 and min(a2, b2, d) >= 0 and a2 + b2 > 0


def _cor_bell_turan(params, n, **_):
    a, b, c0, c1 = _need(params, "a", "b", "c0", "c1")
    # c_n = c0 + c1 n must be positive and nondecreasing
    return a != 0 and b >= 0 and c1 >= 0 and c0 > 0


def _thm_alter_incr(params, n, **_):
    lists = params.get("root_lists")
    if lists is None:
        raise MissingParams("thm_alter_incr needs root_lists")
    lists = [[as_rational(r) for r in rl] for rl in lists]
    for rk in lists:
        for rl in lists:
            m = len(rk)
            if len(rl) != m:
                return False
            for i in range(m):
                s = rk[i] + rl[m - 1 - i]
                if not 0 <= s <= 1:
                    return False
    return True


def _prop_euler_color_iii(params, n, **_):
    (r,) = _need(params, "r")
    q = params.get("q", [1])
    if not isinstance(q, (list, tuple)):
        q = [q]
    qs = [as_rational(q[i % len(q)]) for i in range(n)]
    if r < 2 or any(v < 0 for v in qs):
        return False
    c = [q_integer(int(r), v) for v in qs]
    return all(0 <= c[i] + c[n - 1 - i] <= c[i] * c[n - 1 - i] for i in range(n))


_SPEC_CRITERIA = {
    "thm_FG": _thm_FG,
    "thm_RS_1": _thm_RS_1,
    "thm_RS_2": _thm_RS_2,
    "thm_HS_1": _thm_HS_1,
    "thm_HS_2": _thm_HS_2,
    "prop_HS_lincomb": _prop_HS_lincomb,
    "thm_sym_HS": _thm_sym_HS,
}

_PARAM_CRITERIA = {
    "prop_oper_A": _prop_oper_A,
    "cor_wang_yeh": _cor_wang_yeh,
    "cor_swr": _cor_swr,
    "cor_gen_eulerian": _cor_gen_eulerian,
    "cor_bell_turan": _cor_bell_turan,
    "thm_alter_incr": _thm_alter_incr,
    "prop_euler_color_iii": _prop_euler_color_iii,
}

CRITERIA = tuple(sorted(_SPEC_CRITERIA) + sorted(_PARAM_CRITERIA))


def criterion_check(theorem_id: str, spec, n: int, **extra) -> bool:
    """Evaluate the hypothesis of a stability result at index n.

    ``spec`` is a RecurrenceSpec for the recurrence-level criteria, or a
    parameter map.  A map with a ``family`` key is turned into that
    family's spec when a recurrence is needed.
    """
    if theorem_id in _SPEC_CRITERIA:
        if isinstance(spec, dict):
            if "family" not in spec:
                raise MissingParams(f"{theorem_id} needs a recurrence spec or a 'family' entry")
            params = {k: v for k, v in spec.items() if k != "family"}
            spec = family_spec(spec["family"], params)
        return bool(_SPEC_CRITERIA[theorem_id](spec, n, **extra))
    if theorem_id in _PARAM_CRITERIA:
        if not isinstance(spec, dict):
            raise MissingParams(f"{theorem_id} needs a parameter map")
        return bool(_PARAM_CRITERIA[theorem_id](spec, n, **extra))
    raise UnknownCriterion(theorem_id)


def linear_combination(T_table, spec: RecurrenceSpec, rho, eta, n: int) -> Poly:
    """(phi - nu x) rho T_{n+1} + [phi eta x + (phi - gamma) phi rho] T_n."""
    c = spec.coefficients(n)
    if c["alpha"] != 0 or c["mu"] != 0 or c["psi"] != 0:
        raise PreconditionViolated("linear combination needs alpha = mu = psi = 0")
    rho, eta = as_rational(rho), as_rational(eta)
    f, v, g = c["phi"], c["nu"], c["gamma"]
    return Poly([f * rho, -v * rho]) * _at(T_table, n + 1) + Poly([(f - g) * f * rho, f * eta]) * _at(T_table, n)
