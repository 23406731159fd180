"""Exact real-root counting, isolation and interlacing orders.

Everything is decided with Sturm sequences over the rationals.  Roots of two
polynomials are compared by isolating the distinct roots of the squarefree
part of their product: equal roots then share an isolating interval, which
makes the weak orders decidable without floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactpoly import (
    Poly,
    derivative,
    exact_div,
    gcd,
    poly_divmod,
    primitive,
    primitive_same_sign,
    squarefree_part,
)

__all__ = [
    "ZeroPolynomial",
    "EndpointIsRoot",
    "PreconditionViolated",
    "RootEntry",
    "RootIntervals",
    "InterlaceVerdict",
    "sturm_chain",
    "sturm_count",
    "squarefree_factorization",
    "real_root_count",
    "is_real_rooted",
    "isolate_roots",
    "interlacing_relation",
    "wronskian_sign_test",
    "cauchy_bound",
]


class ZeroPolynomial(ValueError):
    pass


class EndpointIsRoot(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def sturm_chain(p: Poly) -> list[Poly]:
    """p, p', -rem(...), ... with every term rescaled by a positive constant."""
    if p.is_zero():
        raise ZeroPolynomial("Sturm chain of the zero polynomial")
    chain = [primitive_same_sign(p)]
    d = derivative(p)
    if d.is_zero():
        return chain
    chain.append(primitive_same_sign(d))
    while True:
        _, r = poly_divmod(chain[-2], chain[-1])
        if r.is_zero():
            return chain
        chain.append(primitive_same_sign(-r))


def _int_sign_at(coeffs, a: int, b: int) -> int:
    # sign of sum c_i a^i b^(d-i), which is b^d p(a/b) with b > 0
    acc, bp = coeffs[-1], 1
    for c in reversed(coeffs[:-1]):
        bp *= b
        acc = acc * a + c * bp
    return _sgn(acc)


def _signs_at(chain: list[Poly], x) -> list[int]:
    # chain members carry integer coefficients, so stay in integer arithmetic
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    return [s for s in (_int_sign_at(q.coeffs, a, b) for q in chain) if s]


def _signs_at_inf(chain: list[Poly], positive: bool) -> list[int]:
    out = []
    for q in chain:
        s = _sgn(q.lead)
        if not positive and q.degree % 2:
            s = -s
        out.append(s)
    return out


def _variations(signs: list[int]) -> int:
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_chain(chain: list[Poly], a, b) -> int:
    # a, b may be None for -inf / +inf
    va = _variations(_signs_at_inf(chain, False) if a is None else _signs_at(chain, a))
    vb = _variations(_signs_at_inf(chain, True) if b is None else _signs_at(chain, b))
    return va - vb


def sturm_count(p: Poly, a, b) -> int:
    """Number of distinct real roots of p in the open interval (a, b)."""
    if p.is_zero():
        raise ZeroPolynomial("sturm_count of the zero polynomial")
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    if p(a) == 0 or p(b) == 0:
        raise EndpointIsRoot(f"endpoint is a root of {p}")
    return _count_chain(sturm_chain(p), a, b)


def squarefree_factorization(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = c * prod f_k^k with f_k squarefree, coprime.

    Constant factors are dropped; each f_k is primitive.
    """
    if p.is_zero():
        raise ZeroPolynomial("factorization of the zero polynomial")
    if p.is_constant():
        return []
    out = []
    d = derivative(p)
    c = gcd(p, d)
    w = exact_div(p, c)
    y = exact_div(d, c)
    z = y - derivative(w)
    k = 1
    while not w.is_constant():
        g = gcd(w, z)
        if not g.is_constant():
            out.append((primitive(g), k))
        w = exact_div(w, g)
        y = exact_div(z, g)
        z = y - derivative(w)
        k += 1
    return out


def real_root_count(p: Poly) -> int:
    """Real roots of p counted with multiplicity."""
    return sum(k * _count_chain(sturm_chain(f), None, None) for f, k in squarefree_factorization(p))


def is_real_rooted(p: Poly) -> bool:
    if p.is_zero():
        raise ZeroPolynomial("is_real_rooted of the zero polynomial")
    return real_root_count(p) == p.degree


def cauchy_bound(p: Poly) -> Fraction:
    """All roots of p lie in the open disc of this radius."""
    lead = Fraction(p.lead)
    return 1 + max((abs(Fraction(a) / lead) for a in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RootEntry:
    """A distinct real root: exact point when lo == hi, else inside (lo, hi)."""

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def as_dict(self) -> dict:
        f = lambda v: f"{v.numerator}/{v.denominator}"
        if self.exact:
            return {"point": f(self.lo), "multiplicity": self.multiplicity}
        return {"interval": [f(self.lo), f(self.hi)], "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class RootIntervals:
    entries: tuple[RootEntry, ...] = ()

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def as_list(self) -> list[dict]:
        return [e.as_dict() for e in self.entries]


def _isolate_squarefree(q: Poly, lo=None, hi=None) -> list[RootEntry]:
    """Isolate the real roots of a squarefree q, ascending."""
    if q.is_constant():
        return []
    chain = sturm_chain(q)
    if lo is None:
        B = cauchy_bound(q)
        lo, hi = -B, B
    total = _count_chain(chain, lo, hi)
    out: list[RootEntry] = []
    stack = [(lo, hi, total)]
    while stack:
        a, b, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            out.append(RootEntry(a, b))
            continue
        m = (a + b) / 2
        if q(m) == 0:
            out.append(RootEntry(m, m))
            eps = (b - a) / 4
            while q(m - eps) == 0 or q(m + eps) == 0 or _count_chain(chain, m - eps, m + eps) != 1:
                eps /= 2
            left, right = (a, m - eps), (m + eps, b)
        else:
            left, right = (a, m), (m, b)
        cl = _count_chain(chain, *left)
        stack.append((left[0], left[1], cl))
        stack.append((right[0], right[1], c - cl - (1 if left[1] != right[0] else 0)))
    out.sort(key=lambda e: e.lo)
    return out


def _refine_to_rational(q: Poly, e: RootEntry, chain) -> RootEntry:
    """Shrink an isolating interval until it either pins a rational root or
    provably holds none with denominator dividing the leading coefficient."""
    if e.exact:
        return e
    lead = abs(primitive(q).lead)
    a, b = e.lo, e.hi
    # two distinct fractions with denominators <= lead differ by >= 1/lead^2
    while b - a >= Fraction(1, lead * lead):
        m = (a + b) / 2
        if q(m) == 0:
            return RootEntry(m, m, e.multiplicity)
        if _count_chain(chain, a, m) == 1:
            b = m
        else:
            a = m
    cand = ((a + b) / 2).limit_denominator(lead)
    if a < cand < b and q(cand) == 0:
        return RootEntry(cand, cand, e.multiplicity)
    return RootEntry(a, b, e.multiplicity)


def isolate_roots(p: Poly, exact_rationals: bool = True) -> RootIntervals:
    """Disjoint sorted isolating data for the distinct real roots of p."""
    if p.is_zero():
        raise ZeroPolynomial("isolate_roots of the zero polynomial")
    q = squarefree_part(p)
    entries = _isolate_squarefree(q)
    if exact_rationals and entries:
        chain = sturm_chain(q)
        entries = [_refine_to_rational(q, e, chain) for e in entries]
    mult = _multiplicities(p, entries)
    return RootIntervals(tuple(RootEntry(e.lo, e.hi, k) for e, k in zip(entries, mult)))


def _multiplicities(h: Poly, entries: list[RootEntry]) -> list[int]:
    """Multiplicity in h of the root isolated by each entry (0 if absent)."""
    m = [0] * len(entries)
    for fac, k in squarefree_factorization(h):
        chain = sturm_chain(fac)
        for i, e in enumerate(entries):
            hit = fac(e.lo) == 0 if e.exact else _count_chain(chain, e.lo, e.hi) > 0
            if hit:
                m[i] += k
    return m


# ---------------------------------------------------------------------------
# interlacing


def _root_profile(f: Poly, g: Poly):
    """Distinct real roots of f*g ascending, with multiplicities in f and g."""
    entries = _isolate_squarefree(squarefree_part(f * g))
    return entries, _multiplicities(f, entries), _multiplicities(g, entries)


def _expand_desc(mult: list[int]) -> list[int]:
    """Root ids (index into ascending distinct roots), largest first."""
    out = []
    for i in range(len(mult) - 1, -1, -1):
        out.extend([i] * mult[i])
    return out


def _chain_ok(s: list[int], r: list[int]) -> tuple[bool, bool]:
    """Does the g-roots s (desc) precede the f-roots r (desc)?  Returns
    (weak, strict) for the interlace / alternate-left chains."""
    n = len(r)
    if len(s) == n - 1:
        pairs = [(r[i + 1], s[i]) for i in range(n - 1)] + [(s[i], r[i]) for i in range(n - 1)]
    elif len(s) == n:
        pairs = [(s[i], r[i]) for i in range(n)] + [(r[i + 1], s[i]) for i in range(n - 1)]
    else:
        return False, False
    weak = all(lo <= hi for lo, hi in pairs)
    strict = weak and all(lo < hi for lo, hi in pairs)
    return weak, strict


@dataclass(frozen=True)
class InterlaceVerdict:
    """Outcome of comparing g against f.

    ``relation`` is a label; the boolean fields carry the full answer.
    """

    relation: str
    g_preceq_f: bool
    f_preceq_g: bool
    g_ll_f: bool
    f_ll_g: bool
    strict: bool
    witness: tuple = field(default=(), compare=False)
    zero_convention: bool = False

    @property
    def comparable(self) -> bool:
        return self.g_preceq_f or self.f_preceq_g


def _profile_witness(entries, mf, mg) -> tuple:
    out = []
    for e, a, b in zip(entries, mf, mg):
        d = RootEntry(e.lo, e.hi).as_dict()
        d.pop("multiplicity")
        d.update({"mult_f": a, "mult_g": b})
        out.append(d)
    return tuple(out)


def interlacing_relation(g: Poly, f: Poly) -> InterlaceVerdict:
    if g.is_zero() or f.is_zero():
        return InterlaceVerdict("g_ll_f", True, True, True, True, False, (), True)
    if not (is_real_rooted(g) and is_real_rooted(f)):
        return InterlaceVerdict("not_comparable", False, False, False, False, False)
    entries, mf, mg = _root_profile(f, g)
    r, s = _expand_desc(mf), _expand_desc(mg)
    gf, gf_strict = _chain_ok(s, r)
    fg, fg_strict = _chain_ok(r, s)
    same = (g.lead > 0) == (f.lead > 0)
    g_ll_f = (gf and same) or (fg and not same)
    f_ll_g = (fg and same) or (gf and not same)
    strict_gllf = (gf and same and gf_strict) or (fg and not same and fg_strict)
    strict_fllg = (fg and same and fg_strict) or (gf and not same and gf_strict)
    if g_ll_f and strict_gllf:
        rel = "g_ll_f"
    elif f_ll_g and strict_fllg:
        rel = "f_ll_g"
    elif gf:
        rel = "g_precedes_f_strict" if gf_strict else "g_precedes_f_weak"
    elif fg:
        rel = "f_precedes_g_strict" if fg_strict else "f_precedes_g_weak"
    else:
        rel = "not_comparable"
    strict = (gf and gf_strict) or (fg and fg_strict)
    return InterlaceVerdict(rel, gf, fg, g_ll_f, f_ll_g, strict, _profile_witness(entries, mf, mg))


def wronskian_sign_test(g: Poly, f: Poly) -> bool:
    """Hermite-Kakeya-Obreschkoff style decider for comparability of f and g.

    With c = gcd(f, g), f = c f1, g = c g1, the Wronskian factors as
    W(f, g) = c^2 W(f1, g1).  The pair is comparable iff W(f1, g1) is
    identically zero or has no real zero.  This is constant sign of W plus
    the requirement that W only vanishes where the common factor forces it.
    """
    if g.is_zero() and f.is_zero():
        raise PreconditionViolated("both polynomials are zero")
    for h in (f, g):
        if not h.is_zero() and not is_real_rooted(h):
            raise PreconditionViolated(f"{h} is not real-rooted")
    if g.is_zero() or f.is_zero():
        return True
    c = gcd(f, g)
    f1, g1 = exact_div(f, c), exact_div(g, c)
    w = derivative(f1) * g1 - f1 * derivative(g1)
    if w.is_zero():
        return True
    return real_root_count(w) == 0
