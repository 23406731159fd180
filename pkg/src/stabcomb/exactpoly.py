"""Exact dense univariate polynomials over the rationals.

Coefficients are stored as Python ints when integral and as
``fractions.Fraction`` otherwise.  Both are exact, so nothing in this module
ever rounds.  Keeping integral coefficients as plain ints is what makes the
family recurrences fast: most family polynomials never leave the integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd as igcd, lcm as ilcm
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "Poly",
    "ZERO_DEGREE",
    "DegreeTooLarge",
    "InexactDivision",
    "as_rational",
    "mul",
    "derivative",
    "reciprocal",
    "reflect",
    "even_odd_split",
    "gcd",
    "squarefree_part",
    "exact_div",
    "moebius_numerator",
    "primitive",
    "shift",
    "subs_power",
    "x_power_strip",
]

# Degree of the zero polynomial: below every natural and absorbing under +.
ZERO_DEGREE = float("-inf")


class DegreeTooLarge(ValueError):
    pass


class InexactDivision(ArithmeticError):
    pass


def as_rational(a) -> int | Fraction:
    """Normalize a scalar to int (if integral) or Fraction."""
    if isinstance(a, bool):
        return int(a)
    if isinstance(a, int):
        return a
    if isinstance(a, Fraction):
        return a.numerator if a.denominator == 1 else a
    if isinstance(a, (str, Rational)):
        f = Fraction(a)
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"not an exact rational: {a!r}")


def _norm(a):
    # hot path: skip checks for the two storage types
    if type(a) is int:
        return a
    if type(a) is Fraction:
        return a.numerator if a.denominator == 1 else a
    return as_rational(a)


class Poly:
    """Immutable dense polynomial; ``coeffs[k]`` multiplies ``x**k``."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        c = [_norm(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple = tuple(c)
        self._hash = None

    @classmethod
    def _raw(cls, c: list) -> "Poly":
        # trusted constructor: entries already normalized
        while c and c[-1] == 0:
            c.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(c)
        p._hash = None
        return p

    @classmethod
    def const(cls, a) -> "Poly":
        return cls([a])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, a=1) -> "Poly":
        return cls([0] * k + [a])

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Parse a comma-separated coefficient list such as ``"1,4,1"`` or ``"1/2,0,-3"``."""
        text = text.strip()
        if not text:
            return cls()
        return cls(Fraction(t.strip()) for t in text.split(","))

    # -- basic queries -------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return _norm(acc) if isinstance(acc, (int, Fraction)) else acc

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    # -- ring operations -----------------------------------------------

    def __neg__(self):
        return Poly._raw([-a for a in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, v in enumerate(b):
            c[i] = _norm(c[i] + v)
        return Poly._raw(c)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other):
        return Poly([other]) - self

    def __mul__(self, other):
        if isinstance(other, Poly):
            return mul(self, other)
        s = _norm(other)
        if s == 0:
            return Poly()
        return Poly._raw([_norm(a * s) for a in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, s):
        # scalar division only
        if isinstance(s, Poly):
            raise TypeError("use exact_div or divmod for polynomial division")
        s = Fraction(s)
        return Poly._raw([_norm(a / s) for a in self.coeffs])

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out, base = Poly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "Poly"):
        return poly_divmod(self, other)

    # -- display ---------------------------------------------------------

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and a == 1:
                term = mono
            elif mono and a == -1:
                term = "-" + mono
            else:
                s = str(a)
                if isinstance(a, Fraction) and mono:
                    s = f"({s})"
                term = s + ("*" + mono if mono else "")
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")

    def to_strings(self) -> list[str]:
        """Coefficients as exact ``num/den`` strings."""
        out = []
        for a in self.coeffs:
            f = Fraction(a)
            out.append(f"{f.numerator}/{f.denominator}")
        return out


# ---------------------------------------------------------------------------


def mul(p: Poly, q: Poly) -> Poly:
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return Poly()
    if len(a) < len(b):
        a, b = b, a
    c = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj == 0:
            continue
        for i, ai in enumerate(a):
            c[i + j] += ai * bj
    return Poly._raw([_norm(v) for v in c])


def derivative(p: Poly) -> Poly:
    return Poly._raw([_norm(k * a) for k, a in enumerate(p.coeffs)][1:])


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p.coeffs)
    dq = len(q.coeffs) - 1
    if len(r) - 1 < dq:
        return Poly(), p
    lq = q.coeffs[-1]
    quo = [0] * (len(r) - dq)
    qc = q.coeffs
    for k in range(len(r) - 1 - dq, -1, -1):
        top = r[k + dq]
        if top == 0:
            continue
        if type(top) is int and type(lq) is int:
            c = top // lq if top % lq == 0 else Fraction(top, lq)
        else:
            c = _norm(Fraction(top) / lq)
        quo[k] = c
        for i, b in enumerate(qc):
            r[k + i] -= c * b
    rem = [_norm(v) for v in r[:dq]]
    return Poly._raw(quo), Poly._raw(rem)


def exact_div(p: Poly, q: Poly) -> Poly:
    quo, rem = poly_divmod(p, q)
    if not rem.is_zero():
        raise InexactDivision(f"({p}) / ({q}) leaves remainder {rem}")
    return quo


def monic(p: Poly) -> Poly:
    if p.is_zero():
        return p
    return p / p.lead


def primitive(p: Poly) -> Poly:
    """Scale to coprime integer coefficients with positive leading coefficient."""
    if p.is_zero():
        return p
    p = primitive_same_sign(p)
    return -p if p.lead < 0 else p


def primitive_same_sign(p: Poly) -> Poly:
    """Scale by a positive rational to coprime integer coefficients."""
    if p.is_zero():
        return p
    den = 1
    for a in p.coeffs:
        if type(a) is Fraction:
            den = ilcm(den, a.denominator)
    ints = [int(a * den) for a in p.coeffs]
    g = 0
    for v in ints:
        g = igcd(g, v)
    return Poly._raw([v // g for v in ints])


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = primitive(p), primitive(q)
    while not b.is_zero():
        _, r = poly_divmod(a, b)
        a, b = b, primitive(r)
    return monic(a)


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero():
        return p
    if p.is_constant():
        return Poly([1])
    return primitive(exact_div(p, gcd(p, derivative(p))))


def _check_degree(p: Poly, n: int):
    if p.degree > n:
        raise DegreeTooLarge(f"degree {p.degree} exceeds n={n}")


def moebius_numerator(p: Poly, n: int, a, b, c, d) -> Poly:
    """Return (cx+d)^n * p((ax+b)/(cx+d)) expanded exactly."""
    _check_degree(p, n)
    num = Poly([b, a])
    den = Poly([d, c])
    if num.is_zero() and den.is_zero():
        raise ValueError("degenerate Moebius map")
    # Horner in the homogenized form: sum p_k num^k den^(n-k)
    num_pows = [Poly([1])]
    for _ in range(n):
        num_pows.append(num_pows[-1] * num)
    out = Poly()
    den_pow = Poly([1])
    for k in range(n, -1, -1):
        pk = p[k]
        if pk != 0:
            out = out + num_pows[k] * den_pow * pk
        den_pow = den_pow * den
    return out


def reciprocal(p: Poly, n: int) -> Poly:
    """x^n p(1/x)."""
    _check_degree(p, n)
    c = list(p.coeffs) + [0] * (n + 1 - len(p.coeffs))
    return Poly._raw(c[::-1])


def reflect(p: Poly, n: int) -> Poly:
    """(-1)^n p(-1-x)."""
    return moebius_numerator(p, n, 1, 1, 0, -1)


def shift(p: Poly, s) -> Poly:
    """p(x + s)."""
    if p.is_zero():
        return p
    return moebius_numerator(p, p.degree, 1, s, 0, 1)


def even_odd_split(p: Poly) -> tuple[Poly, Poly]:
    """(fE, fO) with p(x) = fE(x^2) + x fO(x^2)."""
    return Poly._raw(list(p.coeffs[0::2])), Poly._raw(list(p.coeffs[1::2]))


def subs_power(p: Poly, k: int) -> Poly:
    """p(x^k)."""
    if p.is_zero():
        return p
    c = [0] * (k * p.degree + 1)
    for i, a in enumerate(p.coeffs):
        c[k * i] = a
    return Poly._raw(c)


def x_power_strip(p: Poly) -> tuple[Poly, int]:
    """Split p = x^k q with q(0) != 0; the zero polynomial returns (0, 0)."""
    k = 0
    while k < len(p.coeffs) and p.coeffs[k] == 0:
        k += 1
    if k == len(p.coeffs):
        return p, 0
    return Poly._raw(list(p.coeffs[k:])), k


def binomial_power(a, b, n: int) -> Poly:
    """(a + b x)^n via the binomial theorem."""
    a, b = _norm(a), _norm(b)
    return Poly._raw([_norm(comb(n, k) * a ** (n - k) * b**k) for k in range(n + 1)])


def poly_sum(polys: Sequence[Poly]) -> Poly:
    width = max((len(p) for p in polys), default=0)
    c = [0] * width
    for p in polys:
        for i, a in enumerate(p.coeffs):
            c[i] += a
    return Poly._raw([_norm(v) for v in c])
