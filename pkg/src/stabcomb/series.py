"""Truncated power series.

``Series`` is a power series in t whose coefficients are polynomials in x;
``XSeries`` is a power series in x with rational coefficients.  Both carry an
explicit truncation order and never look past it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from .exactpoly import Poly, as_rational

__all__ = [
    "Series",
    "XSeries",
    "NonUnitConstantTerm",
    "series_mul",
    "series_reciprocal",
    "series_int_pow",
    "trig_series",
    "jcf_expand",
    "binomial_xseries",
    "xD_pow",
]


class NonUnitConstantTerm(ArithmeticError):
    pass


@dataclass(frozen=True)
class Series:
    order: int
    coeffs: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("Series needs exactly order+1 coefficients")

    @classmethod
    def from_polys(cls, polys: Sequence, order: int) -> "Series":
        c = [p if isinstance(p, Poly) else Poly([p]) for p in list(polys)[: order + 1]]
        c += [Poly()] * (order + 1 - len(c))
        return cls(order, tuple(c))

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.from_polys([Poly([1])], order)

    def __getitem__(self, n: int) -> Poly:
        return self.coeffs[n]

    def __add__(self, other: "Series") -> "Series":
        m = min(self.order, other.order)
        return Series(m, tuple(self.coeffs[i] + other.coeffs[i] for i in range(m + 1)))

    def __sub__(self, other: "Series") -> "Series":
        m = min(self.order, other.order)
        return Series(m, tuple(self.coeffs[i] - other.coeffs[i] for i in range(m + 1)))

    def __mul__(self, other):
        if isinstance(other, Series):
            return series_mul(self, other)
        return Series(self.order, tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def scale_t(self, c) -> "Series":
        """Substitute t -> c t."""
        c = as_rational(c)
        return Series(self.order, tuple(a * c**i for i, a in enumerate(self.coeffs)))


def series_mul(a: Series, b: Series) -> Series:
    m = min(a.order, b.order)
    out = []
    for n in range(m + 1):
        acc = Poly()
        for i in range(n + 1):
            if a.coeffs[i] and b.coeffs[n - i]:
                acc = acc + a.coeffs[i] * b.coeffs[n - i]
        out.append(acc)
    return Series(m, tuple(out))


def series_reciprocal(a: Series) -> Series:
    c0 = a.coeffs[0]
    if c0.degree != 0:
        raise NonUnitConstantTerm(f"constant term {c0} is not a nonzero constant")
    inv = Fraction(1) / Fraction(c0.lead)
    out = [Poly([inv])]
    for n in range(1, a.order + 1):
        acc = Poly()
        for i in range(1, n + 1):
            if a.coeffs[i]:
                acc = acc + a.coeffs[i] * out[n - i]
        out.append(acc * (-inv))
    return Series(a.order, tuple(out))


def series_int_pow(a: Series, k: int) -> Series:
    if k < 0:
        raise ValueError("negative exponent")
    out, base = Series.one(a.order), a
    while k:
        if k & 1:
            out = series_mul(out, base)
        base = series_mul(base, base)
        k >>= 1
    return out


def trig_series(a: Poly, order: int) -> tuple[Series, Series]:
    """(cos(a t), sin(a t)) truncated at t^order."""
    cos, sin = [], []
    apow = Poly([1])
    for n in range(order + 1):
        term = apow * Fraction(1, factorial(n))
        sign = -1 if (n // 2) % 2 else 1
        if n % 2 == 0:
            cos.append(term * sign)
            sin.append(Poly())
        else:
            cos.append(Poly())
            sin.append(term * sign)
        apow = apow * a
    return Series(order, tuple(cos)), Series(order, tuple(sin))


def jcf_expand(r: Callable[[int], Poly], s: Callable[[int], Poly], order: int, depth: int | None = None) -> Series:
    """Expand 1/(1 - r0 t - s1 t^2/(1 - r1 t - s2 t^2/(...))) to t^order.

    Evaluated from the innermost level outward; ``depth`` defaults to order.
    """
    depth = order if depth is None else depth
    tail = Series.one(order)
    for i in range(depth, -1, -1):
        c = [Poly([1])] + [Poly()] * order
        if order >= 1:
            c[1] = -_as_poly(r(i))
        si = _as_poly(s(i + 1))
        for k in range(2, order + 1):
            c[k] = c[k] - si * tail.coeffs[k - 2]
        tail = series_reciprocal(Series(order, tuple(c)))
    return tail


def _as_poly(v) -> Poly:
    return v if isinstance(v, Poly) else Poly([v])


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class XSeries:
    order: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("XSeries needs exactly order+1 coefficients")

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "XSeries":
        return cls(order, tuple(p[i] for i in range(order + 1)))

    @classmethod
    def from_list(cls, c: Sequence, order: int) -> "XSeries":
        c = [as_rational(v) for v in list(c)[: order + 1]]
        return cls(order, tuple(c + [0] * (order + 1 - len(c))))

    def __getitem__(self, m: int):
        return self.coeffs[m]

    def __mul__(self, other):
        if isinstance(other, XSeries):
            m = min(self.order, other.order)
            a, b = self.coeffs, other.coeffs
            return XSeries(m, tuple(as_rational(sum(a[i] * b[n - i] for i in range(n + 1))) for n in range(m + 1)))
        if isinstance(other, Poly):
            return self * XSeries.from_poly(other, self.order)
        return XSeries(self.order, tuple(as_rational(c * other) for c in self.coeffs))

    __rmul__ = __mul__

    def __sub__(self, other: "XSeries") -> "XSeries":
        m = min(self.order, other.order)
        return XSeries(m, tuple(as_rational(self.coeffs[i] - other.coeffs[i]) for i in range(m + 1)))


def binomial_xseries(c, alpha, order: int) -> XSeries:
    """(1 + c x)^alpha by the generalized binomial series."""
    c, alpha = Fraction(c), Fraction(alpha)
    out = [Fraction(1)]
    for k in range(1, order + 1):
        out.append(out[-1] * (alpha - k + 1) / k * c)
    return XSeries.from_list(out, order)


def xD_pow(f: XSeries, n: int) -> XSeries:
    """(x d/dx)^n: the x^m coefficient is multiplied by m^n (0^0 = 1)."""
    return XSeries(f.order, tuple(as_rational(m**n * a) for m, a in enumerate(f.coeffs)))
