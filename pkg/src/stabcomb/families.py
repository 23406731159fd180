"""Polynomial families built from one generic recurrence engine.

Almost every family here satisfies

    T_{n+1} = (a x^2 + b x + c) T_n + (m x^3 + v x^2 + f x + s) T_n'

for coefficient sequences depending on n.  A ``RecurrenceSpec`` stores those
seven sequences with a seed, and ``generate_T`` runs it.  The registry maps
family names to specs (or, for the counting families, to h-polynomial
builders).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Sequence

from .config import SizeGuardExceeded, current_limits
from .exactpoly import Poly, as_rational, derivative, even_odd_split, exact_div, subs_power

__all__ = [
    "RecurrenceSpec",
    "FamilyTable",
    "Triangle",
    "DegreeLawViolation",
    "UnknownFamily",
    "BadParams",
    "MissingSeed",
    "NotPolynomialCounting",
    "generate_T",
    "family",
    "triangle",
    "family_spec",
    "family_offset",
    "family_names",
    "triangle_names",
    "h_from_counts",
    "carlitz_h",
    "q_integer",
    "signed_multiset_poly",
]


class DegreeLawViolation(ArithmeticError):
    def __init__(self, n: int, expected: int, got):
        super().__init__(f"degree at n={n} is {got}, law says {expected}")
        self.n = n


class UnknownFamily(KeyError):
    pass


class BadParams(ValueError):
    pass


class MissingSeed(BadParams):
    pass


class NotPolynomialCounting(ValueError):
    pass


Coef = Callable[[int], object]


def _c(v) -> Coef:
    v = as_rational(v)
    return lambda n: v


ZERO = _c(0)


@dataclass(frozen=True)
class RecurrenceSpec:
    """Coefficient sequences of the master recurrence, indexed by the n of T_n."""

    alpha: Coef = ZERO
    beta: Coef = ZERO
    gamma: Coef = ZERO
    mu: Coef = ZERO
    nu: Coef = ZERO
    phi: Coef = ZERO
    psi: Coef = ZERO
    seed: Poly = field(default_factory=lambda: Poly([1]))
    seed_index: int = 0
    degree_law: Callable[[int], int] | None = None

    def coefficients(self, n: int) -> dict:
        return {
            k: as_rational(getattr(self, k)(n))
            for k in ("alpha", "beta", "gamma", "mu", "nu", "phi", "psi")
        }

    def m(self, n: int) -> int:
        """Degree of T_n according to the law."""
        if self.degree_law is None:
            raise BadParams("spec has no degree law")
        return self.degree_law(n)

    def multiplier(self, n: int) -> Poly:
        c = self.coefficients(n)
        return Poly([c["gamma"], c["beta"], c["alpha"]])

    def operator(self, n: int) -> Poly:
        c = self.coefficients(n)
        return Poly([c["psi"], c["phi"], c["nu"], c["mu"]])

    def step(self, T: Poly, n: int) -> Poly:
        return self.multiplier(n) * T + self.operator(n) * derivative(T)


def generate_T(spec: RecurrenceSpec, N: int) -> list[Poly]:
    """T_{seed_index}, ..., T_N."""
    if N < spec.seed_index:
        raise BadParams(f"N={N} is below the seed index {spec.seed_index}")
    out = [spec.seed]
    law = spec.degree_law
    if law is not None and spec.seed.degree != law(spec.seed_index):
        raise DegreeLawViolation(spec.seed_index, law(spec.seed_index), spec.seed.degree)
    T = spec.seed
    for n in range(spec.seed_index, N):
        T = spec.step(T, n)
        if law is not None and T.degree != law(n + 1):
            raise DegreeLawViolation(n + 1, law(n + 1), T.degree)
        out.append(T)
    return out


def two_term_law(beta: Coef, nu: Coef, seed_degree: int, seed_index: int) -> Callable[[int], int]:
    """Degree law when alpha = mu = 0: the degree grows exactly when beta + m nu != 0."""
    cache = {seed_index: seed_degree}

    def law(n: int) -> int:
        k = max(i for i in cache if i <= n) if n >= seed_index else seed_index
        m = cache[k]
        while k < n:
            if as_rational(beta(k)) + m * as_rational(nu(k)) != 0:
                m += 1
            k += 1
            cache[k] = m
        return m

    return law


@dataclass(frozen=True)
class FamilyTable:
    name: str
    params: dict
    polys: tuple[Poly, ...]
    offset: int = 0

    def __getitem__(self, n: int) -> Poly:
        if not self.offset <= n < self.offset + len(self.polys):
            raise IndexError(f"{self.name} has no entry at n={n}")
        return self.polys[n - self.offset]

    def __len__(self):
        return len(self.polys)

    @property
    def indices(self) -> range:
        return range(self.offset, self.offset + len(self.polys))

    @property
    def last(self) -> int:
        return self.offset + len(self.polys) - 1

    def items(self):
        return zip(self.indices, self.polys)


@dataclass(frozen=True)
class Triangle:
    name: str
    params: dict
    rows: tuple[tuple, ...]
    offset: int = 0

    def row(self, n: int) -> tuple:
        return self.rows[n - self.offset]

    def entry(self, n: int, k: int):
        r = self.row(n)
        return r[k] if 0 <= k < len(r) else 0

    def row_poly(self, n: int) -> Poly:
        return Poly(self.row(n))

    @property
    def indices(self) -> range:
        return range(self.offset, self.offset + len(self.rows))


# ---------------------------------------------------------------------------
# parameters


def _num(params: dict, key: str):
    if key not in params:
        raise BadParams(f"missing parameter {key!r}")
    try:
        return as_rational(params[key])
    except (TypeError, ValueError) as exc:
        raise BadParams(f"parameter {key!r} is not rational: {params[key]!r}") from exc


def _nat(params: dict, key: str, lo: int = 0) -> int:
    v = _num(params, key)
    if not isinstance(v, int) or v < lo:
        raise BadParams(f"parameter {key!r} must be an integer >= {lo}")
    return v


def _seq(params: dict, key: str) -> list:
    v = params.get(key)
    if v is None:
        raise BadParams(f"missing parameter {key!r}")
    if isinstance(v, str):
        v = [t for t in v.replace(":", " ").replace(";", " ").split()]
    elif not isinstance(v, (list, tuple)):
        v = [v]
    try:
        return [as_rational(a) for a in v]
    except (TypeError, ValueError) as exc:
        raise BadParams(f"parameter {key!r} must be a list of rationals") from exc


def _poly_param(params: dict, key: str) -> Poly | None:
    v = params.get(key)
    if v is None:
        return None
    if isinstance(v, Poly):
        return v
    return Poly(_seq(params, key))


def q_integer(r: int, q) -> object:
    """[r]_q = 1 + q + ... + q^(r-1)."""
    return as_rational(sum(Fraction(q) ** i for i in range(r)))


# ---------------------------------------------------------------------------
# recurrence specs of the registry


def _spec_eulerian(p):
    return RecurrenceSpec(beta=lambda n: n, gamma=_c(1), nu=_c(-1), phi=_c(1),
                          degree_law=lambda n: max(n - 1, 0))


def _spec_r_eulerian(p):
    r = _nat(p, "r", 1)
    return RecurrenceSpec(beta=lambda n: n + 1 - r, gamma=_c(r), nu=_c(-1), phi=_c(1),
                          seed=Poly([factorial(r)]), seed_index=r, degree_law=lambda n: n - r)


def _spec_j_poly(p):
    r = _nat(p, "r", 1)
    seed = _poly_param(p, "seed") or Poly([1])
    d = seed.degree
    return RecurrenceSpec(beta=lambda n: n, gamma=_c(1), nu=_c(-1), phi=_c(1),
                          seed=seed, seed_index=r, degree_law=lambda n: d + n - r)


def _spec_mixed_chain(p):
    r = _nat(p, "r", 1)
    seed = _poly_param(p, "seed")
    if seed is None:
        raise MissingSeed("mixed_eulerian_chain needs a caller-supplied seed polynomial")
    n0 = _nat(p, "n0", r) if "n0" in p else r
    d = seed.degree
    if d != n0 - r:
        # the chain polynomial at n has degree n - r
        raise BadParams(f"seed at n0={n0} must have degree {n0 - r}, got {d}")
    return RecurrenceSpec(beta=lambda n: n - r + 1, gamma=_c(r), nu=_c(-1), phi=_c(1),
                          seed=seed, seed_index=n0, degree_law=lambda n: d + n - n0)


def _spec_alt_runs_A(p):
    return RecurrenceSpec(alpha=lambda n: n - 1, beta=_c(2), mu=_c(-1), phi=_c(1),
                          seed_index=1, degree_law=lambda n: n - 1)


def _spec_updown(p):
    return RecurrenceSpec(alpha=lambda n: n, beta=_c(1), mu=_c(-1), phi=_c(1), degree_law=lambda n: n)


def _spec_stirling_runs(p):
    return RecurrenceSpec(alpha=lambda n: 2 * n, beta=_c(1), mu=_c(-1), phi=_c(1),
                          degree_law=lambda n: 2 * n - 1 if n else 0)


def _spec_peaks_M(p):
    return RecurrenceSpec(alpha=lambda n: n, gamma=_c(1), mu=_c(-1), phi=_c(1),
                          seed=Poly([1, 1]), seed_index=1, degree_law=lambda n: n)


def _spec_alt_runs_B(p):
    return RecurrenceSpec(alpha=lambda n: 2 * n, beta=_c(3), gamma=_c(-1), mu=_c(-2), phi=_c(2),
                          seed=Poly([0, 1]), seed_index=1, degree_law=lambda n: n)


def _spec_bell(p):
    a, b, c0, c1 = (_num(p, k) for k in ("a", "b", "c0", "c1"))
    if a == 0:
        raise BadParams("bell needs a != 0")
    cn = lambda n: c0 + c1 * n
    law = two_term_law(lambda n: a * cn(n), ZERO, 0, 0)
    return RecurrenceSpec(beta=lambda n: a * cn(n), gamma=lambda n: a * b * cn(n), phi=_c(a), psi=_c(a * b),
                          degree_law=law)


def _spec_andre(p):
    return RecurrenceSpec(beta=lambda n: n + 1, nu=_c(-2), phi=_c(1), seed=Poly([0, 1]), seed_index=1,
                          degree_law=lambda n: (n + 1) // 2)


def _spec_flower(p):
    return RecurrenceSpec(beta=lambda n: 2 * n + 1, gamma=_c(1), nu=_c(-2), phi=_c(1), degree_law=lambda n: n)


def _spec_swr(p):
    a1, a2, b1, b2, lam = (_num(p, k) for k in ("a1", "a2", "b1", "b2", "lam"))
    beta = _c(b1 + b2)
    nu = _c(b1)
    return RecurrenceSpec(beta=beta, gamma=_c(a2 + lam * (b1 + b2)), nu=nu, phi=_c(a1 + 2 * lam * b1),
                          psi=_c(lam * (a1 + lam * b1)), degree_law=two_term_law(beta, nu, 0, 0))


def _spec_gen_eulerian(p):
    a1, a2, b1, b2, d, lam = (_num(p, k) for k in ("a1", "a2", "b1", "b2", "d", "lam"))
    if lam == 0:
        raise BadParams("gen_eulerian needs lam != 0")
    e = b1 - d * a1
    full = b2 + d * a2 != 0
    return RecurrenceSpec(
        alpha=lambda n: as_rational(Fraction(n * d * e) / lam),
        beta=lambda n: n * e + b2 + d * a2,
        gamma=_c(lam * a2),
        mu=_c(Fraction(-d * e) / lam),
        nu=_c(-(b1 - 2 * d * a1)),
        phi=_c(lam * a1),
        degree_law=(lambda n: n) if full else (lambda n: max(n - 1, 0)),
    )


def _spec_sym_T(p):
    beta, mu, nu = (_num(p, k) for k in ("beta", "mu", "nu"))
    delta = _nat(p, "delta", 1)
    seed = _poly_param(p, "seed") or Poly([1])
    m = lambda n: n - delta + 1
    return RecurrenceSpec(
        alpha=lambda n: -m(n) * mu, beta=_c(beta), gamma=lambda n: beta + m(n) * nu,
        mu=_c(mu), nu=_c(nu), phi=_c(-nu), psi=_c(-mu),
        seed=seed, seed_index=delta - 1, degree_law=lambda n: seed.degree + n - delta + 1,
    )


def _spec_derivative_Q(p):
    delta = _nat(p, "delta", 1)
    return RecurrenceSpec(beta=_c(delta), nu=_c(1), psi=_c(1), degree_law=lambda n: n)


def _spec_alt_desc_A(p):
    h = Fraction(1, 2)
    return RecurrenceSpec(alpha=lambda n: as_rational(Fraction(n - 1, 2)), beta=_c(1),
                          gamma=lambda n: as_rational(Fraction(n + 1, 2)),
                          mu=_c(-h), nu=_c(h), phi=_c(-h), psi=_c(h), seed_index=1, degree_law=lambda n: n - 1)


def _spec_alt_desc_B(p):
    return RecurrenceSpec(alpha=lambda n: n, beta=_c(1), gamma=lambda n: n + 1,
                          mu=_c(-1), nu=_c(1), phi=_c(-1), psi=_c(1), degree_law=lambda n: n)


def _spec_s_triangle(p):
    nu, beta = _num(p, "nu"), _num(p, "beta")
    b = lambda n: 2 * n * nu
    v = _c(-4 * nu)
    return RecurrenceSpec(beta=b, gamma=_c(beta), nu=v, phi=_c(2 * nu), degree_law=two_term_law(b, v, 0, 0))


def _q_list(p, N: int) -> list:
    qs = _seq(p, "q") if "q" in p else [1]
    return [qs[i % len(qs)] for i in range(max(N, 1))]


def _spec_colored_q(p, N: int = 64):
    r = _nat(p, "r", 1)
    qs = _q_list(p, N + 1)
    cq = lambda n: q_integer(r, qs[n])  # [r]_{q_{n+1}} drives the step n -> n+1
    beta = lambda n: (n + 1) * cq(n) - 1
    nu = lambda n: -cq(n)
    return RecurrenceSpec(beta=beta, gamma=_c(1), nu=nu, phi=cq, degree_law=two_term_law(beta, nu, 0, 0))


def _spec_peaks_interior(p):
    r = _nat(p, "r", 1)
    return RecurrenceSpec(beta=lambda n: r * n, gamma=_c(1), nu=_c(-r), phi=_c(r), seed_index=1,
                          degree_law=lambda n: n - 1)


def _spec_peaks_left(p):
    r = _nat(p, "r", 1)
    return RecurrenceSpec(beta=lambda n: r * n + 1, nu=_c(-r), phi=_c(r), degree_law=lambda n: n)


def _spec_rec_A(p):
    a1, a2, a3, b1, b2, b3 = (_num(p, k) for k in ("a1", "a2", "a3", "b1", "b2", "b3"))
    beta = lambda n: b1 * (n + 1) + b2 + b3
    nu = _c(b2)
    return RecurrenceSpec(beta=beta, gamma=lambda n: a1 * (n + 1) + a3, nu=nu, phi=_c(a2),
                          degree_law=two_term_law(beta, nu, 0, 0))


# ---------------------------------------------------------------------------
# counting families (h-polynomials)


def h_from_counts(count: Callable[[int], object], d: int, h_degree: int | None = None) -> Poly:
    """h with sum_m count(m) x^m = h / (1-x)^d.

    The numerator is read off (1-x)^d * sum_{m<=M} count(m) x^m.  By default
    h has degree < d (count polynomial in m of degree < d); ``h_degree``
    raises the allowance for counting functions that are polynomial only
    from m = 1 on.  Coefficients past the allowance up to M must vanish.
    """
    top = d - 1 if h_degree is None else h_degree
    M = top + d + 1 if h_degree is not None else 2 * d
    M = max(M, top + 1)
    vals = [as_rational(count(m)) for m in range(M + 1)]
    one_minus = [comb(d, j) * (-1) ** j for j in range(d + 1)]
    prod = [sum(one_minus[j] * vals[k - j] for j in range(min(k, d) + 1)) for k in range(M + 1)]
    if any(v != 0 for v in prod[top + 1 :]):
        raise NotPolynomialCounting(f"counting function is not of the h/(1-x)^{d} form with deg h <= {top}")
    return Poly(prod[: top + 1])


def carlitz_h(weighted_root_lists: Sequence[tuple[object, Sequence]], n: int) -> Poly:
    """h-polynomial of sum_m sum_k c_k prod_i (m + r_{k,i}) x^m over (1-x)^(n+1)."""
    lists = []
    for c, roots in weighted_root_lists:
        roots = [as_rational(r) for r in roots]
        if len(roots) != n:
            raise BadParams(f"root list {roots} does not have length {n}")
        if any(r < 0 or r > 1 for r in roots) or as_rational(c) < 0:
            raise BadParams("roots must lie in [0, 1] and weights must be nonnegative")
        lists.append((as_rational(c), roots))

    def count(m):
        total = 0
        for c, roots in lists:
            term = c
            for r in roots:
                term *= m + r
            total += term
        return total

    return h_from_counts(count, n + 1)


def signed_multiset_poly(parts: Sequence[int]) -> Poly:
    """Descent polynomial of signed multiset permutations, via its counting series."""
    n, s = len(parts), sum(parts)
    if any(v not in (1, 2) for v in parts):
        raise BadParams("multiset part sizes must be 1 or 2")
    return h_from_counts(lambda m: (m + 1) ** (s - n) * (2 * m + 1) ** n, s + 1)


def _colored_eulerian(r: int, n: int) -> Poly:
    return h_from_counts(lambda m: (r * m + 1) ** n, n + 1)


def _colored_plus(r: int, n: int) -> Poly:
    return h_from_counts(lambda m: (r * m + 1) ** n - (r * m) ** n, n)


def _colored_minus(r: int, n: int) -> Poly:
    # A^r_n / (1-x)^{n+1} minus A^+_{r,n} / (1-x)^n has numerator A^r_n - A^+_{r,n}
    return _colored_eulerian(r, n) - _colored_plus(r, n)


def colored_minus_count(r: int, n: int, m: int):
    """Counting function behind A^-: (rm)^n - (rm-r+1)^n, with the second term absent at m = 0."""
    return (r * m) ** n - ((r * m - r + 1) ** n if m >= 1 else 0)


def _kary(k: int, n: int) -> Poly:
    return h_from_counts(lambda m: comb(n + k * m, n), n + 1)


def _pattern(p) -> list[int]:
    pat = [int(v) for v in _seq(p, "pattern")] if "pattern" in p else [2]
    if not pat or any(v not in (1, 2) for v in pat):
        raise BadParams("pattern entries must be 1 or 2")
    return pat


def pattern_parts(p, n: int) -> list[int]:
    pat = _pattern(p)
    return [pat[i % len(pat)] for i in range(n)]


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class FamilyDef:
    name: str
    defaults: dict
    offset: Callable[[dict], int]
    spec: Callable[[dict], RecurrenceSpec] | None = None
    build: Callable[[dict, int], list[Poly]] | None = None
    growth: int = 2  # rough degree per step, for the size guard
    doc: str = ""


def _spec_offset(fd_spec):
    return lambda p: fd_spec(p).seed_index


def _build_by_index(fn, offset_fn):
    def build(p, N):
        return [fn(p, n) for n in range(offset_fn(p), N + 1)]

    return build


def _build_quasi(p, N):
    out = []
    for n in range(1, N + 1):
        spec = _spec_j_poly({"r": n + 1})
        out.append(generate_T(spec, 2 * n)[-1])
    return out


def _build_W(p, N):
    M = generate_T(_spec_peaks_M(p), max(N, 1))
    return [even_odd_split(m)[1] for m in M][: max(N, 0)]


def _build_Wtilde(p, N):
    M = generate_T(_spec_peaks_M(p), max(N, 1))
    return ([Poly([1])] + [even_odd_split(m)[0] for m in M])[: N + 1]


def _build_peaks_T(p, N):
    r = _nat(p, "r", 1)
    Mi = [Poly([1])] + generate_T(_spec_peaks_interior(p), max(N, 1))
    Ml = generate_T(_spec_peaks_left(p), N)
    out = []
    for n in range(N + 1):
        num = Poly.x() * subs_power(Mi[n], 2) + subs_power(Ml[n], 2)
        out.append(exact_div(num, Poly([1, 1])))
    return out


def _build_colored_q(p, N):
    return generate_T(_spec_colored_q(p, N), N)


_REG: dict[str, FamilyDef] = {}


def _register(name, defaults=None, spec=None, build=None, offset=None, growth=2, doc=""):
    defaults = defaults or {}
    if offset is None:
        offset = (lambda p: spec(p).seed_index) if spec else (lambda p: 0)
    _REG[name] = FamilyDef(name, defaults, offset, spec, build, growth, doc)


_register("eulerian", spec=_spec_eulerian, growth=1, doc="sum over S_n of x^des")
_register("r_eulerian", {"r": 1}, spec=_spec_r_eulerian, growth=1, doc="sum over S_n of x^exc_r")
_register("j_poly", {"r": 1}, spec=_spec_j_poly, growth=1, doc="Eulerian recurrence started at n=r")
_register("mixed_eulerian_chain", {"r": 1}, spec=_spec_mixed_chain, growth=1,
          doc="increments the last composition part; seed supplied by caller")
_register("quasi_stirling", build=_build_quasi, offset=lambda p: 1, growth=1, doc="J_{2n,n+1}")
_register("alt_runs_A", spec=_spec_alt_runs_A, growth=1, doc="permutations by alternating runs")
_register("alt_runs_B", spec=_spec_alt_runs_B, growth=1, doc="up signed permutations by alternating runs")
_register("stirling_runs", spec=_spec_stirling_runs, growth=2, doc="dual Stirling alternating runs")
_register("updown", spec=_spec_updown, growth=1, doc="permutations by longest alternating subsequence")
_register("peaks_M", spec=_spec_peaks_M, growth=1, doc="x W_n(x^2) + W~_n(x^2)")
_register("peaks_W", build=_build_W, offset=lambda p: 1, growth=1, doc="interior peaks")
_register("peaks_Wtilde", build=_build_Wtilde, offset=lambda p: 0, growth=1, doc="left peaks")
_register("bell", {"a": 1, "b": 0, "c0": 1, "c1": 0}, spec=_spec_bell, growth=1, doc="a(x+b)(c_n + D)")
_register("andre", spec=_spec_andre, growth=1, doc="Andre polynomials")
_register("flower", spec=_spec_flower, growth=1, doc="flower triangle rows")
_register("swr_rows", {"a1": 1, "a2": 1, "b1": 1, "b2": 1, "lam": 1}, spec=_spec_swr, growth=1,
          doc="Stirling-Whitney-Riordan rows")
_register("gen_eulerian_rows", {"a1": 1, "a2": 1, "b1": 1, "b2": 0, "d": 0, "lam": 1}, spec=_spec_gen_eulerian,
          growth=1, doc="generalized Eulerian rows")
_register("sym_T", {"beta": 1, "mu": -1, "nu": 1, "delta": 1}, spec=_spec_sym_T, growth=1,
          doc="symmetric family with m_n = n - delta + 1")
_register("derivative_Q", {"delta": 1}, spec=_spec_derivative_Q, growth=1, doc="D^n sec^delta in tan")
_register("alt_desc_A", spec=_spec_alt_desc_A, growth=1, doc="alternating descents on S_n")
_register("alt_desc_B", spec=_spec_alt_desc_B, growth=1, doc="alternating descents on B_n")
_register("s_triangle_rows", {"nu": Fraction(1, 2), "beta": 1}, spec=_spec_s_triangle, growth=1,
          doc="rows of S_{n,k}")
_register("colored_q_eulerian", {"r": 2, "q": 1}, build=_build_colored_q, growth=1,
          doc="sum over colored permutations of x^des prod q_i^e_i")
_register("stirling_peaks_interior", {"r": 2}, spec=_spec_peaks_interior, growth=1, doc="M_{n,r}")
_register("stirling_peaks_left", {"r": 2}, spec=_spec_peaks_left, growth=1, doc="M~_{n,r}")
_register("stirling_peaks_T", {"r": 2}, build=_build_peaks_T, growth=2, doc="(1+x)T = xM(x^2) + M~(x^2)")
_register("rec_A", {"a1": 0, "a2": 1, "a3": 0, "b1": 0, "b2": 0, "b3": 1}, spec=_spec_rec_A, growth=1,
          doc="rows of the triangle A_{n,k}")
_register("colored_eulerian", {"r": 2}, build=_build_by_index(lambda p, n: _colored_eulerian(_nat(p, "r", 1), n),
                                                              lambda p: 0), growth=1, doc="sum (rm+1)^n x^m")
_register("colored_plus", {"r": 2}, build=_build_by_index(lambda p, n: _colored_plus(_nat(p, "r", 1), n),
                                                          lambda p: 1), offset=lambda p: 1, growth=1,
          doc="first letter of color zero")
_register("colored_minus", {"r": 2}, build=_build_by_index(lambda p, n: _colored_minus(_nat(p, "r", 1), n),
                                                           lambda p: 1), offset=lambda p: 1, growth=1,
          doc="first letter of nonzero color")
_register("kary_ascent", {"k": 2}, build=_build_by_index(lambda p, n: _kary(_nat(p, "k", 1), n), lambda p: 0),
          growth=1, doc="k-ary words by ascents")
_register("signed_multiset", {"pattern": [2]},
          build=_build_by_index(lambda p, n: signed_multiset_poly(pattern_parts(p, n)), lambda p: 0),
          growth=2, doc="signed multiset permutations by descents; part sizes cycle through pattern")


def family_names() -> list[str]:
    return sorted(_REG)


def _resolve(name: str, params: dict | None) -> tuple[FamilyDef, dict]:
    if name not in _REG:
        raise UnknownFamily(name)
    fd = _REG[name]
    p = dict(fd.defaults)
    p.update(params or {})
    return fd, p


def family_offset(name: str, params: dict | None = None) -> int:
    """First index of the family."""
    fd, p = _resolve(name, params)
    return fd.offset(p)


def family_spec(name: str, params: dict | None = None) -> RecurrenceSpec:
    fd, p = _resolve(name, params)
    if name == "colored_q_eulerian":
        return _spec_colored_q(p)
    if fd.spec is None:
        raise BadParams(f"{name} is not defined by the master recurrence")
    return fd.spec(p)


def _guard(fd: FamilyDef, N: int):
    cap = current_limits().max_coefficients
    predicted = (N + 1) * (fd.growth * N + 2)
    if predicted > cap:
        raise SizeGuardExceeded(f"{fd.name} up to N={N} needs about {predicted} coefficients (cap {cap})")


def family(name: str, params: dict | None = None, N: int = 5) -> FamilyTable:
    fd, p = _resolve(name, params)
    _guard(fd, N)
    offset = fd.offset(p)
    if N < offset:
        raise BadParams(f"{name} starts at n={offset}; N={N} is too small")
    polys = generate_T(fd.spec(p), N) if fd.spec else fd.build(p, N)
    return FamilyTable(name, p, tuple(polys), offset)


# ---------------------------------------------------------------------------
# triangles with their own coefficient recurrences


def _tri(n0: int, first: list, N: int, rule) -> list[list]:
    rows = [first]
    for n in range(n0 + 1, N + 1):
        prev = rows[-1]
        get = lambda k: prev[k] if 0 <= k < len(prev) else 0
        row = [as_rational(rule(n, k, get)) for k in range(len(prev) + 2)]
        while len(row) > 1 and row[-1] == 0:
            row.pop()
        rows.append(row)
    return rows


def _tri_rec_A(p, N):
    a1, a2, a3, b1, b2, b3 = (_num(p, k) for k in ("a1", "a2", "a3", "b1", "b2", "b3"))
    return 0, _tri(0, [1], N, lambda n, k, A: (a1 * n + a2 * k + a3) * A(k) + (b1 * n + b2 * k + b3) * A(k - 1))


def _tri_swr(p, N):
    a1, a2, b1, b2, lam = (_num(p, k) for k in ("a1", "a2", "b1", "b2", "lam"))
    return 0, _tri(0, [1], N, lambda n, k, S: (b1 * k + b2) * S(k - 1)
                   + ((2 * lam * b1 + a1) * k + lam * (b1 + b2) + a2) * S(k)
                   + lam * (a1 + lam * b1) * (k + 1) * S(k + 1))


def _tri_gen_eulerian(p, N):
    a1, a2, b1, b2, d, lam = (_num(p, k) for k in ("a1", "a2", "b1", "b2", "d", "lam"))
    e = b1 - d * a1
    return 0, _tri(0, [1], N, lambda n, k, T: lam * (a1 * k + a2) * T(k)
                   + (e * n - (b1 - 2 * d * a1) * k + b2 - d * (a1 - a2)) * T(k - 1)
                   + Fraction(d * e) / lam * (n - k + 1) * T(k - 2))


def _tri_s(p, N):
    nu, beta = _num(p, "nu"), _num(p, "beta")
    return 0, _tri(0, [1], N, lambda n, k, S: (2 * nu * k + beta) * S(k) + 2 * nu * (n - 2 * k + 1) * S(k - 1))


def _tri_peak_r(p, N):
    r = _nat(p, "r", 1)
    return 1, _tri(1, [1], N, lambda n, k, M: (r * k + 1) * M(k) + r * (n - k) * M(k - 1))


def _tri_andre(p, N):
    # d_{n,k} = k d_{n-1,k} + (n - 2k + 2) d_{n-1,k-1}
    return 1, _tri(1, [0, 1], N, lambda n, k, D: k * D(k) + (n - 2 * k + 2) * D(k - 1))


def _tri_flower(p, N):
    return 0, _tri(0, [1], N, lambda n, k, F: (1 + k) * F(k) + (2 * n - 2 * k + 1) * F(k - 1))


def _tri_alt_runs_A(p, N):
    return 1, _tri(1, [1], N, lambda n, k, R: k * R(k) + 2 * R(k - 1) + (n - k) * R(k - 2))


def _tri_alt_runs_B(p, N):
    return 1, _tri(1, [0, 1], N, lambda n, k, Z: (2 * k - 1) * Z(k) + 3 * Z(k - 1) + (2 * n - 2 * k + 2) * Z(k - 2))


_TRI = {
    "rec_A": ("rec_A", _tri_rec_A),
    "swr": ("swr_rows", _tri_swr),
    "swr_rows": ("swr_rows", _tri_swr),
    "gen_eulerian": ("gen_eulerian_rows", _tri_gen_eulerian),
    "gen_eulerian_rows": ("gen_eulerian_rows", _tri_gen_eulerian),
    "s_triangle": ("s_triangle_rows", _tri_s),
    "s_triangle_rows": ("s_triangle_rows", _tri_s),
    "peak_r": ("stirling_peaks_interior", _tri_peak_r),
    "stirling_peaks_interior": ("stirling_peaks_interior", _tri_peak_r),
    "andre": ("andre", _tri_andre),
    "flower": ("flower", _tri_flower),
    "alt_runs_A": ("alt_runs_A", _tri_alt_runs_A),
    "alt_runs_B": ("alt_runs_B", _tri_alt_runs_B),
}


def triangle_names() -> list[str]:
    return sorted(set(_TRI) | set(_REG))


def paired_family(name: str) -> str:
    return _TRI[name][0] if name in _TRI else name


def triangle(name: str, params: dict | None = None, N: int = 5) -> Triangle:
    """Coefficient triangle.  Names with their own entry recurrence use it;
    any other family name gives the coefficient rows of the family table."""
    if name in _TRI:
        fam, fn = _TRI[name]
        fd, p = _resolve(fam, params)
        _guard(fd, N)
        n0, rows = fn(p, N)
        return Triangle(name, p, tuple(tuple(r) for r in rows), n0)
    t = family(name, params, N)
    return Triangle(name, t.params, tuple(tuple(q.coeffs) or (0,) for q in t.polys), t.offset)
