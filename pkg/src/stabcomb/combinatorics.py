"""Brute-force enumeration of the underlying combinatorial objects.

These are the independent oracles: every family built by recurrence or by a
counting series is compared against a plain sum over objects.  Objects are
light tuple subclasses so the generators stay cheap.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial, prod
from typing import Iterator, Sequence

from .config import SizeGuardExceeded, current_limits
from .exactpoly import Poly, as_rational

__all__ = [
    "Perm",
    "SignedPerm",
    "ColoredPerm",
    "StirlingPerm",
    "Word",
    "SignedWord",
    "UnknownKind",
    "IncompatibleStatistic",
    "InvalidStirlingPerm",
    "enumerate_objects",
    "enumerate_count",
    "first_letters",
    "statistic",
    "distribution",
    "phi_map",
    "colored_key",
    "KINDS",
    "STATISTICS",
]


class UnknownKind(KeyError):
    pass


class IncompatibleStatistic(TypeError):
    pass


class InvalidStirlingPerm(ValueError):
    pass


class Perm(tuple):
    """One-line notation of a permutation of [n]."""

    @classmethod
    def checked(cls, values: Sequence[int]) -> "Perm":
        v = tuple(values)
        if sorted(v) != list(range(1, len(v) + 1)):
            raise ValueError(f"{v} is not a permutation of [{len(v)}]")
        return cls(v)


class SignedPerm(tuple):
    """Signed permutation: entries are +-v with |entries| a permutation."""

    @classmethod
    def checked(cls, values: Sequence[int]) -> "SignedPerm":
        v = tuple(values)
        Perm.checked(abs(a) for a in v)
        return cls(v)


class SignedWord(tuple):
    """Signed word over a multiset of positive letters."""


class Word(tuple):
    """k-ary word, letters in 0..k-1."""


class StirlingPerm(tuple):
    """Word over {1^r, ..., n^r}; letters between two equal letters are not smaller."""

    @classmethod
    def checked(cls, word: Sequence[int], r: int) -> "StirlingPerm":
        w = tuple(word)
        _check_stirling(w, r)
        return cls(w)


@dataclass(frozen=True)
class ColoredPerm:
    perm: tuple
    colors: tuple

    def __post_init__(self):
        if len(self.perm) != len(self.colors):
            raise ValueError("perm and colors differ in length")

    def __len__(self):
        return len(self.perm)


def _check_stirling(w: tuple, r: int):
    cnt = Counter(w)
    n = len(cnt)
    if sorted(cnt) != list(range(1, n + 1)) or any(c != r for c in cnt.values()):
        raise InvalidStirlingPerm(f"{w} is not a word on {{1^{r},...,{n}^{r}}}")
    first, last = {}, {}
    for i, a in enumerate(w):
        first.setdefault(a, i)
        last[a] = i
    for a in cnt:
        if any(w[s] < a for s in range(first[a] + 1, last[a])):
            raise InvalidStirlingPerm(f"{w} has a smaller letter between two copies of {a}")


# ---------------------------------------------------------------------------
# generators


def _n(params: dict, key: str = "n", lo: int = 0) -> int:
    v = params.get(key)
    if v is None:
        raise ValueError(f"missing parameter {key!r}")
    v = int(v)
    if v < lo:
        raise ValueError(f"{key} must be >= {lo}")
    return v


def _parts(params: dict) -> list[int]:
    v = params.get("parts", params.get("s"))
    if v is None:
        raise ValueError("missing parameter 'parts'")
    if isinstance(v, str):
        v = v.replace(":", " ").replace(",", " ").split()
    parts = [int(a) for a in v]
    if any(a < 1 for a in parts):
        raise ValueError("multiset part sizes must be positive")
    return parts


def _multiset_words(counts: dict, prefix: tuple, ok=None) -> Iterator[tuple]:
    """Distinct arrangements of a multiset starting with ``prefix``.

    ``ok(word, letter)`` may veto extending ``word`` by ``letter``.
    """
    left = dict(counts)
    for a in prefix:
        if left.get(a, 0) <= 0:
            return
        left[a] -= 1
    total = sum(left.values())
    word = list(prefix)
    for i in range(1, len(word) + 1):
        if ok is not None and not ok(word[: i - 1], word[i - 1]):
            return
    letters = sorted(left)

    def rec(k):
        if k == 0:
            yield tuple(word)
            return
        for a in letters:
            if left[a] and (ok is None or ok(word, a)):
                left[a] -= 1
                word.append(a)
                yield from rec(k - 1)
                word.pop()
                left[a] += 1

    yield from rec(total)


def _perm_tails(n: int, prefix_abs: tuple) -> Iterator[tuple]:
    rest = [v for v in range(1, n + 1) if v not in prefix_abs]
    if len(set(prefix_abs)) != len(prefix_abs) or len(rest) + len(prefix_abs) != n:
        return
    yield from permutations(rest)


def _gen_S(p, prefix=()):
    n = _n(p)
    for t in _perm_tails(n, tuple(prefix)):
        yield Perm(tuple(prefix) + t)


def _gen_B(p, prefix=(), up=False):
    n = _n(p)
    prefix = tuple(prefix)
    if up and prefix and prefix[0] < 0:
        return
    for t in _perm_tails(n, tuple(abs(a) for a in prefix)):
        k = len(prefix)
        for signs in product((1, -1), repeat=len(t)):
            if up and k == 0 and signs and signs[0] < 0:
                continue
            yield SignedPerm(prefix + tuple(s * v for s, v in zip(signs, t)))


def _gen_colored(p, prefix=(), first=None):
    n, r = _n(p), _n(p, "r", 1)
    prefix = tuple(prefix)  # (value, color) pairs
    if prefix and first is not None and not first(prefix[0][1]):
        return
    for t in _perm_tails(n, tuple(v for v, _ in prefix)):
        k = len(prefix)
        for cols in product(range(r), repeat=len(t)):
            if first is not None and k == 0 and cols and not first(cols[0]):
                continue
            letters = prefix + tuple(zip(t, cols))
            yield ColoredPerm(tuple(v for v, _ in letters), tuple(e for _, e in letters))


def _gen_kary(p, prefix=()):
    n, k = _n(p), _n(p, "k", 1)
    prefix = tuple(prefix)
    if any(not 0 <= a < k for a in prefix) or len(prefix) > n:
        return
    for t in product(range(k), repeat=n - len(prefix)):
        yield Word(prefix + t)


def _gen_multiset_signed(p, prefix=()):
    parts = _parts(p)
    counts = {i + 1: c for i, c in enumerate(parts)}
    prefix = tuple(prefix)
    for w in _multiset_words(counts, tuple(abs(a) for a in prefix)):
        k = len(prefix)
        for signs in product((1, -1), repeat=len(w) - k):
            yield SignedWord(prefix + tuple(s * v for s, v in zip(signs, w[k:])))


def _stirling_ok(r):
    def ok(word, a):
        seen = Counter(word)
        # every letter still open must not exceed the new letter
        return all(v <= a for v, c in seen.items() if 0 < c < r)

    return ok


def _gen_r_stirling(p, prefix=()):
    n, r = _n(p), _n(p, "r", 1)
    for w in _multiset_words({i: r for i in range(1, n + 1)}, tuple(prefix), _stirling_ok(r)):
        yield StirlingPerm(w)


def _avoids_1212(w: tuple) -> bool:
    pos = {}
    for i, a in enumerate(w):
        pos.setdefault(a, []).append(i)
    for a, (a1, a2) in pos.items():
        for b, (b1, b2) in pos.items():
            if a != b and a1 < b1 < a2 < b2:
                return False
    return True


def _gen_quasi_stirling(p, prefix=()):
    n = _n(p)
    if n > 5:
        raise SizeGuardExceeded("quasi-Stirling enumeration is only provided for n <= 5")
    for w in _multiset_words({i: 2 for i in range(1, n + 1)}, tuple(prefix)):
        if _avoids_1212(w):
            yield StirlingPerm(w)


def _size_S(p):
    return factorial(_n(p))


def _size_B(p):
    return 2 ** _n(p) * factorial(_n(p))


def _size_colored(p):
    return _n(p, "r", 1) ** _n(p) * factorial(_n(p))


def _size_multiset(p):
    parts = _parts(p)
    s = sum(parts)
    return factorial(s) // prod(factorial(c) for c in parts) * 2**s


def _size_stirling(p):
    n, r = _n(p), _n(p, "r", 1)
    return prod(r * i + 1 for i in range(n))


@dataclass(frozen=True)
class Kind:
    gen: object
    size: object
    letters: object  # first-letter choices for prefix partitioning


KINDS: dict[str, Kind] = {
    "S_n": Kind(_gen_S, _size_S, lambda p: [(v,) for v in range(1, _n(p) + 1)]),
    "B_n": Kind(_gen_B, _size_B, lambda p: [(s * v,) for v in range(1, _n(p) + 1) for s in (1, -1)]),
    "B_n_up": Kind(lambda p, prefix=(): _gen_B(p, prefix, up=True), lambda p: _size_B(p) // 2,
                   lambda p: [(v,) for v in range(1, _n(p) + 1)]),
    "Z_r_wr_S_n": Kind(_gen_colored, _size_colored,
                       lambda p: [((v, e),) for v in range(1, _n(p) + 1) for e in range(_n(p, "r", 1))]),
    "Z_r_plus": Kind(lambda p, prefix=(): _gen_colored(p, prefix, first=lambda e: e == 0),
                     lambda p: _size_colored(p) // _n(p, "r", 1),
                     lambda p: [((v, 0),) for v in range(1, _n(p) + 1)]),
    "Z_r_minus": Kind(lambda p, prefix=(): _gen_colored(p, prefix, first=lambda e: e != 0),
                      lambda p: _size_colored(p) - _size_colored(p) // _n(p, "r", 1),
                      lambda p: [((v, e),) for v in range(1, _n(p) + 1) for e in range(1, _n(p, "r", 1))]),
    "k_ary": Kind(_gen_kary, lambda p: _n(p, "k", 1) ** _n(p), lambda p: [(a,) for a in range(_n(p, "k", 1))]),
    "multiset_signed": Kind(_gen_multiset_signed, _size_multiset,
                            lambda p: [(s * (i + 1),) for i in range(len(_parts(p))) for s in (1, -1)]),
    "r_stirling": Kind(_gen_r_stirling, _size_stirling, lambda p: [(v,) for v in range(1, _n(p) + 1)]),
    "quasi_stirling": Kind(_gen_quasi_stirling, lambda p: factorial(2 * _n(p)) // 2 ** _n(p),
                           lambda p: [(v,) for v in range(1, _n(p) + 1)]),
}


def _kind(kind: str) -> Kind:
    if kind not in KINDS:
        raise UnknownKind(kind)
    return KINDS[kind]


def enumerate_count(kind: str, params: dict) -> int:
    """Number of objects, without generating them."""
    return _kind(kind).size(params)


def _guard(kind: str, params: dict):
    size = enumerate_count(kind, params)
    cap = current_limits().max_objects
    if size > cap:
        raise SizeGuardExceeded(f"{kind} with {params} has {size} objects (cap {cap})")


def enumerate_objects(kind: str, params: dict, prefix: Sequence = ()) -> Iterator:
    """Every object of the kind whose leading letters equal ``prefix``."""
    k = _kind(kind)
    _guard(kind, params)
    return k.gen(params, tuple(prefix))


def first_letters(kind: str, params: dict) -> list[tuple]:
    """Prefixes that partition the enumeration."""
    return _kind(kind).letters(params)


# ---------------------------------------------------------------------------
# statistics


def colored_key(value: int, color: int) -> tuple:
    """Sort key for the colored order

    xi^{r-1} n < ... < xi n < ... < xi^{r-1} 1 < ... < xi 1 < 0 < 1 < ... < n,

    color 0 letters being the positive ones.  (0, 0) stands for the leading zero.
    """
    if value == 0:
        return (0, 0, 0)
    if color == 0:
        return (1, value, 0)
    return (-1, -value, -color)


def _des_plain(w) -> int:
    return sum(1 for i in range(len(w) - 1) if w[i] > w[i + 1])


def _des_zero(w) -> int:
    return _des_plain((0,) + tuple(w))


def _des_colored(c: ColoredPerm) -> int:
    keys = [colored_key(0, 0)] + [colored_key(v, e) for v, e in zip(c.perm, c.colors)]
    return sum(1 for i in range(len(keys) - 1) if keys[i] > keys[i + 1])


def _changes(w, positions) -> int:
    return sum(1 for i in positions if (w[i - 1] < w[i] > w[i + 1]) or (w[i - 1] > w[i] < w[i + 1]))


def _alt_runs(w) -> int:
    n = len(w)
    if n < 2:
        return 0
    return 1 + _changes(w, range(1, n - 1))


def _alt_runs_B(w) -> int:
    # pi_0 = 0 prepended; positions i in [n-1]; reported as runs + 1
    z = (0,) + tuple(w)
    return 1 + _changes(z, range(1, len(w)))


def _las(w) -> int:
    """Longest subsequence w_{i1} > w_{i2} < w_{i3} > ..."""
    n = len(w)
    if n == 0:
        return 0
    # down[j]: longest ending at j whose next step must go down (odd length)
    # up[j]: ending at j, next step must go up (even length)
    down, up = [1] * n, [0] * n
    for j in range(n):
        for i in range(j):
            if w[i] > w[j] and down[i]:
                up[j] = max(up[j], down[i] + 1)
            if w[i] < w[j] and up[i]:
                down[j] = max(down[j], up[i] + 1)
    return max(max(down), max(up))


def _pk(w, lo: int) -> int:
    z = (0,) + tuple(w)
    return sum(1 for i in range(lo, len(w)) if z[i - 1] < z[i] > z[i + 1])


def _altdes(z, start: int) -> int:
    count = 0
    for j in range(start, len(z) - 1):
        if j % 2 == 0 and z[j] < z[j + 1]:
            count += 1
        elif j % 2 == 1 and z[j] > z[j + 1]:
            count += 1
    return count


def _exc_r(w, r: int) -> int:
    return sum(1 for i, a in enumerate(w, 1) if a >= i + r)


def _asc_word(w) -> int:
    z = (0,) + tuple(w)
    return sum(1 for i in range(len(w)) if z[i] < z[i + 1])


def phi_map(sigma: Sequence[int], r: int) -> tuple:
    """Relabel the l-th occurrence of letter i as r*i - l + 1."""
    w = tuple(sigma)
    _check_stirling(w, r)
    seen = Counter()
    out = []
    for a in w:
        seen[a] += 1
        out.append(r * a - seen[a] + 1)
    return tuple(out)


def _rpk(pi: tuple, r: int, lo: int) -> int:
    z = (0,) + pi
    top = len(pi) - r + 1
    count = 0
    for i in range(lo, top + 1):
        if z[i - 1] < z[i] and all(z[j] > z[j + 1] for j in range(i, i + r - 1)):
            count += 1
    return count


def _stirling_r(obj, params) -> int:
    r = params.get("r")
    if r is None:
        r = len(obj) // max(obj) if obj else 1
    return int(r)


def statistic(obj, name: str, **params):
    t = type(obj)
    if name == "des":
        if isinstance(obj, ColoredPerm):
            return _des_colored(obj)
        if t in (SignedPerm, SignedWord):
            return _des_zero(obj)
        if t in (Perm, StirlingPerm, Word):
            return _des_plain(obj)
    elif name == "des_B" and t in (SignedPerm, SignedWord):
        return _des_zero(obj)
    elif name == "des_colored" and isinstance(obj, ColoredPerm):
        return _des_colored(obj)
    elif name == "color_vector" and isinstance(obj, ColoredPerm):
        return obj.colors
    elif name == "exc_r" and t is Perm:
        return _exc_r(obj, int(params.get("r", 1)))
    elif name == "alt_runs" and t is Perm:
        return _alt_runs(obj)
    elif name == "las" and t is Perm:
        return _las(obj)
    elif name == "ipk" and t is Perm:
        return _pk(obj, 2)
    elif name == "lpk" and t is Perm:
        return _pk(obj, 1)
    elif name == "altdes_A" and t is Perm:
        return _altdes((None,) + tuple(obj), 1)
    elif name == "altdes_B" and t is SignedPerm:
        return _altdes((0,) + tuple(obj), 0)
    elif name == "alt_runs_B" and t is SignedPerm:
        return _alt_runs_B(obj)
    elif name == "asc_word" and t is Word:
        return _asc_word(obj)
    elif name in ("ipk_r", "lpk_r") and t is StirlingPerm:
        r = _stirling_r(obj, params)
        return _rpk(phi_map(obj, r), r, 2 if name == "ipk_r" else 1)
    if name not in STATISTICS:
        raise IncompatibleStatistic(f"unknown statistic {name!r}")
    raise IncompatibleStatistic(f"{name} does not apply to {t.__name__}")


STATISTICS = (
    "des", "des_B", "des_colored", "color_vector", "exc_r", "alt_runs", "las", "ipk", "lpk",
    "altdes_A", "altdes_B", "alt_runs_B", "asc_word", "ipk_r", "lpk_r",
)


# ---------------------------------------------------------------------------
# distributions


def _q_weight(obj, q: Sequence, by_value: bool) -> object:
    # the weight of a colored letter is indexed by its value; indexing by
    # position disagrees with both the recurrence and the counting series
    w = Fraction(1)
    for i, (v, e) in enumerate(zip(obj.perm, obj.colors)):
        j = v - 1 if by_value else i
        w *= Fraction(q[j % len(q)]) ** e
    return w


def _accumulate(kind: str, params: dict, stat: str, stat_params: dict, q, prefix, by_value=True) -> dict:
    acc: dict[int, object] = {}
    for obj in enumerate_objects(kind, params, prefix):
        k = statistic(obj, stat, **stat_params)
        acc[k] = acc.get(k, 0) + (_q_weight(obj, q, by_value) if q is not None else 1)
    return acc


def _stat_params(kind: str, params: dict, stat: str) -> dict:
    out = {}
    if stat == "exc_r":
        out["r"] = params.get("exc_r", params.get("r", 1))
    if stat in ("ipk_r", "lpk_r"):
        out["r"] = params.get("r", 1)
    return out


def distribution(
    kind: str, params: dict, stat: str, q: Sequence | None = None, jobs: int = 1, q_index: str = "value"
) -> Poly:
    """Sum over objects of x^stat, times prod q^{e} per colored letter when ``q`` is given.

    ``q_index`` picks whether a letter's weight q_j uses its value (default)
    or its position.
    """
    if q_index not in ("value", "position"):
        raise ValueError("q_index must be 'value' or 'position'")
    by_value = q_index == "value"
    _guard(kind, params)
    sp = _stat_params(kind, params, stat)
    if q is not None:
        q = [as_rational(v) for v in q]
        if not kind.startswith("Z_r"):
            raise IncompatibleStatistic("q-weights need colored permutations")
    if jobs > 1 and enumerate_count(kind, params) > 5000:
        prefixes = first_letters(kind, params)
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_accumulate, *zip(*[(kind, params, stat, sp, q, pre, by_value) for pre in prefixes])))
    else:
        parts = [_accumulate(kind, params, stat, sp, q, (), by_value)]
    total: dict[int, object] = {}
    for part in parts:
        for k, v in part.items():
            total[k] = total.get(k, 0) + v
    if not total:
        return Poly()
    top = max(total)
    return Poly([total.get(k, 0) for k in range(top + 1)])
