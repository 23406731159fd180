from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from stabcomb.config import SizeGuardExceeded
from stabcomb.exactpoly import Poly, exact_div, reciprocal
from stabcomb.families import (
    BadParams,
    DegreeLawViolation,
    MissingSeed,
    NotPolynomialCounting,
    RecurrenceSpec,
    UnknownFamily,
    carlitz_h,
    family,
    family_names,
    family_spec,
    generate_T,
    h_from_counts,
    triangle,
    triangle_names,
)

P = Poly


def test_eulerian_spec_generates_A3():
    spec = RecurrenceSpec(beta=lambda n: n, gamma=lambda n: 1, nu=lambda n: -1, phi=lambda n: 1)
    assert generate_T(spec, 3)[3] == P([1, 4, 1])
    assert family("eulerian", {}, 4)[4] == P([1, 11, 11, 1])


def test_stirling_runs_second_entry():
    assert family("stirling_runs", {}, 2)[2] == P([0, 1, 1, 1])


def test_constant_family():
    spec = RecurrenceSpec(gamma=lambda n: 1, seed=P([2, 3]))
    assert generate_T(spec, 4) == [P([2, 3])] * 5


def test_degree_law_violation():
    spec = RecurrenceSpec(gamma=lambda n: 1, seed=P([1]), degree_law=lambda n: n)
    with pytest.raises(DegreeLawViolation):
        generate_T(spec, 2)


def test_registry_examples():
    assert family("alt_desc_B", {}, 4)[4] == P([57, 76, 118, 76, 57])
    t = family("r_eulerian", {"r": 2}, 2)
    assert t.polys[0] == P([2])
    m = family("stirling_peaks_interior", {"r": 3}, 2)
    assert list(m.polys) == [P([1]), P([1, 3])]


def test_registry_errors():
    with pytest.raises(UnknownFamily):
        family("nope", {}, 2)
    with pytest.raises(BadParams):
        family("bell", {"a": "x"}, 2)
    with pytest.raises(MissingSeed):
        family("mixed_eulerian_chain", {"r": 2}, 3)


def test_size_guard(monkeypatch):
    monkeypatch.setenv("STABCOMB_TABLE_GUARD", "50")
    with pytest.raises(SizeGuardExceeded):
        family("eulerian", {}, 40)


def test_triangle_examples():
    st2 = triangle("rec_A", {"a2": 1, "b3": 1}, 3)
    assert tuple(st2.row(3)) == (0, 1, 3, 1)
    fl = triangle("flower", {}, 3)
    F = family("flower", {}, 3)
    for n in fl.indices:
        assert fl.row_poly(n) == F[n]
    s = triangle("s_triangle", {"nu": Fraction(1, 2), "beta": 1}, 2)
    S = family("s_triangle_rows", {"nu": Fraction(1, 2), "beta": 1}, 2)
    for n in s.indices:
        assert s.row_poly(n) == S[n]


def test_every_triangle_matches_its_family():
    for name in triangle_names():
        try:
            t = triangle(name, {}, 5)
        except (MissingSeed, BadParams):
            continue
        from stabcomb.families import paired_family

        f = family(paired_family(name), t.params, 5)
        for n in t.indices:
            assert t.row_poly(n) == f[n], (name, n)
        assert t.entry(t.indices[-1], -1) == 0


def test_h_from_counts_examples():
    assert h_from_counts(lambda m: (m + 1) ** 2, 3) == P([1, 1])
    assert h_from_counts(lambda m: (2 * m + 1) ** 3 - (2 * m) ** 3, 3) == P([1, 16, 7])
    with pytest.raises(NotPolynomialCounting):
        h_from_counts(lambda m: 2**m, 3)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_h_at_zero_is_count_at_zero(cs):
    count = lambda m: sum(c * m**i for i, c in enumerate(cs))
    h = h_from_counts(count, len(cs))
    assert h(0) == count(0)


def test_carlitz_examples():
    assert carlitz_h([(2, [Fraction(1, 2)])], 1) == P([1, 1])
    assert carlitz_h([(1, [1, 1, 1, 1])], 4) == family("eulerian", {}, 4)[4]


def test_carlitz_reproduces_colored_plus():
    for r in (2, 3):
        for n in range(2, 6):
            lists = [(r ** (n - 1), [0] * k + [Fraction(1, r)] * (n - 1 - k)) for k in range(n)]
            assert carlitz_h(lists, n - 1) == family("colored_plus", {"r": r}, n)[n]


def test_reversal_identity_j_poly():
    for r in range(1, 5):
        E = family("r_eulerian", {"r": r}, 10)
        J = family("j_poly", {"r": r}, 10)
        for n in range(r, 11):
            assert J[n] == reciprocal(E[n], n - r) / factorial(r), (r, n)


def test_evaluation_at_one():
    for r in range(1, 4):
        J = family("j_poly", {"r": r}, 8)
        for n in J.indices:
            assert J[n](1) == Fraction(factorial(n), factorial(r))
    E = family("r_eulerian", {"r": 2}, 8)
    chain = family("mixed_eulerian_chain", {"r": 2, "seed": E[3], "n0": 3}, 8)
    for n in chain.indices:
        assert chain[n](1) == factorial(n)
        assert chain[n] == E[n]
    with pytest.raises(BadParams):
        family("mixed_eulerian_chain", {"r": 2, "seed": P([1, 1]), "n0": 2}, 4)


def test_updown_is_half_one_plus_x_times_alt_runs():
    t = family("updown", {}, 12)
    R = family("alt_runs_A", {}, 12)
    for n in range(2, 13):
        assert t[n] == P([1, 1]) * R[n] / 2


def test_peaks_interior_is_one_over_r_eulerian():
    from stabcomb.exactpoly import derivative

    for r in (2, 3, 4):
        M = family("stirling_peaks_interior", {"r": r}, 9)
        # 1/r-Eulerian: A_n = ((rn - r) x + 1) A_{n-1} + r x (1 - x) A_{n-1}', A_1 = 1
        A = P([1])
        for n in range(2, 10):
            A = P([1, r * n - r]) * A + P([0, r, -r]) * derivative(A)
            assert M[n] == A


def test_peaks_T_at_two_is_stirling_runs():
    T = family("stirling_peaks_T", {"r": 2}, 12)
    R = family("stirling_runs", {}, 12)
    for n in T.indices:
        assert T[n] == R[n]


def test_sym_T_specialisations():
    A = family("alt_desc_A", {}, 10)
    B = family("alt_desc_B", {}, 10)
    TA = family("sym_T", {"beta": 1, "nu": Fraction(1, 2), "mu": Fraction(-1, 2), "delta": 2}, 11)
    TB = family("sym_T", {"beta": 1, "nu": 1, "mu": -1, "delta": 1}, 10)
    for n in range(0, 10):
        assert TA[n + 1] == A[n + 1]
        assert TB[n] == B[n]


def test_colored_q_all_ones_is_colored_eulerian():
    for r in (2, 3):
        Q = family("colored_q_eulerian", {"r": r, "q": [1]}, 5)
        C = family("colored_eulerian", {"r": r}, 5)
        for n in range(1, 6):
            assert Q[n] == C[n]
            assert Q[n] == h_from_counts(lambda m: (r * m + 1) ** n, n + 1)


def test_published_values():
    B = family("alt_desc_B", {}, 4)
    assert [B[n] for n in (2, 3, 4)] == [P([3, 2, 3]), P([11, 13, 13, 11]), P([57, 76, 118, 76, 57])]
    for r in (2, 3, 4):
        Ap = family("colored_plus", {"r": r}, 3)
        assert Ap[2] == P([1, 2 * r - 1])
        assert Ap[3] == P([1, 3 * r * r + 3 * r - 2, 3 * r * r - 3 * r + 1])
        assert family("r_eulerian", {"r": r}, r)[r] == P([factorial(r)])
        assert family("stirling_peaks_interior", {"r": r}, 2)[2] == P([1, r])


def test_quasi_stirling_is_j_poly():
    Q = family("quasi_stirling", {}, 4)
    assert [Q[n] for n in (1, 2, 3)] == [P([1]), P([1, 3]), P([1, 13, 16])]


def test_every_family_reproduces_recurrence():
    for name in family_names():
        try:
            spec = family_spec(name, {})
        except (BadParams, MissingSeed):
            continue
        t = family(name, {}, spec.seed_index + 6)
        for n in range(spec.seed_index, t.last):
            assert spec.step(t[n], n) == t[n + 1], (name, n)


def test_peaks_split():
    from stabcomb.exactpoly import even_odd_split

    M = family("peaks_M", {}, 8)
    W = family("peaks_W", {}, 8)
    Wt = family("peaks_Wtilde", {}, 8)
    for n in range(1, 9):
        e, o = even_odd_split(M[n])
        assert (e, o) == (Wt[n], W[n])


def test_peaks_T_divides():
    for r in (2, 3, 4):
        T = family("stirling_peaks_T", {"r": r}, 6)
        M = family("stirling_peaks_interior", {"r": r}, 6)
        Mt = family("stirling_peaks_left", {"r": r}, 6)
        from stabcomb.exactpoly import subs_power

        for n in range(1, 7):
            assert T[n] * P([1, 1]) == P([0, 1]) * subs_power(M[n], 2) + subs_power(Mt[n], 2)
