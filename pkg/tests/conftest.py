from fractions import Fraction

from hypothesis import settings, strategies as st

from stabcomb.exactpoly import Poly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_int = st.integers(min_value=-6, max_value=6)
rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


def polys(max_deg=4, elems=rationals):
    return st.lists(elems, min_size=0, max_size=max_deg + 1).map(Poly)


def nonzero_polys(max_deg=4, elems=small_int):
    return polys(max_deg, elems).filter(lambda p: not p.is_zero())


def rooted(max_roots=4, lo=-5, hi=5):
    """Products of linear factors with rational roots."""
    root = st.builds(Fraction, st.integers(lo * 2, hi * 2), st.sampled_from([1, 2]))
    return st.lists(root, min_size=0, max_size=max_roots).map(_from_roots)


def _from_roots(rs):
    p = Poly([1])
    for r in rs:
        p = p * Poly([-r, 1])
    return p
