"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from drinfeld_modpoly.ring import ring

RINGS = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (5, 2), (2, 4)]


@st.composite
def ring_elems(draw, R, max_terms=8, tmin=-4, tmax=6, gmax=4):
    n = draw(st.integers(0, max_terms))
    terms = []
    for _ in range(n):
        c = draw(st.integers(1, R.q - 1))
        t = draw(st.integers(tmin, tmax))
        g = tuple(draw(st.integers(0, gmax)) for _ in range(R.nvars))
        terms.append((c, t, g))
    return R.from_terms(terms)


rings = st.sampled_from(RINGS).map(lambda qr: ring(*qr))


@st.composite
def ring_and_elems(draw, k=3, **kw):
    R = draw(rings)
    return (R,) + tuple(draw(ring_elems(R, **kw)) for _ in range(k))


def elements(K):
    """Every element of a finite extension field, in index order."""
    return [K(K.from_index(i)) for i in range(K.order)]


def roots_in(P, K):
    return [x for x in elements(K) if x and not P(x)]
