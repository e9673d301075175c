from hypothesis import given, settings
from hypothesis import strategies as st

from drinfeld_modpoly.extfield import extension
from drinfeld_modpoly.fq import fq_make
from drinfeld_modpoly.isogeny import DrinfeldModule
from drinfeld_modpoly.ring import ring
from drinfeld_modpoly.skew import SkewPoly
from drinfeld_modpoly.upoly import UPoly

from strategies import elements, ring_elems


def test_identity_composition():
    R = ring(2, 2)
    f = SkewPoly([R.one(), R.g(1)])
    assert f * SkewPoly([R.one()]) == f
    assert SkewPoly([R.one()]) * f == f


def test_degree_two_composition_by_hand():
    R = ring(2, 3)
    a, b = R.g(1), R.g(2)
    f = SkewPoly([R.one(), a]) * SkewPoly([R.one(), b])
    assert f.coeffs == [R.one(), a + b, a * b.frob(1)]
    assert f.to_additive(2) == UPoly.from_dict({1: R.one(), 2: a + b, 4: a * b * b}, R.zero())


def test_twist_rule():
    R = ring(2, 2)
    c = R.g(1) + R.T()
    assert SkewPoly([R.zero(), R.one()]) * SkewPoly([c]) == SkewPoly([R.zero(), c.frob(1)])


def test_to_additive_examples():
    R = ring(2, 2)
    phi = DrinfeldModule.monic_generic(2, 2).phi_T()
    assert phi.to_additive(2) == UPoly.from_dict({1: R.T(), 2: R.g(1), 4: R.one()}, R.zero())
    assert SkewPoly([], R.zero()).to_additive(2) == UPoly([], R.zero())
    assert SkewPoly([R.zero(), R.one()]).to_additive(2) == UPoly.from_dict({2: R.one()}, R.zero())


def test_right_division_examples():
    K = extension(fq_make(2), 3)
    x = K(K.from_index(3))
    f = SkewPoly([x, K.elem_one(), x * x])
    quo, rem = f.right_divmod(f)
    assert quo == SkewPoly([K.elem_one()]) and not rem
    g = SkewPoly([K.elem_one(), x, x, K.elem_one()])
    quo, rem = f.right_divmod(g)
    assert not quo and rem == f


def test_torsion_line_divides_phi_T_over_F4():
    # rank 2 over F_4 with q = 2: a torsion point w gives f = X^2 - w X
    F4 = extension(fq_make(2), 2)
    found = 0
    for theta in elements(F4)[1:]:
        for g1 in elements(F4):
            phi = DrinfeldModule(2, 2, theta, (g1,), F4.elem_one()).phi_T()
            for w in elements(F4)[1:]:
                if phi(w):
                    continue
                f = SkewPoly([-(w ** 1), F4.elem_one()])
                quo, rem = phi.right_divmod(f)
                assert not rem and quo * f == phi
                found += 1
    assert found > 0


def test_evaluation_is_composition():
    K = extension(fq_make(3), 2)
    els = elements(K)
    f = SkewPoly([els[2], els[5]])
    g = SkewPoly([els[7], els[1], els[4]])
    for x in els:
        assert (f * g)(x) == f(g(x))


@settings(max_examples=100)
@given(st.data())
def test_composition_is_associative_and_matches_additive(data):
    R = ring(2, 2)
    elem = ring_elems(R, max_terms=3, tmin=0, tmax=3, gmax=2)
    fs = [SkewPoly([data.draw(elem) for _ in range(data.draw(st.integers(1, 3)))], R.zero()) for _ in range(3)]
    f, g, h = fs
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@settings(max_examples=100)
@given(st.data())
def test_right_divmod_reconstructs(data):
    K = extension(fq_make(2), 4)
    els = elements(K)
    pick = st.sampled_from(els)
    f = SkewPoly([data.draw(pick) for _ in range(data.draw(st.integers(1, 6)))], K.elem_zero())
    g = SkewPoly([data.draw(pick) for _ in range(data.draw(st.integers(1, 4)))] + [data.draw(pick.filter(bool))])
    quo, rem = f.right_divmod(g)
    assert quo * g + rem == f
    assert len(rem) < len(g)
