import json
import random
from pathlib import Path

import pytest

from drinfeld_modpoly.cli import JobSpec, run
from drinfeld_modpoly.extfield import extension
from drinfeld_modpoly.fq import fq_make
from drinfeld_modpoly.invariants import invariant_make, j_invariant_rank2, known_invariants, membership_check_C
from drinfeld_modpoly.isogeny import DrinfeldModule
from drinfeld_modpoly.pipeline import (ModularPolynomial, PipelineConfig, PipelineFault, check_coefficient,
                                       compute_modpoly, degree_table, modpoly_coefficients, s_of,
                                       specialize_modpoly, trace_sanity, verify_theorem)
from drinfeld_modpoly.ring import ring
from drinfeld_modpoly.upoly import UPoly

GOLDEN = Path(__file__).parent / "golden"
Q2R3 = [(J, t) for J in known_invariants(2, 3) for t in ("outgoing", "incoming")]


@pytest.fixture(scope="module")
def q2r3():
    return {(J.e, t): compute_modpoly(2, 3, J, t) for J, t in Q2R3}


@pytest.mark.parametrize("J,t", Q2R3, ids=lambda x: getattr(x, "name", x))
def test_golden_files(J, t):
    status, text = run(JobSpec("compute", 2, 3, (J.e,), t, threads=1))
    assert status == 0
    assert text == (GOLDEN / f"q2_r3_{J.name}_{t}.json").read_text()


@pytest.mark.parametrize("J,t", Q2R3, ids=lambda x: getattr(x, "name", x))
def test_q2_r3_shape(q2r3, J, t):
    mp = q2r3[(J.e, t)]
    assert mp.degree == 7 and mp.coeffs[-1].is_one()
    assert all(membership_check_C(c) for c in mp.coeffs)
    rep = verify_theorem(mp)
    assert rep.all_sharp and rep.height == rep.expected_height == 7 * mp.weight


def test_j12_weights(q2r3):
    out, inc = q2r3[((1, 2), "outgoing")], q2r3[((1, 2), "incoming")]
    assert (out.weight, inc.weight) == (4, 6)
    assert out.deg_T(6) == 4
    assert [d for _, d, _ in degree_table(out)] == [4 * (7 - i) for i in range(8)]


def test_json_roundtrip(q2r3):
    mp = q2r3[((4, 1), "incoming")]
    data = json.loads(mp.to_json_text())
    assert set(data) >= {"q", "r", "J", "e_r", "type", "psi", "weights", "coefficients", "degree_table"}
    back = ModularPolynomial.from_json(data)
    assert back.coeffs == mp.coeffs and back.J == mp.J and back.iso_type == mp.iso_type


@pytest.mark.parametrize("e", [(1, 2), (4, 1)])
@pytest.mark.parametrize("t", ["outgoing", "incoming"])
def test_backends_agree(q2r3, e, t):
    mat = compute_modpoly(2, 3, e, t, PipelineConfig(backend="matrix"))
    assert mat.coeffs == q2r3[(e, t)].coeffs


@pytest.mark.parametrize("q", [2, 3])
def test_backends_agree_rank2(q):
    J = j_invariant_rank2(q)
    for t in ("outgoing", "incoming"):
        assert (compute_modpoly(q, 2, J, t, PipelineConfig(backend="matrix")).coeffs
                == compute_modpoly(q, 2, J, t).coeffs)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_rank2_height(q):
    mp = compute_modpoly(q, 2, j_invariant_rank2(q), "outgoing")
    assert mp.height == q * q * (q + 1) == mp.deg_T(0)
    assert all(d <= b for _, d, b in degree_table(mp))


def test_rank2_types_coincide():
    # for r = 2 both kernels are lines, so both types give the same polynomial
    for q in (2, 3):
        J = j_invariant_rank2(q)
        assert compute_modpoly(q, 2, J, "outgoing").coeffs == compute_modpoly(q, 2, J, "incoming").coeffs


def test_trivial_invariant():
    mp = compute_modpoly(3, 2, (0,), "outgoing")
    R = ring(3, 2)
    x1 = UPoly([-R.one(), R.one()], R.zero())
    assert mp.as_upoly() == x1 * x1 * x1 * x1


@pytest.mark.parametrize("q,r,n", [(2, 3, 5), (3, 2, 3), (4, 2, 2)])
def test_specialization_commutes_with_computation(q, r, n):
    rng = random.Random(q * 100 + r)
    K = extension(fq_make(q), n)
    rnd = lambda: K(K.random(rng))  # noqa: E731
    m = DrinfeldModule(q, r, next(x for x in iter(rnd, None) if x), tuple(rnd() for _ in range(r - 1)),
                       K.elem_one())
    J = known_invariants(q, r)[0] if r > 2 else j_invariant_rank2(q)
    for t in ("outgoing", "incoming"):
        mp = compute_modpoly(q, r, J, t)
        assert modpoly_coefficients(m, J, t) == specialize_modpoly(mp, m.gammaT, list(m.g))


def test_trace_sanity_matches_full(q2r3):
    for e in [(1, 2), (7, 0)]:
        for t in ("outgoing", "incoming"):
            a, ok = trace_sanity(2, 3, e, t)
            assert ok and a == q2r3[(e, t)].coeffs[6]


def test_trace_sanity_q3():
    J = invariant_make(3, 3, (1, 3))
    a, ok = trace_sanity(3, 3, J, "outgoing")
    assert ok and a.deg_T() == 9


def test_fault_reporting():
    R = ring(2, 3)
    with pytest.raises(PipelineFault) as exc:
        check_coefficient(R.T(-1) + R.one(), 3)
    rep = exc.value.report()
    assert rep["index"] == 3 and rep["stage"] == "final"
    with pytest.raises(PipelineFault):
        check_coefficient(R.g(1), 0)
    check_coefficient(R.g(1) * R.g(2, 2) + R.T(3), 0)


def test_bad_inputs():
    with pytest.raises(ValueError):
        s_of(3, "sideways")
    with pytest.raises(ValueError):
        compute_modpoly(2, 3, invariant_make(3, 3, (1, 3)), "outgoing")
    with pytest.raises(ValueError):
        compute_modpoly(2, 3, (1, 2), "outgoing", PipelineConfig(backend="gpu"))


def test_progress_callback():
    seen = []
    compute_modpoly(2, 2, (3,), "outgoing", PipelineConfig(progress=seen.append))
    assert any("charpoly column" in s for s in seen)
