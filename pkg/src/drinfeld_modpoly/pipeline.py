"""Modular polynomials Phi_{J,H}(X) for the monic generic Drinfeld module.

For H = A/TA (outgoing, s = 1) the isogenies are parametrized by the roots a
of Q(x); for H = (A/TA)^{r-1} (incoming, s = r-1) by the roots of Q~(x) in
the normalization f = a^{-1} X + X^q.  With v = 1/a a root of the monic
reciprocal P(x) = x^psi Q(1/x), the recurrences are run on "all roots at
once" and Phi is the characteristic polynomial of multiplication by J~.

Two interchangeable backends realize "all roots at once":

* ``"algebra"``: elements of R[v]/(P(v)) stored as coefficient vectors.
* ``"matrix"``: polynomials in the companion matrix M_v, with M_a the
  adjugate inverse of M_v, stored as full psi x psi matrices.

Both produce the same Phi; the algebra backend is much cheaper.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable

from .algebra import QuotientAlgebra
from .invariants import MonomialInvariant, invariant_make, membership_check_C, psi_r, weight
from .isogeny import DrinfeldModule, build_Q, build_Qtilde, incoming_source, outgoing_target
from .linalg import RingMatrix, adjugate_inverse, charpoly_division_free, companion, trace
from .ring import RingElem, ring
from .upoly import UPoly

log = logging.getLogger("drinfeld_modpoly")

ISO_TYPES = ("outgoing", "incoming")
BACKENDS = ("algebra", "matrix")


class PipelineFault(AssertionError):
    """A pipeline invariant failed; carries the stage, coefficient index and offending term."""

    def __init__(self, stage: str, message: str, index: int | None = None, term: str | None = None):
        self.stage, self.index, self.term = stage, index, term
        where = f" (coefficient a_{index})" if index is not None else ""
        extra = f"; offending term: {term}" if term else ""
        super().__init__(f"[{stage}]{where} {message}{extra}")

    def report(self) -> dict:
        return {"stage": self.stage, "index": self.index, "term": self.term, "message": str(self)}


@dataclass(frozen=True)
class PipelineConfig:
    backend: str = "algebra"
    check_commutation: bool = True
    check_invariants: bool = True
    progress: Callable[[str], None] | None = None


def s_of(r: int, iso_type: str) -> int:
    if iso_type not in ISO_TYPES:
        raise ValueError(f"iso_type must be one of {ISO_TYPES}, got {iso_type!r}")
    return 1 if iso_type == "outgoing" else r - 1


@dataclass(frozen=True)
class ModularPolynomial:
    q: int
    r: int
    J: MonomialInvariant
    iso_type: str
    coeffs: tuple[RingElem, ...]
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def psi(self) -> int:
        return psi_r(self.q, self.r)

    @property
    def s(self) -> int:
        return s_of(self.r, self.iso_type)

    @property
    def weight(self) -> int:
        return weight(self.J, self.s)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def deg_T(self, k: int):
        d = self.coeffs[k].deg_T()
        return None if d == float("-inf") else d

    @property
    def height(self) -> int:
        return max(d for d in (self.deg_T(k) for k in range(len(self.coeffs))) if d is not None)

    def bound(self, k: int) -> int:
        return (self.psi - k) * self.weight

    def as_upoly(self) -> UPoly:
        return UPoly(self.coeffs, ring(self.q, self.r).zero())

    def to_json(self) -> dict:
        w = {"w": self.weight, "w_1": weight(self.J, 1)}
        if self.r > 2:
            w[f"w_{self.r - 1}"] = weight(self.J, self.r - 1)
        return {
            "q": self.q,
            "r": self.r,
            "J": list(self.J.e),
            "e_r": self.J.e_r,
            "type": self.iso_type,
            "psi": self.psi,
            "weights": w,
            "coefficients": [c.to_json() for c in self.coeffs],
            "degree_table": [list(row) for row in degree_table(self)],
        }

    def to_json_text(self) -> str:
        """Deterministic JSON text: scalar fields first, then one coefficient / table row per line."""
        return dumps_json(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> ModularPolynomial:
        q, r = int(data["q"]), int(data["r"])
        J = invariant_make(q, r, data["J"], data.get("e_r"))
        R = ring(q, r)
        return cls(q, r, J, data["type"], tuple(R.from_json(c) for c in data["coefficients"]))


def dumps_json(data: dict) -> str:
    lines = []
    for k, v in data.items():
        if isinstance(v, list) and v and isinstance(v[0], list):
            inner = ",\n".join("  " + json.dumps(x, separators=(",", ":")) for x in v)
            lines.append(f" {json.dumps(k)}: [\n{inner}\n ]")
        else:
            lines.append(f" {json.dumps(k)}: {json.dumps(v)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


# ---------------------------------------------------------------------------
# stages
# ---------------------------------------------------------------------------

def _say(config: PipelineConfig, msg: str) -> None:
    log.info(msg)
    if config.progress is not None:
        config.progress(msg)


def root_polynomial(module: DrinfeldModule, iso_type: str) -> UPoly:
    """Q (outgoing) or Q~ in the a^{-1}X + X^q normalization (incoming)."""
    if iso_type == "outgoing":
        return build_Q(module)
    return build_Qtilde(module, "monic")


def _reciprocal_monic(module: DrinfeldModule, iso_type: str) -> UPoly:
    P = root_polynomial(module, iso_type).reciprocal()
    if not P.is_monic():
        raise PipelineFault("reciprocal", f"P(x) is not monic: leading coefficient {P.leading()}")
    return P


def _isogenous(module: DrinfeldModule, iso_type: str, a, v) -> DrinfeldModule:
    if iso_type == "outgoing":
        return outgoing_target(module, a, "monic", a_inv=v)
    return incoming_source(module, a, "monic", a_inv=v)


def _monomial(module: DrinfeldModule, J: MonomialInvariant, one):
    # Delta~ = 1 on both branches for monic input, so J~ is a product of powers
    factors = [gi ** ei for gi, ei in zip(module.g, J.e) if ei]
    return reduce(lambda x, y: x * y, factors) if factors else one


def lifted_invariant(module: DrinfeldModule, J: MonomialInvariant, iso_type: str,
                     config: PipelineConfig = PipelineConfig()) -> tuple[object, object]:
    """(M_J~, M_v) in the chosen backend; M_J~ is an AlgElem or a RingMatrix."""
    if not module.is_monic():
        raise ValueError("the pipeline needs a monic module (Delta = 1)")
    t0 = time.perf_counter()
    P = _reciprocal_monic(module, iso_type)
    _say(config, f"built P(x) of degree {P.degree} ({iso_type})")
    if config.backend == "algebra":
        A = QuotientAlgebra(P)
        v = A.gen()
        a = A.gen_inverse()
    elif config.backend == "matrix":
        zero, one = P.zero, P.zero + 1
        v = companion(P, one)
        a, d = adjugate_inverse(v)
        _say(config, f"M_a built, det M_v = {d}")
    else:
        raise ValueError(f"unknown backend {config.backend!r}")
    tgt = _isogenous(module, iso_type, a, v)
    for k, gk in enumerate(tgt.g, start=1):
        _say(config, f"recurrence k={k} done")
        if config.check_commutation and config.backend == "matrix" and not gk.commutes_with(v):
            raise PipelineFault("recurrence", f"M_g~{k} does not commute with M_v")
    if not (tgt.delta == tgt.delta * 0 + 1):
        raise PipelineFault("recurrence", f"Delta~ = {tgt.delta} is not 1")
    one = v * 0 + 1
    Jt = _monomial(tgt, J, one)
    _say(config, f"J~ formed in {time.perf_counter() - t0:.2f}s")
    return Jt, v


def _as_matrix(x) -> RingMatrix:
    if isinstance(x, RingMatrix):
        return x
    R0 = x.alg.zero
    return RingMatrix.from_columns(x.mult_matrix_columns(), R0, R0 + 1)


def _neg_trace(x):
    if isinstance(x, RingMatrix):
        return -trace(x)
    return -x.trace()


def check_coefficient(c: RingElem, k: int, stage: str = "final") -> None:
    if c.has_negative_T():
        bad = next(f"{cc}*T^{t}*g^{list(g)}" for cc, t, g in c.iter_terms() if t < 0)
        raise PipelineFault(stage, "negative T-exponent survived", k, bad)
    R = c.ring
    mod = R.q ** R.r - 1
    ws = [R.q ** i - 1 for i in range(1, R.r)]
    for cc, t, g in c.iter_terms():
        if sum(w * e for w, e in zip(ws, g)) % mod:
            raise PipelineFault(stage, "coefficient is not in C'", k, f"{cc}*T^{t}*g^{list(g)}")


def modpoly_coefficients(module: DrinfeldModule, J: MonomialInvariant, iso_type: str,
                         config: PipelineConfig = PipelineConfig()) -> list:
    """Coefficients a_0..a_psi of prod_f (X - J(phi^(f))) for an arbitrary monic module."""
    Jt, v = lifted_invariant(module, J, iso_type, config)
    M = _as_matrix(Jt)
    if config.check_commutation and config.backend == "algebra":
        Mv = companion(Jt.alg.P, Jt.alg.one_c)
        if not M.commutes_with(Mv):
            raise PipelineFault("multiplication matrix", "M_J~ does not commute with M_v")
    t0 = time.perf_counter()

    def prog(k, n):
        _say(config, f"charpoly column {k}/{n} ({time.perf_counter() - t0:.1f}s)")

    cp = charpoly_division_free(M, progress=prog)
    return list(cp.coeffs)


def compute_modpoly(q: int, r: int, J: MonomialInvariant | tuple, iso_type: str,
                    config: PipelineConfig = PipelineConfig()) -> ModularPolynomial:
    """Phi_{J,H}(X) in C'[X] for the monic generic rank-r module over F_q."""
    if not isinstance(J, MonomialInvariant):
        J = invariant_make(q, r, J)
    if (J.q, J.r) != (q, r):
        raise ValueError("invariant was made for a different (q, r)")
    s_of(r, iso_type)
    module = DrinfeldModule.monic_generic(q, r)
    t0 = time.perf_counter()
    coeffs = modpoly_coefficients(module, J, iso_type, config)
    mp = ModularPolynomial(q, r, J, iso_type, tuple(coeffs),
                           {"backend": config.backend, "seconds": round(time.perf_counter() - t0, 3)})
    if config.check_invariants:
        check_modpoly(mp)
    return mp


def check_modpoly(mp: ModularPolynomial) -> None:
    """Raise PipelineFault unless Phi is monic of degree psi, in C'[X], and within the bounds."""
    if mp.degree != mp.psi:
        raise PipelineFault("final", f"degree {mp.degree} != psi = {mp.psi}")
    if not mp.coeffs[-1].is_one():
        raise PipelineFault("final", "Phi is not monic", mp.psi, str(mp.coeffs[-1]))
    for k, c in enumerate(mp.coeffs):
        check_coefficient(c, k)
    verify_theorem(mp)


# ---------------------------------------------------------------------------
# verification and reporting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TheoremReport:
    rows: tuple[tuple[int, int | None, int, bool], ...]  # (k, deg_T a_k, bound, sharp)
    height: int
    expected_height: int

    @property
    def all_sharp(self) -> bool:
        return all(sharp for _, _, _, sharp in self.rows)

    @property
    def non_sharp(self) -> list[int]:
        return [k for k, _, _, sharp in self.rows if not sharp]

    def to_json(self) -> dict:
        return {"rows": [list(r) for r in self.rows], "height": self.height,
                "expected_height": self.expected_height, "all_sharp": self.all_sharp}


def verify_theorem(mp: ModularPolynomial) -> TheoremReport:
    """Check deg_T a_0 = psi w_s(J) and deg_T a_k <= (psi - k) w_s(J); raise on violation."""
    rows = []
    for k in range(len(mp.coeffs)):
        d, b = mp.deg_T(k), mp.bound(k)
        if d is not None and d > b:
            raise PipelineFault("theorem", f"deg_T = {d} exceeds the bound {b}", k)
        rows.append((k, d, b, d == b))
    if rows[0][1] != rows[0][2]:
        raise PipelineFault("theorem", f"deg_T a_0 = {rows[0][1]} differs from psi*w = {rows[0][2]}", 0)
    h = mp.height
    return TheoremReport(tuple(rows), h, mp.psi * mp.weight)


def degree_table(mp: ModularPolynomial) -> list[tuple[int, int | None, int]]:
    """Rows (i, deg_T a_i, (psi - i) w_s(J))."""
    return [(k, mp.deg_T(k), mp.bound(k)) for k in range(len(mp.coeffs))]


def trace_sanity(q: int, r: int, J: MonomialInvariant | tuple, iso_type: str,
                 config: PipelineConfig = PipelineConfig()) -> tuple[RingElem, bool]:
    """a_{psi-1} = -Tr(M_J~) alone, with pass = (in C'[T-polynomials]) and deg_T <= w_s(J)."""
    if not isinstance(J, MonomialInvariant):
        J = invariant_make(q, r, J)
    module = DrinfeldModule.monic_generic(q, r)
    Jt, _ = lifted_invariant(module, J, iso_type, config)
    a = _neg_trace(Jt)
    ok = not a.has_negative_T() and membership_check_C(a) and a.deg_T() <= weight(J, s_of(r, iso_type))
    return a, ok


def specialize_modpoly(mp: ModularPolynomial, T, g) -> list:
    """Images of a_0..a_psi under T -> T, g_i -> g[i-1]."""
    return [c.specialize(T=T, g=g) for c in mp.coeffs]

