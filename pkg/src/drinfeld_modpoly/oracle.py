"""Brute-force cross-check of modular polynomials over finite fields.

For a concrete monic module over F_{q^n} with gamma(T) = theta != 0, the
T-torsion is split over a small extension; every s-dimensional F_q-subspace
W of it gives a kernel polynomial f_W = prod_{w in W} (X - w) and the module
phi~ with phi~_T f_W = f_W phi_T (found by right division).  The specialized
Phi must equal prod_W (X - J(phi~)) as a polynomial.

None of this uses Q, the isogeny recurrences or the characteristic
polynomial, which is what makes it an independent oracle.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .extfield import ExtElem, ExtField, extension, fq_kernel, fq_linear_kernel, lift, pmod, ppowmod, psub
from .fq import fq_make
from .invariants import MonomialInvariant, evaluate_J
from .isogeny import DrinfeldModule
from .skew import SkewPoly
from .upoly import UPoly


class SplittingTooLarge(ValueError):
    """The T-torsion does not split within the configured degree cap."""


@dataclass(frozen=True)
class OracleConfig:
    max_degree: int = 12  # cap on [splitting field : F_q]
    max_tries: int = 200  # attempts per random module before giving up


@dataclass
class TorsionSpace:
    module: DrinfeldModule  # over the base field F_{q^n}
    base: ExtField
    top: ExtField  # splitting field, built over base
    basis: list  # r torsion points (ExtElem over top) spanning phi[T]
    lifted: DrinfeldModule = field(repr=False, default=None)

    @property
    def r(self) -> int:
        return self.module.r

    @property
    def q(self) -> int:
        return self.module.q

    def point(self, coords) -> ExtElem:
        acc = self.top.elem_zero()
        for c, b in zip(coords, self.basis):
            if c:
                acc = acc + b * b.scalar(c)
        return acc


def _phi_T_poly(module: DrinfeldModule) -> list:
    """phi_T(X) / X as a dense list of raw reps over the module's field."""
    K = module.gammaT.field
    q, r = module.q, module.r
    cs = [K.zero] * (q ** r)
    for k, c in enumerate(module.coeffs()):
        cs[q ** k - 1] = c.v
    return cs


def splitting_degree(module: DrinfeldModule, cap: int) -> int | None:
    """Smallest d with phi[T] inside F_{Q^d}, Q = |base|, or None if d > cap."""
    K = module.gammaT.field
    f = _phi_T_poly(module)
    x = [K.zero, K.one]
    h = x
    for d in range(1, cap + 1):
        h = ppowmod(K, h, K.order, f)
        if not psub(K, h, pmod(K, x, f)):
            return d
    return None


def lift_module(top: ExtField, module: DrinfeldModule) -> DrinfeldModule:
    L = lambda c: lift(top, c)  # noqa: E731
    return DrinfeldModule(module.q, module.r, L(module.gammaT), tuple(L(c) for c in module.g), L(module.delta))


def torsion_basis(module: DrinfeldModule, config: OracleConfig = OracleConfig()) -> TorsionSpace:
    if not module.gammaT:
        raise ValueError("gamma(T) = 0 makes phi_T inseparable")
    K = module.gammaT.field
    n = K.degree_over_fq
    d = splitting_degree(module, max(1, config.max_degree // n))
    if d is None:
        raise SplittingTooLarge(f"phi[T] does not split within degree {config.max_degree} over F_{module.q}")
    top = K if d == 1 else extension(K, d)
    lm = lift_module(top, module)
    phi = lm.phi_T()
    basis = fq_linear_kernel(top, phi)
    if len(basis) != module.r:
        raise AssertionError(f"torsion has F_q-dimension {len(basis)}, expected {module.r}")
    return TorsionSpace(module, K, top, basis, lm)


def subspaces(q: int, r: int, s: int):
    """All s-dimensional subspaces of F_q^r, each as its reduced row echelon basis."""
    F = fq_make(q)
    for pivots in itertools.combinations(range(r), s):
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, r) if j not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * r for _ in range(s)]
            for i, p in enumerate(pivots):
                rows[i][p] = F.one
            for (i, j), c in zip(free, vals):
                rows[i][j] = c
            yield rows


def kernel_polynomial(points, one: ExtElem) -> SkewPoly:
    """Monic f with kernel the F_q-span of the given independent points."""
    f = SkewPoly([one])
    q = one.field.prime_q
    for w in points:
        c = f(w)
        if not c:
            raise ValueError("points are not F_q-independent")
        f = SkewPoly([-(c ** (q - 1)), one]) * f
    return f


@dataclass(frozen=True)
class Isogeny:
    kernel: tuple  # F_q-coordinates of a basis of ker f
    f: SkewPoly
    target: DrinfeldModule


def enumerate_isogenies(ts: TorsionSpace, s: int) -> list[Isogeny]:
    """One isogeny phi -> phi~ per s-dimensional subspace of phi[T]."""
    one = ts.top.elem_one()
    phi = ts.lifted.phi_T()
    out = []
    for rows in subspaces(ts.q, ts.r, s):
        f = kernel_polynomial([ts.point(v) for v in rows], one)
        quo, rem = (f * phi).right_divmod(f)
        if rem:
            raise AssertionError(f"f_W does not divide f*phi_T on the right for W = {rows}")
        cs = [quo[k] for k in range(ts.r + 1)]
        target = DrinfeldModule(ts.q, ts.r, cs[0], tuple(cs[1:-1]), cs[-1])
        out.append(Isogeny(tuple(map(tuple, rows)), f, target))
    return out


def dual_of(iso: Isogeny, module: DrinfeldModule) -> SkewPoly:
    """f^ with f^ f = phi_T, by right division."""
    quo, rem = module.phi_T().right_divmod(iso.f)
    if rem:
        raise AssertionError("phi_T is not right-divisible by f")
    return quo


@dataclass
class OracleReport:
    passed: bool
    psi: int
    mismatches: list
    galois_stable: bool = True

    def to_json(self) -> dict:
        return {"pass": self.passed, "psi": self.psi, "mismatches": self.mismatches,
                "galois_stable": self.galois_stable}


def product_of_linears(roots, one: ExtElem) -> UPoly:
    zero = one * 0
    acc = UPoly([one], zero)
    for x in roots:
        acc = acc * UPoly([-x, one], zero)
    return acc


def cross_check(mp, module: DrinfeldModule, ts: TorsionSpace | None = None,
                config: OracleConfig = OracleConfig()) -> OracleReport:
    """Compare the specialization of mp at module with prod (X - J(phi~))."""
    if not module.is_monic():
        raise ValueError("cross_check needs a monic module")
    ts = ts or torsion_basis(module, config)
    iso = enumerate_isogenies(ts, mp.s)
    roots = [evaluate_J(mp.J, i.target) for i in iso]
    one = ts.top.elem_one()
    expected = product_of_linears(roots, one)
    spec = [lift(ts.top, c.specialize(T=module.gammaT, g=list(module.g))) for c in mp.coeffs]
    mism = []
    for k in range(max(len(spec), len(expected))):
        got = spec[k] if k < len(spec) else one * 0
        exp = expected[k]
        if got != exp:
            mism.append({"k": k, "specialized": repr(got.v), "expected": repr(exp.v)})
    Q = ts.base.order
    stable = all(c ** Q == c for c in expected.coeffs)
    return OracleReport(not mism and stable, len(iso), mism, stable)


def random_module(q: int, r: int, n: int, rng: random.Random) -> DrinfeldModule:
    """Random monic module over F_{q^n} with theta != 0."""
    K = extension(fq_make(q), n)
    theta = K.elem_zero()
    while not theta:
        theta = K(K.random(rng))
    g = tuple(K(K.random(rng)) for _ in range(r - 1))
    return DrinfeldModule(q, r, theta, g, K.elem_one())


def random_split_module(q: int, r: int, rng: random.Random, config: OracleConfig = OracleConfig(),
                        degrees=(1, 2, 3, 4)) -> tuple[DrinfeldModule, TorsionSpace]:
    """Random module (base degree drawn from ``degrees``) whose T-torsion splits within the cap."""
    for _ in range(config.max_tries):
        n = rng.choice([d for d in degrees if d <= config.max_degree])
        m = random_module(q, r, n, rng)
        try:
            return m, torsion_basis(m, config)
        except SplittingTooLarge:
            continue
    raise SplittingTooLarge(f"no module with small splitting field found in {config.max_tries} tries")


def line_count(q: int, r: int) -> int:
    return sum(1 for _ in subspaces(q, r, 1))


def hyperplane_kernels(q: int, r: int) -> list:
    """Hyperplanes as kernels of the functionals with leading coefficient 1 (a second enumeration)."""
    F = fq_make(q)
    out = []
    for lam in itertools.product(range(q), repeat=r):
        nz = [c for c in lam if c]
        if nz and nz[0] == 1:
            out.append(fq_kernel([list(lam)], F))
    return out
