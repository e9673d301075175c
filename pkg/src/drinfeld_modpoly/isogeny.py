"""T-isogenies of a rank-r Drinfeld module phi_T = T X + g_1 X^q + ... + Delta X^{q^r}.

Outgoing isogenies phi -> phi~ and incoming isogenies phi~ -> phi of degree q
are parametrized by the roots a of the polynomials Q and Q~ built here.  Two
normalizations of the kernel polynomial are supported:

* ``"linear"``: f = X + a X^q (linear coefficient 1)
* ``"monic"``: f = a^{-1} X + X^q (monic in X^q)

Coefficients may be scalars (RingElem, extension-field elements) or anything
behaving like a commutative algebra element with ``frob`` (AlgElem,
RingMatrix); the same recurrences then run on "all roots at once".
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import QuotientAlgebra
from .ring import RingElem, ring
from .skew import SkewPoly
from .upoly import UPoly

NORMALIZATIONS = ("linear", "monic")
DIRECTIONS = ("outgoing", "incoming")


@dataclass(frozen=True)
class DrinfeldModule:
    """phi_T = gammaT X + g_1 X^q + ... + g_{r-1} X^{q^{r-1}} + delta X^{q^r}."""

    q: int
    r: int
    gammaT: object
    g: tuple
    delta: object

    def __post_init__(self):
        if len(self.g) != self.r - 1:
            raise ValueError(f"rank {self.r} module needs {self.r - 1} middle coefficients")
        if not self.delta:
            raise ValueError("Delta must be nonzero")

    @classmethod
    def monic_generic(cls, q: int, r: int) -> DrinfeldModule:
        R = ring(q, r)
        return cls(q, r, R.T(), tuple(R.g(i) for i in range(1, r)), R.one())

    def coeff(self, k: int):
        """g_k with the conventions g_0 = gamma(T), g_r = Delta."""
        if k == 0:
            return self.gammaT
        if k == self.r:
            return self.delta
        return self.g[k - 1]

    def coeffs(self) -> list:
        return [self.coeff(k) for k in range(self.r + 1)]

    def phi_T(self) -> SkewPoly:
        return SkewPoly(self.coeffs())

    def one(self):
        return self.gammaT * 0 + 1

    def is_monic(self) -> bool:
        return self.delta == self.one()

    def conjugate(self, c) -> DrinfeldModule:
        """c phi c^{-1}: l_k -> c^{1-q^k} l_k."""
        cinv = c.inverse()
        scaled = [self.coeff(k) * c * cinv.frob(k) for k in range(self.r + 1)]
        return DrinfeldModule(self.q, self.r, scaled[0], tuple(scaled[1:-1]), scaled[-1])


def _signed(c, i: int):
    return -c if i % 2 else c


def _psi(q: int, i: int) -> int:
    return (q ** i - 1) // (q - 1)


def build_Q(module: DrinfeldModule) -> UPoly:
    """Q(x) = sum_i (-1)^i g_{r-i} x^{(q^r - q^{r-i})/(q-1)}."""
    q, r = module.q, module.r
    zero = module.gammaT * 0
    d = {}
    for i in range(r + 1):
        c = module.coeff(r - i)
        if c:
            d[(q ** r - q ** (r - i)) // (q - 1)] = _signed(c, i)
    return UPoly.from_dict(d, zero)


def build_Qtilde(module: DrinfeldModule, normalization: str = "linear") -> UPoly:
    """Q~(x) = sum_i (-1)^i g_{r-i}^{q^i} x^{psi_i}  (linear),
    or with g_{r-i}^{q^{i-1}} (monic; the i=0 term Delta^{1/q} needs Delta = 1)."""
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization {normalization!r}")
    q, r = module.q, module.r
    zero = module.gammaT * 0
    d = {}
    for i in range(r + 1):
        c = module.coeff(r - i)
        if normalization == "linear":
            c = c.frob(i)
        elif i == 0:
            if not module.is_monic():
                raise ValueError("monic normalization needs Delta = 1 (its q-th root is taken)")
            c = module.one()
        else:
            c = c.frob(i - 1)
        if c:
            d[_psi(q, i)] = _signed(c, i)
    return UPoly.from_dict(d, zero)


def _inverse(a, a_inv):
    if a_inv is not None:
        return a_inv
    try:
        return a.inverse()
    except (ZeroDivisionError, AttributeError) as exc:
        raise ZeroDivisionError("the isogeny parameter a must be invertible") from exc


def outgoing_target(module: DrinfeldModule, a, normalization: str = "monic", a_inv=None) -> DrinfeldModule:
    """Target phi~ of the outgoing isogeny attached to a root a of Q."""
    q, r = module.q, module.r
    g = module.coeffs()
    gt = [module.gammaT]
    if normalization == "linear":
        for k in range(1, r):
            gt.append(g[k] + a * g[k - 1].frob(1) - a.frob(k - 1) * gt[k - 1])
        ainv = _inverse(a, a_inv)
        delta = a * ainv.frob(r) * module.delta.frob(1)
    elif normalization == "monic":
        ainv = _inverse(a, a_inv)
        for k in range(1, r):
            gt.append(a.frob(k) * (ainv * g[k] + g[k - 1].frob(1) - gt[k - 1]))
        delta = module.delta.frob(1)
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    return DrinfeldModule(q, r, gt[0], tuple(gt[1:]), delta)


def incoming_source(module: DrinfeldModule, a, normalization: str = "monic", a_inv=None) -> DrinfeldModule:
    """Source phi~ of the incoming isogeny attached to a root a of Q~.

    Delta~ is a q-th root: 1 when it must be a root of 1, otherwise only
    available over a finite field.
    """
    q, r = module.q, module.r
    g = module.coeffs()
    gt = [module.gammaT]
    if normalization == "linear":
        for k in range(1, r):
            gt.append(g[k] + a.frob(k - 1) * g[k - 1] - a * gt[k - 1].frob(1))
        delta = _qth_root(a ** (q ** r - 1) * module.delta, q)
    elif normalization == "monic":
        ainv = _inverse(a, a_inv)
        for k in range(1, r):
            gt.append(a * (g[k - 1] - gt[k - 1].frob(1)) + a * ainv.frob(k) * g[k])
        delta = _qth_root(module.delta, q)
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    return DrinfeldModule(q, r, gt[0], tuple(gt[1:]), delta)


def _qth_root(x, q: int):
    """x^{1/q}: 1 is its own root; over a finite field use x^{|K|/q}."""
    if x == x * 0 + 1:
        return x
    order = getattr(getattr(x, "field", None), "order", None)
    if order is None:
        raise ValueError("Delta~ needs a q-th root that is not available in this ring")
    return x ** (order // q)


def dual_coeffs(module: DrinfeldModule, a, direction: str = "outgoing", upto: int | None = None) -> list:
    """Closed-form coefficients b_0..b_{upto} of the dual isogeny (upto defaults to r-1).

    outgoing: b_k = sum_i (-1)^i g_{k-i} a^{(q^k - q^{k-i})/(q-1)}
    incoming: b_k = sum_i (-1)^i g_{k-i}^{q^i} a^{psi_i}
    """
    q, r = module.q, module.r
    upto = r - 1 if upto is None else upto
    powers: dict[int, object] = {}

    def apow(e):
        if e not in powers:
            powers[e] = a ** e
        return powers[e]

    out = []
    for k in range(upto + 1):
        acc = None
        for i in range(k + 1):
            gk = module.coeff(k - i)
            if direction == "outgoing":
                e = (q ** k - q ** (k - i)) // (q - 1)
                term = apow(e) * gk if e else gk
            elif direction == "incoming":
                e = _psi(q, i)
                term = apow(e) * gk.frob(i) if e else gk.frob(i)
            else:
                raise ValueError(f"unknown direction {direction!r}")
            term = _signed(term, i)
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def dual_recurrence(module: DrinfeldModule, a, direction: str = "outgoing", upto: int | None = None) -> list:
    """b_0 = T and b_k = g_k - b_{k-1} a^{q^{k-1}} (outgoing) or g_k - a b_{k-1}^q (incoming)."""
    r = module.r
    upto = r - 1 if upto is None else upto
    b = [module.gammaT]
    for k in range(1, upto + 1):
        if direction == "outgoing":
            b.append(module.coeff(k) - b[-1] * a.frob(k - 1))
        else:
            b.append(module.coeff(k) - a * b[-1].frob(1))
    return b


def root_algebra(module: DrinfeldModule, direction: str) -> QuotientAlgebra:
    """R[a]/(Q(a)) (outgoing) or R[a]/(Q~_linear(a)) (incoming)."""
    P = build_Q(module) if direction == "outgoing" else build_Qtilde(module, "linear")
    return QuotientAlgebra(P)


def verify_dual_identity(module: DrinfeldModule, direction: str = "outgoing") -> bool:
    """Check f^ . f = phi_T (outgoing) or f . f^ = phi_T (incoming) modulo the root polynomial.

    f = X + a X^q with a the generic root, f^ from the closed-form b_k.
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"unknown direction {direction!r}")
    A = root_algebra(module, direction)
    a = A.gen()
    lift = A.scalar
    f = SkewPoly([A.one(), a])
    b = dual_coeffs(module, a, direction)
    fhat = SkewPoly([x if not isinstance(x, RingElem) else lift(x) for x in b])
    phi = SkewPoly([lift(c) for c in module.coeffs()])
    composed = fhat * f if direction == "outgoing" else f * fhat
    return composed == phi


def kernel_poly(a, normalization: str = "linear", one=None) -> SkewPoly:
    """The twisted polynomial of f: X + a X^q or a^{-1} X + X^q."""
    one = a * 0 + 1 if one is None else one
    if normalization == "linear":
        return SkewPoly([one, a])
    return SkewPoly([a.inverse(), one])
