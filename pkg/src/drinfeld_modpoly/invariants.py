"""Monomial isomorphism invariants J = g_1^e_1 ... g_{r-1}^e_{r-1} Delta^{-e_r}."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .ring import RingElem


class InvariantError(ValueError):
    """Exponents that violate the grading sum e_i (q^i - 1) = e_r (q^r - 1)."""


def psi_r(q: int, r: int) -> int:
    """(q^r - 1)/(q - 1): number of T-isogenies of either type, and deg_X of Phi."""
    if q < 2 or r < 1:
        raise ValueError("need q >= 2 and r >= 1")
    return (q ** r - 1) // (q - 1)


@dataclass(frozen=True)
class MonomialInvariant:
    q: int
    r: int
    e: tuple[int, ...]
    e_r: int

    @property
    def name(self) -> str:
        return "J_" + "".join(str(x) for x in self.e) if all(x < 10 for x in self.e) else "J_" + "_".join(map(str, self.e))

    def weight(self, s: int) -> int:
        return weight(self, s)

    def __mul__(self, other: MonomialInvariant) -> MonomialInvariant:
        if (self.q, self.r) != (other.q, other.r):
            raise ValueError("invariants for different (q, r)")
        return MonomialInvariant(self.q, self.r, tuple(a + b for a, b in zip(self.e, other.e)), self.e_r + other.e_r)


def grading_residue(q: int, r: int, e) -> int:
    return sum(ei * (q ** i - 1) for i, ei in enumerate(e, start=1))


def invariant_make(q: int, r: int, e, e_r: int | None = None) -> MonomialInvariant:
    """Validated invariant; e_r is inferred when omitted."""
    e = tuple(int(x) for x in e)
    if len(e) != r - 1:
        raise InvariantError(f"expected {r - 1} exponents for rank {r}, got {len(e)}")
    if any(x < 0 for x in e) or (e_r is not None and e_r < 0):
        raise InvariantError("exponents must be nonnegative")
    total = grading_residue(q, r, e)
    mod = q ** r - 1
    if e_r is None:
        if total % mod:
            raise InvariantError(
                f"sum e_i(q^i-1) = {total} is not divisible by q^r-1 = {mod} (residue {total % mod})")
        e_r = total // mod
    elif total != e_r * mod:
        raise InvariantError(
            f"grading fails: sum e_i(q^i-1) = {total} != e_r(q^r-1) = {e_r * mod} (residue {total % mod})")
    return MonomialInvariant(q, r, e, e_r)


def weight(J: MonomialInvariant, s: int) -> int:
    """w_1(J) = q(sum e_i - e_r); w_{r-1}(J) = sum e_i + e_r(q^r - q^{r-1} - 1)."""
    q, r = J.q, J.r
    se = sum(J.e)
    if s == 1:
        return q * (se - J.e_r)
    if s == r - 1:
        return se + J.e_r * (q ** r - q ** (r - 1) - 1)
    raise ValueError(f"weight defined only for s in {{1, {r - 1}}}, got {s}")


def evaluate_J(J: MonomialInvariant, module):
    """J(phi) = prod l_i^e_i * Delta^{-e_r} for phi_T = gamma(T) X + l_1 X^q + ... + Delta X^{q^r}."""
    if module.r != J.r:
        raise ValueError("rank mismatch between invariant and module")
    factors = [gi ** ei for gi, ei in zip(module.g, J.e) if ei]
    delta = module.delta
    if J.e_r and not _is_one(delta):
        try:
            dinv = delta.inverse()
        except (ZeroDivisionError, AttributeError) as exc:
            raise ZeroDivisionError("Delta is not invertible") from exc
        factors.append(dinv ** J.e_r)
    if not factors:
        return module.one()
    return reduce(lambda x, y: x * y, factors)


def _is_one(x) -> bool:
    try:
        return x == x * 0 + 1
    except TypeError:  # pragma: no cover
        return False


def membership_check_C(x: RingElem) -> bool:
    """True iff every term g^e satisfies sum e_i(q^i - 1) = 0 mod (q^r - 1)."""
    R = x.ring
    if x.has_negative_T():
        raise ValueError("negative T-exponent: element is not in F_q[T, g]")
    q, r = R.q, R.r
    mod = q ** r - 1
    weights = [q ** i - 1 for i in range(1, r)]
    for _, _, gs in x.iter_terms():
        if sum(w * e for w, e in zip(weights, gs)) % mod:
            return False
    return True


# generators of C for r=3, q=2 and the small invariants tabulated for
# (r, q) = (4, 2) and (3, 3); tuples are (e_1, ..., e_{r-1}, e_r)
KNOWN_INVARIANTS = {
    (2, 3): [(1, 2, 1), (4, 1, 1), (7, 0, 1), (0, 7, 3)],
    (2, 4): [(1, 0, 2, 1), (0, 5, 0, 1), (2, 2, 1, 1)],
    (3, 3): [(1, 3, 1), (5, 2, 1), (9, 1, 1), (2, 6, 2)],
}


def known_invariants(q: int, r: int) -> list[MonomialInvariant]:
    return [invariant_make(q, r, t[:-1], t[-1]) for t in KNOWN_INVARIANTS.get((q, r), [])]


def j_invariant_rank2(q: int) -> MonomialInvariant:
    """The classical rank-2 j = g_1^{q+1} / Delta."""
    return invariant_make(q, 2, (q + 1,), 1)
