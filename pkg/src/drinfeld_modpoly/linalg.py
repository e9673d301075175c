"""Square matrices over a commutative ring, with division-free determinants.

The characteristic polynomial uses Berkowitz's algorithm, so it never divides
in the coefficient ring; this is what makes it valid over F_q[T^{+-1}, g]
where Newton-identity methods would divide by multiples of p.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .ring import RingElem, sum_of_products
from .upoly import UPoly


class RingMatrix:
    """Dense square matrix with (sparse) ring entries.

    Ring scalars mix in as scalar matrices, so the matrices can stand in for
    coefficients in the isogeny recurrences; ``frob(k)`` is the q^k-th power.
    """

    __slots__ = ("rows", "zero", "one", "_frob")

    def __init__(self, rows: Sequence[Sequence], zero, one):
        self.rows = [list(r) for r in rows]
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("RingMatrix must be square")
        self.zero, self.one = zero, one
        self._frob = None

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, zero, one) -> RingMatrix:
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], zero, one)

    @classmethod
    def scalar(cls, n: int, c, zero, one) -> RingMatrix:
        return cls([[c if i == j else zero for j in range(n)] for i in range(n)], zero, one)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], zero, one) -> RingMatrix:
        n = len(cols)
        return cls([[cols[j][i] for j in range(n)] for i in range(n)], zero, one)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.n == other.n and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def map(self, fn: Callable) -> RingMatrix:
        return RingMatrix([[fn(x) for x in r] for r in self.rows], fn(self.zero), fn(self.one))

    def __bool__(self) -> bool:
        return any(a for r in self.rows for a in r)

    def _lift(self, other) -> RingMatrix:
        if isinstance(other, RingMatrix):
            if other.n != self.n:
                raise ValueError("dimension mismatch")
            return other
        if isinstance(other, int):
            other = self.zero + other
        return RingMatrix.scalar(self.n, other, self.zero, self.one)

    def __add__(self, other) -> RingMatrix:
        other = self._lift(other)
        return RingMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], self.zero, self.one)

    __radd__ = __add__

    def __sub__(self, other) -> RingMatrix:
        other = self._lift(other)
        return RingMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], self.zero, self.one)

    def __rsub__(self, other) -> RingMatrix:
        return self._lift(other) - self

    def __neg__(self) -> RingMatrix:
        return RingMatrix([[-a for a in r] for r in self.rows], self.zero, self.one)

    def scale(self, c) -> RingMatrix:
        if isinstance(c, int):
            c = self.zero + c
        return RingMatrix([[a * c if a else a for a in r] for r in self.rows], self.zero, self.one)

    def __mul__(self, other) -> RingMatrix:
        if not isinstance(other, RingMatrix):
            return self.scale(other)
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            out.append([_dot(r, col, self.zero) for col in cols])
        return RingMatrix(out, self.zero, self.one)

    def __rmul__(self, other) -> RingMatrix:
        # scalars commute with everything
        return self.scale(other)

    def __pow__(self, k: int) -> RingMatrix:
        return matpow(self, k)

    def frob(self, k: int = 1) -> RingMatrix:
        """M^{q^k}, with q read off the entries; q-th powers are memoized."""
        out = self
        for _ in range(k):
            if out._frob is None:
                out._frob = matpow(out, _q_of(out.zero))
            out = out._frob
        return out

    def matvec(self, v: Sequence) -> list:
        return [_dot(r, v, self.zero) for r in self.rows]

    def commutes_with(self, other: RingMatrix) -> bool:
        return self * other == other * self

    def __repr__(self) -> str:
        return f"RingMatrix(n={self.n})"


def companion(P: UPoly, one) -> RingMatrix:
    """Companion matrix with ones on the subdiagonal and last column -P_0..-P_{n-1}."""
    if P.degree < 1:
        raise ValueError("companion matrix needs degree >= 1")
    if not (P.leading() == one):
        raise ValueError("companion matrix needs a monic polynomial")
    n, zero = P.degree, P.zero
    rows = [[zero] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = one
    for i in range(n):
        rows[i][n - 1] = -P[i]
    return RingMatrix(rows, zero, one)


def trace(M: RingMatrix):
    acc = M.zero
    for i in range(M.n):
        acc = acc + M.rows[i][i]
    return acc


def matpow(M: RingMatrix, k: int) -> RingMatrix:
    if k < 0:
        raise ValueError("matpow needs k >= 0")
    result = RingMatrix.identity(M.n, M.zero, M.one)
    base = M
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def charpoly_division_free(M: RingMatrix, progress: Callable[[int, int], None] | None = None) -> UPoly:
    """det(X*I - M) by Berkowitz's algorithm (no divisions)."""
    n, zero, one = M.n, M.zero, M.one
    if n == 0:
        return UPoly([one], zero)
    A = M.rows
    # descending coefficient vector of the leading k x k principal minor
    c = [one, -A[0][0]]
    for k in range(1, n):
        col = [A[i][k] for i in range(k)]
        row = A[k][:k]
        # t = [1, -a_kk, -R C, -R A C, ..., -R A^{k-1} C]
        t = [one, -A[k][k]]
        v = col
        for j in range(k):
            t.append(-_dot(row, v, zero))
            if j + 1 < k:
                v = [_dot(A[i][:k], v, zero) for i in range(k)]
        new = []
        for i in range(k + 2):
            lo, hi = max(0, i - len(t) + 1), min(i, k) + 1
            new.append(_dot([t[i - j] for j in range(lo, hi)], c[lo:hi], zero))
        c = new
        if progress is not None:
            progress(k + 1, n)
    return UPoly(list(reversed(c)), zero)


def _dot(r: Sequence, v: Sequence, zero):
    if isinstance(zero, RingElem):
        return sum_of_products(list(zip(r, v)), zero.ring)
    acc = zero
    for a, b in zip(r, v):
        if a and b:
            acc = acc + a * b
    return acc


def det(M: RingMatrix):
    cp = charpoly_division_free(M)
    c0 = cp[0]
    return c0 if M.n % 2 == 0 else -c0


def adjugate(M: RingMatrix) -> tuple[RingMatrix, object]:
    """(adj(M), det(M)) from Cayley-Hamilton, division free."""
    n = M.n
    cp = charpoly_division_free(M)  # X^n + c_{n-1} X^{n-1} + ... + c_0
    acc = RingMatrix.identity(n, M.zero, M.one)
    for k in range(n - 1, 0, -1):
        acc = M * acc + RingMatrix.scalar(n, cp[k], M.zero, M.one)
    adj = acc if (n - 1) % 2 == 0 else -acc
    d = cp[0] if n % 2 == 0 else -cp[0]
    return adj, d


def adjugate_inverse(M: RingMatrix) -> tuple[RingMatrix, object]:
    """(M^{-1}, det M); the determinant must be a unit of the coefficient ring."""
    adj, d = adjugate(M)
    try:
        dinv = d.inverse()
    except (ZeroDivisionError, AttributeError) as exc:
        raise ZeroDivisionError(f"determinant {d} is not a unit") from exc
    return adj.scale(dinv), d


def cofactor_det(M: RingMatrix):
    """Laplace expansion along the first row; an O(n!) oracle for small n."""
    n = M.n
    if n == 0:
        return M.one
    if n == 1:
        return M.rows[0][0]
    total = M.zero
    for j in range(n):
        a = M.rows[0][j]
        if not a:
            continue
        minor = RingMatrix([r[:j] + r[j + 1:] for r in M.rows[1:]], M.zero, M.one)
        term = a * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _q_of(zero) -> int:
    ring = getattr(zero, "ring", None)
    if ring is not None:
        return ring.q
    return zero.field.prime_q
