"""The algebra R[x]/(P(x)) for a polynomial P whose leading coefficient is a unit.

This is where "a root of P" lives symbolically.  Since the companion matrix
of P generates a copy of this algebra inside the n x n matrices, everything
the matrix pipeline does with M_v, M_a and their products can be carried out
here on n-vectors instead of n x n matrices.

Coefficients must provide +, -, *, truthiness, ``frob(k)`` and, for the
leading coefficient of P, ``inverse()``.  Because the algebra is commutative
of characteristic p, the q-th power map is
(sum c_i x^i)^q = sum c_i^q x^{qi}, reduced mod P.
"""

from __future__ import annotations

from typing import Sequence

from .upoly import UPoly


class QuotientAlgebra:
    def __init__(self, P: UPoly):
        if P.degree < 1:
            raise ValueError("modulus must have positive degree")
        lead = P.leading()
        if not (lead == lead * 0 + 1):
            inv = lead.inverse()
            P = P * inv
        self.P = P
        self.n = P.degree
        self.zero = P.zero
        self.one_c = P.zero + 1 if not isinstance(P.zero, int) else 1
        # x^n = -sum_{j<n} P_j x^j; keep only the nonzero lower coefficients
        self._tail = [(j, -c) for j, c in enumerate(P.coeffs[:-1]) if c]
        self._x_powers = {}

    def __repr__(self) -> str:
        return f"QuotientAlgebra(n={self.n})"

    def element(self, coeffs: Sequence) -> AlgElem:
        cs = list(coeffs)
        if len(cs) > self.n:
            cs = self._reduce(cs)
        cs += [self.zero] * (self.n - len(cs))
        return AlgElem(self, cs)

    def scalar(self, c) -> AlgElem:
        return AlgElem(self, [c] + [self.zero] * (self.n - 1))

    def zero_elem(self) -> AlgElem:
        return AlgElem(self, [self.zero] * self.n)

    def one(self) -> AlgElem:
        return self.scalar(self.one_c)

    def gen(self) -> AlgElem:
        """The class of x."""
        if self.n == 1:
            return self.element([self.zero, self.one_c])
        return self.element([self.zero, self.one_c])

    def gen_inverse(self) -> AlgElem:
        """x^{-1} = -(x^{n-1} + P_{n-1} x^{n-2} + ... + P_1) / P_0; needs P_0 a unit."""
        c0 = self.P.coeffs[0]
        if not c0:
            raise ZeroDivisionError("x is a zero divisor (P(0) = 0)")
        inv0 = -(c0.inverse())
        cs = [c * inv0 if c else self.zero for c in self.P.coeffs[1:]]
        return AlgElem(self, cs)

    def _reduce(self, cs: list) -> list:
        n = self.n
        tail = self._tail
        zero = self.zero
        for i in range(len(cs) - 1, n - 1, -1):
            c = cs[i]
            if not c:
                continue
            base = i - n
            for j, pj in tail:
                cs[base + j] = cs[base + j] + c * pj
            cs[i] = zero
        return cs[:n]

    def mul_lists(self, a: Sequence, b: Sequence) -> list:
        n = self.n
        out = [self.zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return self._reduce(out)


class AlgElem:
    __slots__ = ("alg", "c")

    def __init__(self, alg: QuotientAlgebra, coeffs: list):
        self.alg = alg
        self.c = coeffs

    def __bool__(self) -> bool:
        return any(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgElem):
            return all(a == b for a, b in zip(self.c, other.c))
        if other == 0:
            return not self
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.c))

    def _lift(self, other) -> AlgElem:
        if isinstance(other, AlgElem):
            return other
        return self.alg.scalar(other if not isinstance(other, int) else self.alg.zero + other)

    def __add__(self, other) -> AlgElem:
        other = self._lift(other)
        return AlgElem(self.alg, [a + b for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __sub__(self, other) -> AlgElem:
        other = self._lift(other)
        return AlgElem(self.alg, [a - b for a, b in zip(self.c, other.c)])

    def __rsub__(self, other) -> AlgElem:
        return self._lift(other) - self

    def __neg__(self) -> AlgElem:
        return AlgElem(self.alg, [-a for a in self.c])

    def __mul__(self, other) -> AlgElem:
        if isinstance(other, AlgElem):
            return AlgElem(self.alg, self.alg.mul_lists(self.c, other.c))
        if isinstance(other, int):
            other = self.alg.zero + other
        return AlgElem(self.alg, [a * other if a else a for a in self.c])

    __rmul__ = __mul__

    def frob(self, k: int = 1) -> AlgElem:
        """The q^k-th power, via the freshman's dream in characteristic p."""
        out = self
        for _ in range(k):
            out = out._frob1()
        return out

    def _frob1(self) -> AlgElem:
        alg = self.alg
        q = _q_of(alg)
        cs = [alg.zero] * (q * (alg.n - 1) + 1)
        for i, a in enumerate(self.c):
            if a:
                cs[q * i] = a.frob(1)
        return AlgElem(alg, alg._reduce(cs))

    def __pow__(self, e: int) -> AlgElem:
        """Power via the base-q expansion of e: x^e = prod (x^{q^j})^{d_j}."""
        if e < 0:
            raise ValueError("negative powers are not supported")
        q = _q_of(self.alg)
        result = None
        cur = self
        while e:
            e, d = divmod(e, q)
            if d:
                piece = cur
                for _ in range(d - 1):
                    piece = piece * cur
                result = piece if result is None else result * piece
            if e:
                cur = cur._frob1()
        return result if result is not None else self.alg.one()

    def mul_x(self) -> AlgElem:
        """Multiply by the generator x (shift and one reduction step)."""
        alg = self.alg
        cs = [alg.zero] + list(self.c)
        return AlgElem(alg, alg._reduce(cs))

    def mult_matrix_columns(self) -> list[list]:
        """Columns j = coefficients of self * x^j, j = 0..n-1."""
        cols = []
        cur = self
        for j in range(self.alg.n):
            cols.append(list(cur.c))
            if j + 1 < self.alg.n:
                cur = cur.mul_x()
        return cols

    def trace(self):
        """Trace of multiplication by self."""
        tr = self.alg.zero
        cur = self
        for j in range(self.alg.n):
            tr = tr + cur.c[j]
            if j + 1 < self.alg.n:
                cur = cur.mul_x()
        return tr

    def __repr__(self) -> str:
        return f"AlgElem({self.c!r})"


def _q_of(alg: QuotientAlgebra) -> int:
    z = alg.zero
    ring = getattr(z, "ring", None)
    if ring is not None:
        return ring.q
    return z.field.prime_q
