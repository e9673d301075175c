"""Finite field towers F_q subset F_{q^n} subset F_{q^{nd}} for the brute-force oracle.

Each level is built over the previous one with the smallest monic irreducible
of the requested degree, where polynomials over a field with Q elements are
ordered by ``sum(index(c_i) * Q**i)`` over their lower coefficients and
``index`` is the integer code of an element (base-|F| digits).

Field objects (``FqField`` or ``ExtField``) share a small duck-typed surface on
raw representations: ``zero``, ``one``, ``add``, ``sub``, ``neg``, ``mul``,
``inv``, ``order``.  ``ExtElem`` wraps a representation with operators so it
can be a coefficient of SkewPoly or the target of ``RingElem.specialize``.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .fq import FqField, fq_make, prime_factors

# ---------------------------------------------------------------------------
# dense polynomials over any field object (lists of reps, low degree first)
# ---------------------------------------------------------------------------

def _trim(K, f):
    while f and f[-1] == K.zero:
        f.pop()
    return f


def pmul(K, f, g):
    if not f or not g:
        return []
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == K.zero:
            continue
        for j, b in enumerate(g):
            if b != K.zero:
                out[i + j] = K.add(out[i + j], K.mul(a, b))
    return _trim(K, out)


def pdivmod(K, f, g):
    g = _trim(K, list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim(K, list(f))
    dg = len(g) - 1
    inv = K.inv(g[-1])
    quo = [K.zero] * max(len(r) - dg, 0)
    while r and len(r) - 1 >= dg:
        c = K.mul(r[-1], inv)
        s = len(r) - 1 - dg
        quo[s] = c
        for j, b in enumerate(g):
            if b != K.zero:
                r[s + j] = K.sub(r[s + j], K.mul(c, b))
        _trim(K, r)
    return _trim(K, quo), r


def pmod(K, f, g):
    return pdivmod(K, f, g)[1]


def psub(K, f, g):
    n = max(len(f), len(g))
    return _trim(K, [K.sub(f[i] if i < len(f) else K.zero, g[i] if i < len(g) else K.zero) for i in range(n)])


def pgcd(K, f, g):
    f, g = _trim(K, list(f)), _trim(K, list(g))
    while g:
        f, g = g, pmod(K, f, g)
    if f:
        inv = K.inv(f[-1])
        f = [K.mul(c, inv) for c in f]
    return f


def ppowmod(K, f, e: int, mod):
    result = [K.one]
    base = pmod(K, f, mod)
    while e:
        if e & 1:
            result = pmod(K, pmul(K, result, base), mod)
        e >>= 1
        if e:
            base = pmod(K, pmul(K, base, base), mod)
    return result


def pderiv(K, f):
    out = []
    for i in range(1, len(f)):
        c = K.zero
        for _ in range(i % K.characteristic):
            c = K.add(c, f[i])
        out.append(c)
    return _trim(K, out)


def is_irreducible_over(K, f) -> bool:
    """Rabin's test over a field with K.order elements."""
    f = _trim(K, list(f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [K.zero, K.one]

    def frob_iter(k):
        h = x
        for _ in range(k):
            h = ppowmod(K, h, K.order, f)
        return h

    if psub(K, frob_iter(n), x):
        return False
    for d in prime_factors(n):
        if len(pgcd(K, f, psub(K, frob_iter(n // d), x))) != 1:
            return False
    return True


def smallest_irreducible_over(K, d: int) -> tuple:
    Q = K.order
    for code in range(Q ** d):
        low, c = [], code
        for _ in range(d):
            c, i = divmod(c, Q)
            low.append(K.from_index(i))
        if low[0] == K.zero:
            continue
        f = low + [K.one]
        if is_irreducible_over(K, f):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# extension fields
# ---------------------------------------------------------------------------

class ExtField:
    """K[y]/(m(y)) for a monic irreducible m over the field K."""

    def __init__(self, base, modulus: tuple):
        self.base = base
        self.d = len(modulus) - 1
        self.modulus = tuple(modulus)
        self.order = base.order ** self.d
        self.characteristic = base.characteristic
        self.prime_q = base.prime_q
        self.degree_over_fq = base.degree_over_fq * self.d
        self.zero = (base.zero,) * self.d
        self.one = (base.one,) + (base.zero,) * (self.d - 1)
        self._tail = [(j, base.neg(c)) for j, c in enumerate(self.modulus[:-1]) if c != base.zero]
        self._frob_cols = None

    def __repr__(self) -> str:
        return f"ExtField(order={self.prime_q}^{self.degree_over_fq})"

    # raw arithmetic ------------------------------------------------------

    def add(self, a, b):
        K = self.base
        return tuple(K.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        K = self.base
        return tuple(K.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        K = self.base
        return tuple(K.neg(x) for x in a)

    def mul(self, a, b):
        K, d = self.base, self.d
        zero = K.zero
        out = [zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                if y != zero:
                    out[i + j] = K.add(out[i + j], K.mul(x, y))
        for i in range(2 * d - 2, d - 1, -1):
            c = out[i]
            if c != zero:
                for j, m in self._tail:
                    out[i - d + j] = K.add(out[i - d + j], K.mul(c, m))
        return tuple(out[:d])

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of 0")
        return self.pow(a, self.order - 2)

    def embed(self, c):
        """Image of a base-field rep."""
        return (c,) + (self.base.zero,) * (self.d - 1)

    def embed_fq(self, c: int):
        """Image of an F_q code through the whole tower."""
        if isinstance(self.base, FqField):
            return self.embed(c)
        return self.embed(self.base.embed_fq(c))

    def index(self, a) -> int:
        Q = self.base.order
        v = 0
        for x in reversed(a):
            v = v * Q + self.base.index(x)
        return v

    def from_index(self, i: int):
        Q = self.base.order
        out = []
        for _ in range(self.d):
            i, r = divmod(i, Q)
            out.append(self.base.from_index(r))
        return tuple(out)

    # F_q-linear structure ----------------------------------------------------

    def to_fq_vector(self, a) -> list[int]:
        out = []
        for x in a:
            out.extend(self.base.to_fq_vector(x))
        return out

    def from_fq_vector(self, v) -> tuple:
        k = self.base.degree_over_fq
        if isinstance(self.base, FqField):
            return tuple(v)
        return tuple(self.base.from_fq_vector(v[i * k:(i + 1) * k]) for i in range(self.d))

    def fq_basis(self) -> list:
        n = self.degree_over_fq
        return [self.from_fq_vector([1 if i == j else 0 for i in range(n)]) for j in range(n)]

    def frob_raw(self, a, k: int = 1):
        """a^{q^k} with q = |F_q| at the bottom of the tower."""
        return self.pow(a, self.prime_q ** k)

    def random(self, rng: random.Random):
        return self.from_index(rng.randrange(self.order))

    # wrappers ------------------------------------------------------------------

    def __call__(self, rep) -> ExtElem:
        return ExtElem(self, rep)

    def elem_zero(self) -> ExtElem:
        return ExtElem(self, self.zero)

    def elem_one(self) -> ExtElem:
        return ExtElem(self, self.one)


class ExtElem:
    __slots__ = ("field", "v")

    def __init__(self, field: ExtField, v):
        self.field = field
        self.v = v

    def _rep(self, other):
        if isinstance(other, ExtElem):
            return other.v
        if isinstance(other, int):
            K = self.field
            F = fq_make(K.prime_q)
            return K.embed_fq(F.from_int(other))
        return NotImplemented

    def __bool__(self) -> bool:
        return self.v != self.field.zero

    def __eq__(self, other) -> bool:
        o = self._rep(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self) -> int:
        return hash(self.v)

    def __add__(self, other):
        o = self._rep(other)
        if o is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, self.field.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._rep(other)
        if o is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, self.field.sub(self.v, o))

    def __rsub__(self, other):
        o = self._rep(other)
        if o is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, self.field.sub(o, self.v))

    def __neg__(self):
        return ExtElem(self.field, self.field.neg(self.v))

    def __mul__(self, other):
        o = self._rep(other)
        if o is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, self.field.mul(self.v, o))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return ExtElem(self.field, self.field.pow(self.v, e))

    def inverse(self):
        return ExtElem(self.field, self.field.inv(self.v))

    def __truediv__(self, other):
        return self * other.inverse()

    def frob(self, k: int = 1):
        return ExtElem(self.field, self.field.frob_raw(self.v, k))

    def scalar(self, c: int):
        """The F_q element with code c in this field."""
        return ExtElem(self.field, self.field.embed_fq(c))

    def __repr__(self) -> str:
        return f"ExtElem({self.v})"


@lru_cache(maxsize=None)
def extension(base, d: int) -> ExtField:
    """Deterministic degree-d extension of a field object."""
    return ExtField(base, smallest_irreducible_over(base, d))


def tower(q: int, n: int, d: int = 1) -> tuple[ExtField, ExtField]:
    """(F_{q^n}, F_{q^{nd}}) with F_{q^{nd}} built on top of F_{q^n}."""
    F = fq_make(q)
    K = extension(F, n)
    return K, extension(K, d)


def lift(top: ExtField, x: ExtElem) -> ExtElem:
    """Embed an element of a lower tower level into ``top``."""
    rep = x.v
    K = x.field
    while K is not top:
        parent = _parent_of(top, K)
        rep = parent.embed(rep)
        K = parent
    return ExtElem(top, rep)


def _parent_of(top: ExtField, K) -> ExtField:
    cur = top
    while cur.base is not K:
        if not isinstance(cur.base, ExtField):
            raise ValueError("field is not part of the tower")
        cur = cur.base
    return cur


def fq_kernel(rows: list[list[int]], F: FqField) -> list[list[int]]:
    """Basis of {x : A x = 0} over F_q for the matrix with the given rows."""
    if not rows:
        return []
    m, n = len(rows), len(rows[0])
    A = [list(r) for r in rows]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if A[i][col]), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = F.inv(A[row][col])
        A[row] = [F.mul(inv, x) for x in A[row]]
        for i in range(m):
            if i != row and A[i][col]:
                c = A[i][col]
                A[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(A[i], A[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * n
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(A[i][fcol])
        basis.append(v)
    return basis


def fq_linear_kernel(K: ExtField, fn) -> list[ExtElem]:
    """F_q-basis of the kernel of an F_q-linear map fn: K -> K."""
    F = fq_make(K.prime_q)
    basis = K.fq_basis()
    images = [K.to_fq_vector(fn(ExtElem(K, b)).v) for b in basis]
    n = len(basis)
    rows = [[images[j][i] for j in range(n)] for i in range(n)]
    return [ExtElem(K, K.from_fq_vector(v)) for v in fq_kernel(rows, F)]
