"""Finite fields F_q, q = p^m, and dense polynomial helpers over them.

Elements of F_q are plain ints in ``range(q)``.  For m > 1 the int encodes the
residue polynomial c_0 + c_1 z + ... + c_{m-1} z^{m-1} (mod the defining
polynomial) through its base-p digits, i.e. ``c = sum(c_i * p**i)``.

The defining polynomial of F_{p^m} is the smallest monic irreducible of degree
m, where monic polynomials of a fixed degree are ordered by the integer
``sum(c_i * p**i)`` formed from their lower coefficients.  For q=4 this picks
z^2 + z + 1.
"""

from __future__ import annotations

from functools import lru_cache

MAX_Q = 256


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q == p**m, or raise ValueError."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise ValueError(f"q={q} is not a prime power")
    return p, m


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FqField:
    """The field with q elements, backed by full add/mul tables.

    Besides arithmetic on int codes it exposes the small surface shared with
    extension fields (``zero``, ``one``, ``order``, ``index``...), so towers
    can be built on top of it.
    """

    zero = 0
    one = 1
    degree_over_fq = 1

    def __init__(self, q: int, modulus: tuple[int, ...] | None = None):
        p, m = factor_prime_power(q)
        self.q, self.p, self.m = q, p, m
        self.is_prime = m == 1
        if self.is_prime:
            self.modulus = (0, 1)  # z
            self._add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self._mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            self.modulus = modulus if modulus is not None else _smallest_irreducible(prime_field(p), m)
            self._build_tables()
        self._neg = [self._sub_slow(0, a) for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break

    @property
    def order(self) -> int:
        return self.q

    @property
    def prime_q(self) -> int:
        return self.q

    @property
    def characteristic(self) -> int:
        return self.p

    def index(self, a: int) -> int:
        return a

    def from_index(self, i: int) -> int:
        return i

    def to_fq_vector(self, a: int) -> list[int]:
        return [a]

    # table construction -------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def _undigits(self, ds) -> int:
        v = 0
        for d in reversed(ds):
            v = v * self.p + d
        return v

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        digs = [self._digits(a) for a in range(q)]
        self._add = [[self._undigits([(x + y) % p for x, y in zip(digs[a], digs[b])])
                      for b in range(q)] for a in range(q)]
        mod = self.modulus
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * m - 1)
                for i, x in enumerate(digs[a]):
                    if x:
                        for j, y in enumerate(digs[b]):
                            prod[i + j] = (prod[i + j] + x * y) % p
                for i in range(2 * m - 2, m - 1, -1):
                    c = prod[i]
                    if c:
                        for j in range(m):
                            prod[i - m + j] = (prod[i - m + j] - c * mod[j]) % p
                        prod[i] = 0
                mul[a][b] = mul[b][a] = self._undigits(prod[:m])
        self._mul = mul

    def _sub_slow(self, a: int, b: int) -> int:
        if self.is_prime:
            return (a - b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x - y) % self.p for x, y in zip(da, db)])

    # arithmetic ------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self._inv[a]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self._mul[result][a]
            a = self._mul[a][a]
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        return n % self.p

    @property
    def gen(self) -> int:
        """The residue class of z (for prime q: the smallest primitive root)."""
        if not self.is_prime:
            return self.p
        return self.primitive_element()

    def primitive_element(self) -> int:
        order = self.q - 1
        for a in range(1, self.q):
            if all(self.pow(a, order // f) != 1 for f in prime_factors(order)):
                return a
        raise AssertionError("no primitive element")  # pragma: no cover

    def elements(self) -> range:
        return range(self.q)

    def format(self, a: int) -> str:
        """Text form: an int for prime fields, a polynomial in z otherwise."""
        if self.is_prime:
            return str(a)
        parts = []
        for i, d in reversed(list(enumerate(self._digits(a)))):
            if not d:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                parts.append(str(d))
            else:
                parts.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(parts) if parts else "0"

    def parse(self, s: str) -> int:
        s = s.strip().replace(" ", "")
        if self.is_prime:
            return int(s) % self.p
        ds = [0] * self.m
        for tok in s.split("+"):
            if not tok:
                continue
            coef, _, mono = tok.rpartition("*") if "*" in tok else ("", "", tok)
            if "z" not in mono:
                coef, mono = mono, ""
            c = int(coef) if coef else 1
            if not mono:
                i = 0
            elif mono == "z":
                i = 1
            else:
                i = int(mono.split("^")[1])
            if i >= self.m:
                raise ValueError(f"power z^{i} out of range for F_{self.q}")
            ds[i] = (ds[i] + c) % self.p
        return self._undigits(ds)

    def __repr__(self) -> str:
        return f"FqField(q={self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FqField) and other.q == self.q and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))


@lru_cache(maxsize=None)
def prime_field(p: int) -> FqField:
    return FqField(p)


@lru_cache(maxsize=None)
def fq_make(q: int) -> FqField:
    """Field descriptor for F_q; q must be a prime power with q <= MAX_Q."""
    factor_prime_power(q)
    if q > MAX_Q:
        raise ValueError(f"q={q} exceeds the supported cap {MAX_Q}")
    return FqField(q)


# --------------------------------------------------------------------------
# dense univariate polynomials over F_q: lists of ints, lowest degree first
# --------------------------------------------------------------------------

def poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_sub(F: FqField, f, g) -> list[int]:
    n = max(len(f), len(g))
    out = [F.sub(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)]
    return poly_trim(out)


def poly_mul(F: FqField, f, g) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    add, mul = F._add, F._mul
    for i, a in enumerate(f):
        if a:
            row = mul[a]
            for j, b in enumerate(g):
                if b:
                    out[i + j] = add[out[i + j]][row[b]]
    return poly_trim(out)


def poly_divmod(F: FqField, f, g) -> tuple[list[int], list[int]]:
    g = poly_trim(list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    poly_trim(r)
    dg = len(g) - 1
    inv_lead = F.inv(g[-1])
    quo = [0] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        c = F.mul(r[-1], inv_lead)
        shift = len(r) - 1 - dg
        quo[shift] = c
        for j, b in enumerate(g):
            r[shift + j] = F.sub(r[shift + j], F.mul(c, b))
        poly_trim(r)
    return poly_trim(quo), r


def poly_mod(F: FqField, f, g) -> list[int]:
    return poly_divmod(F, f, g)[1]


def poly_gcd(F: FqField, f, g) -> list[int]:
    f, g = poly_trim(list(f)), poly_trim(list(g))
    while g:
        f, g = g, poly_mod(F, f, g)
    if f:
        inv = F.inv(f[-1])
        f = [F.mul(c, inv) for c in f]
    return f


def poly_powmod(F: FqField, f, e: int, mod) -> list[int]:
    result = [1]
    base = poly_mod(F, f, mod)
    while e:
        if e & 1:
            result = poly_mod(F, poly_mul(F, result, base), mod)
        base = poly_mod(F, poly_mul(F, base, base), mod)
        e >>= 1
    return result


def is_irreducible(F: FqField, f) -> bool:
    """Rabin's irreducibility test for a polynomial over F_q."""
    f = poly_trim(list(f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    # x^{q^k} mod f by repeated q-th powering
    def frob_iter(k):
        h = x
        for _ in range(k):
            h = poly_powmod(F, h, F.q, f)
        return h
    if poly_sub(F, frob_iter(n), x):
        return False
    for d in prime_factors(n):
        h = poly_sub(F, frob_iter(n // d), x)
        if len(poly_gcd(F, f, h)) != 1:
            return False
    return True


def _smallest_irreducible(F: FqField, n: int) -> tuple[int, ...]:
    q = F.q
    for code in range(q ** n):
        low, c = [], code
        for _ in range(n):
            c, d = divmod(c, q)
            low.append(d)
        f = low + [1]
        if low[0] != 0 and is_irreducible(F, f):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@lru_cache(maxsize=None)
def smallest_irreducible(q: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree n over F_q (same ordering as fq_make)."""
    return _smallest_irreducible(fq_make(q), n)
