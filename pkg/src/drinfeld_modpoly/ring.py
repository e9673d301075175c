"""Sparse exact arithmetic in R = F_q[T, 1/T, g_1, ..., g_{r-1}].

A ring element is a dict from packed exponent keys to nonzero F_q codes.  The
key of T^t g_1^e_1 ... g_{r-1}^e_{r-1} is

    t + sum(e_i << (t_bits + g_bits*(i-1)))

so monomial multiplication is key addition.  t is signed (|t| < 2^(t_bits-1))
and each g-exponent stays below 2^g_bits; exceeding either raises
OverflowError.  The field widths depend on the number of g-variables so that
keys fit in a signed 64-bit word whenever possible (see ``Layout``); large
products then go through a compiled kernel.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import _fastmul
from .fq import FqField, fq_make

NEG_INF = float("-inf")

# products with at least this many term pairs use the compiled kernel
FASTMUL_THRESHOLD = 4096


@dataclass(frozen=True)
class Layout:
    """Bit widths of the packed exponent key."""

    t_bits: int
    g_bits: int
    nvars: int

    @property
    def t_limit(self) -> int:
        return 1 << (self.t_bits - 1)

    @property
    def g_limit(self) -> int:
        return 1 << self.g_bits

    @property
    def fits_int64(self) -> bool:
        return self.t_bits + self.g_bits * self.nvars <= 63

    def pack(self, t: int, gexps: Sequence[int]) -> int:
        if not -self.t_limit < t < self.t_limit:
            raise OverflowError(f"T-exponent {t} out of range")
        key = t
        shift = self.t_bits
        lim = self.g_limit
        for e in gexps:
            if not 0 <= e < lim:
                raise OverflowError(f"g-exponent {e} out of range")
            key += e << shift
            shift += self.g_bits
        return key

    def t_of(self, key: int) -> int:
        tl = self.t_limit
        return ((key + tl) & ((tl << 1) - 1)) - tl

    def unpack(self, key: int) -> tuple[int, tuple[int, ...]]:
        t = self.t_of(key)
        rest = (key - t) >> self.t_bits
        mask = self.g_limit - 1
        gs = []
        for _ in range(self.nvars):
            gs.append(rest & mask)
            rest >>= self.g_bits
        return t, tuple(gs)


def layout_for(nvars: int) -> Layout:
    """T gets 30 bits and each g 16 bits up to two g-variables, 24/12 bits for three;
    more variables fall back to 32/16 bits in arbitrary-precision keys."""
    if nvars <= 2:
        return Layout(30, 16, nvars)
    if nvars == 3:
        return Layout(24, 12, nvars)
    return Layout(32, 16, nvars)


class Ring:
    """The coefficient ring F_q[T^{+-1}, g_1..g_{r-1}] for a fixed (q, r)."""

    def __init__(self, q: int, r: int):
        if r < 1:
            raise ValueError("rank r must be >= 1")
        self.q, self.r = q, r
        self.field: FqField = fq_make(q)
        self.p = self.field.p
        self.nvars = r - 1
        self.layout = layout_for(self.nvars)
        self.fast = _fastmul.AVAILABLE and self.layout.fits_int64

    def __repr__(self) -> str:
        return f"Ring(q={self.q}, r={self.r})"

    def __reduce__(self):
        return (ring, (self.q, self.r))

    def zero(self) -> RingElem:
        return RingElem(self, {})

    def one(self) -> RingElem:
        return RingElem(self, {0: 1})

    def constant(self, c: int) -> RingElem:
        return RingElem(self, {0: c} if c else {})

    def from_int(self, n: int) -> RingElem:
        return self.constant(self.field.from_int(n))

    def T(self, k: int = 1) -> RingElem:
        return RingElem(self, {self.layout.pack(k, [0] * self.nvars): 1})

    def g(self, i: int, k: int = 1) -> RingElem:
        """The variable g_i (1 <= i <= r-1), raised to the k-th power."""
        if not 1 <= i <= self.nvars:
            raise ValueError(f"g_{i} is not a variable of {self}")
        e = [0] * self.nvars
        e[i - 1] = k
        return RingElem(self, {self.layout.pack(0, e): 1})

    def monomial(self, c: int, t: int, gexps: Sequence[int]) -> RingElem:
        if len(gexps) != self.nvars:
            raise ValueError("wrong number of g-exponents")
        return RingElem(self, {self.layout.pack(t, gexps): c} if c else {})

    def from_terms(self, terms: Iterable[tuple[int, int, Sequence[int]]]) -> RingElem:
        """Build from (coefficient, t, g-exponents) triples; repeated monomials add up."""
        F = self.field
        d: dict[int, int] = {}
        for c, t, g in terms:
            if len(g) != self.nvars:
                raise ValueError("wrong number of g-exponents")
            k = self.layout.pack(t, g)
            d[k] = F.add(d.get(k, 0), c)
        return RingElem(self, {k: c for k, c in d.items() if c})

    # text / json --------------------------------------------------------

    def parse(self, text: str) -> RingElem:
        return parse_elem(self, text)

    def from_json(self, data: list[dict]) -> RingElem:
        F = self.field
        terms = []
        for item in data:
            c = item["c"]
            c = F.parse(c) if isinstance(c, str) else F.from_int(c) if F.is_prime else c
            terms.append((c, int(item["t"]), tuple(item["g"])))
        return self.from_terms(terms)


@lru_cache(maxsize=None)
def ring(q: int, r: int) -> Ring:
    """Shared ring instance for (q, r)."""
    return Ring(q, r)


class RingElem:
    """Immutable element of F_q[T^{+-1}, g_1..g_{r-1}]."""

    __slots__ = ("ring", "terms", "_hash", "_bnd", "_arr")

    def __init__(self, ring: Ring, terms: dict[int, int], bounds=None, arrays=None):
        self.ring = ring
        self.terms = terms
        self._hash = None
        self._bnd = bounds
        self._arr = arrays

    def _arrays(self):
        """(keys, values) as int64 arrays, cached; only for int64 layouts."""
        if self._arr is None:
            self._arr = _fastmul.to_arrays(self.terms)
        return self._arr

    def _bounds(self) -> tuple:
        """(min t, max t, max g_1, ..., max g_{r-1}); cached, exact or an over-estimate."""
        if self._bnd is None:
            if not self.terms:
                self._bnd = (0, 0) + (0,) * self.ring.nvars
            elif self.ring.fast and len(self.terms) > 64:
                self._bnd = _array_bounds(self._arrays()[0], self.ring.layout)
            else:
                t_of = self.ring.layout.t_of
                ts = [t_of(k) for k in self.terms]
                self._bnd = (min(ts), max(ts)) + self.g_degrees()
        return self._bnd

    # construction helpers -------------------------------------------------

    def _new(self, terms: dict[int, int]) -> RingElem:
        return RingElem(self.ring, terms)

    def _coerce(self, other) -> RingElem:
        if isinstance(other, RingElem):
            if other.ring is not self.ring and (other.ring.q, other.ring.r) != (self.ring.q, self.ring.r):
                raise ValueError(f"mismatched rings {self.ring} and {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def scalar(self, c: int) -> RingElem:
        """The F_q element with code c as a constant of this ring."""
        return self.ring.constant(c)

    # predicates -------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {0: 1}

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.q, self.ring.r, frozenset(self.terms.items())))
        return self._hash

    # arithmetic -------------------------------------------------------------

    def __add__(self, other) -> RingElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        F = self.ring.field
        a, b = (self.terms, other.terms) if len(self.terms) >= len(other.terms) else (other.terms, self.terms)
        d = dict(a)
        if F.is_prime:
            p = F.p
            for k, c in b.items():
                v = (d.get(k, 0) + c) % p
                if v:
                    d[k] = v
                else:
                    d.pop(k, None)
        else:
            add = F._add
            for k, c in b.items():
                v = add[d.get(k, 0)][c]
                if v:
                    d[k] = v
                else:
                    d.pop(k, None)
        return self._new(d)

    __radd__ = __add__

    def __neg__(self) -> RingElem:
        F = self.ring.field
        if F.p == 2:
            return self
        neg = F._neg
        return self._new({k: neg[c] for k, c in self.terms.items()})

    def __sub__(self, other) -> RingElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RingElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c: int) -> RingElem:
        """Multiply by the F_q element with code c."""
        if c == 0:
            return self.ring.zero()
        if c == 1:
            return self
        row = self.ring.field._mul[c]
        return self._new({k: row[v] for k, v in self.terms.items()})

    def __mul__(self, other) -> RingElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero()
        if len(a) < len(b):
            a, b = b, a
        F = self.ring.field
        if len(b) == 1:
            ((kb, cb),) = b.items()
            if kb == 0 and cb == 1:
                return self._new(a) if a is self.terms else other
            row = F._mul[cb]
            bnd = _mul_bounds(self, other)
            return RingElem(self.ring, {k + kb: row[c] for k, c in a.items()}, bnd)
        bnd = _mul_bounds(self, other)
        npairs = len(a) * len(b)
        if npairs >= FASTMUL_THRESHOLD and self.ring.fast:
            box = bnd[1] - bnd[0] + 1
            for e in bnd[2:]:
                box *= e + 1
            x, y = (self, other) if a is self.terms else (other, self)
            arr = _fastmul.sparse_mul(x._arrays(), y._arrays(), F, min(npairs, box))
            return RingElem(self.ring, dict(zip(arr[0].tolist(), arr[1].tolist())), bnd, arr)
        d: dict[int, int] = {}
        get = d.get
        if F.is_prime:
            for kb, cb in b.items():
                for ka, ca in a.items():
                    k = ka + kb
                    d[k] = get(k, 0) + ca * cb
            p = F.p
            out = {}
            for k, c in d.items():
                c %= p
                if c:
                    out[k] = c
        else:
            add, mul = F._add, F._mul
            for kb, cb in b.items():
                row = mul[cb]
                for ka, ca in a.items():
                    k = ka + kb
                    d[k] = add[get(k, 0)][row[ca]]
            out = {k: c for k, c in d.items() if c}
        return RingElem(self.ring, out, bnd)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> RingElem:
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_unit(self) -> bool:
        """Units of R are exactly c * T^k with c != 0."""
        if len(self.terms) != 1:
            return False
        ((k, _),) = self.terms.items()
        return k == self.ring.layout.t_of(k)

    def inverse(self) -> RingElem:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit (units are c*T^k)")
        ((k, c),) = self.terms.items()
        return RingElem(self.ring, {-k: self.ring.field.inv(c)}, (-k, -k) + (0,) * self.ring.nvars)

    def frob(self, k: int = 1) -> RingElem:
        """The q^k-th power.  Coefficients lie in F_q, so only exponents scale."""
        if k < 0:
            raise ValueError("Frobenius exponent must be nonnegative")
        if k == 0 or not self.terms:
            return self
        m = self.ring.q ** k
        bnd = tuple(b * m for b in self._bounds())
        _check_bounds(bnd, self.ring.layout)
        return RingElem(self.ring, {key * m: c for key, c in self.terms.items()}, bnd)

    # degrees ------------------------------------------------------------------

    def deg_T(self):
        """Largest T-exponent, or -inf for zero."""
        if not self.terms:
            return NEG_INF
        return max(map(self.ring.layout.t_of, self.terms))

    def min_T(self):
        if not self.terms:
            return float("inf")
        return min(map(self.ring.layout.t_of, self.terms))

    def has_negative_T(self) -> bool:
        return self.min_T() < 0

    def g_degrees(self) -> tuple[int, ...]:
        """Per-variable maximal g-exponents."""
        n = self.ring.nvars
        unpack = self.ring.layout.unpack
        best = [0] * n
        for k in self.terms:
            _, gs = unpack(k)
            for i, e in enumerate(gs):
                if e > best[i]:
                    best[i] = e
        return tuple(best)

    def iter_terms(self):
        """Yield (coefficient, t, g-exponents) triples in canonical order."""
        unpack = self.ring.layout.unpack
        items = [(c,) + unpack(k) for k, c in self.terms.items()]
        items.sort(key=lambda x: (-sum(x[2]), tuple(-e for e in x[2]), -x[1]))
        return iter(items)

    def coefficient(self, t: int, gexps: Sequence[int]) -> int:
        return self.terms.get(self.ring.layout.pack(t, gexps), 0)

    def coefficient_in_T(self, t: int) -> RingElem:
        """The g-polynomial multiplying T^t."""
        return self._new({k - t: c for k, c in self.terms.items() if self.ring.layout.t_of(k) == t})

    # evaluation ---------------------------------------------------------------

    def specialize(self, T=None, g: Sequence | None = None, T_inv=None):
        """Ring homomorphism image with T -> T and g_i -> g[i-1].

        Images must be elements of a common target type implementing +, *,
        ``scalar(c)`` (embedding of F_q codes) and, if negative T-exponents
        occur, either ``T_inv`` must be given or ``T.inverse()`` must exist.
        """
        n = self.ring.nvars
        g = list(g) if g is not None else []
        if len(g) != n:
            raise ValueError(f"need images for all {n} g-variables")
        if T is None:
            raise ValueError("an image for T is required")
        cacheT: dict[int, object] = {}
        cacheG: list[dict[int, object]] = [dict() for _ in range(n)]

        def tpow(t):
            if t not in cacheT:
                if t >= 0:
                    cacheT[t] = T ** t
                else:
                    inv = T_inv
                    if inv is None:
                        try:
                            inv = T.inverse()
                        except (ZeroDivisionError, AttributeError) as exc:
                            raise ZeroDivisionError("negative T-power with non-invertible image of T") from exc
                    cacheT[t] = inv ** (-t)
            return cacheT[t]

        def gpow(i, e):
            c = cacheG[i]
            if e not in c:
                c[e] = g[i] ** e
            return c[e]

        result = T.scalar(0)
        for key, c in self.terms.items():
            t, gs = self.ring.layout.unpack(key)
            term = T.scalar(c) * tpow(t)
            for i, e in enumerate(gs):
                if e:
                    term = term * gpow(i, e)
            result = result + term
        return result

    # serialization -----------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        F = self.ring.field
        parts = []
        for c, t, gs in self.iter_terms():
            factors = []
            if t:
                factors.append("T" if t == 1 else f"T^{t}")
            for i, e in enumerate(gs, start=1):
                if e:
                    factors.append(f"g{i}" if e == 1 else f"g{i}^{e}")
            cs = F.format(c)
            if not F.is_prime:
                cs = f"({cs})"
            if c != 1 or not factors:
                factors.insert(0, cs)
            parts.append("*".join(factors))
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        F = self.ring.field
        return [{"c": c if F.is_prime else F.format(c), "t": t, "g": list(gs)}
                for c, t, gs in self.iter_terms()]

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"RingElem({self.to_text()!r})"


def _check_bounds(bnd: tuple, layout: Layout) -> None:
    tl = layout.t_limit
    if bnd[0] <= -tl or bnd[1] >= tl:
        raise OverflowError("T-exponent overflow in ring arithmetic")
    gl = layout.g_limit
    for e in bnd[2:]:
        if e >= gl:
            raise OverflowError("g-exponent overflow in ring arithmetic")


def _array_bounds(keys, layout: Layout) -> tuple:
    tl = layout.t_limit
    t = ((keys + tl) & (2 * tl - 1)) - tl
    rest = (keys - t) >> layout.t_bits
    mask = layout.g_limit - 1
    gs = []
    for _ in range(layout.nvars):
        gs.append(int((rest & mask).max()))
        rest = rest >> layout.g_bits
    return (int(t.min()), int(t.max())) + tuple(gs)


def sum_of_products(pairs: Sequence[tuple[RingElem, RingElem]], R: Ring) -> RingElem:
    """sum x*y over the pairs, accumulated in one pass without intermediate sums."""
    pairs = [(x, y) for x, y in pairs if x.terms and y.terms]
    if not pairs:
        return R.zero()
    if len(pairs) == 1:
        return pairs[0][0] * pairs[0][1]
    bs = [_mul_bounds(x, y) for x, y in pairs]
    bnd = (min(b[0] for b in bs), max(b[1] for b in bs)) + tuple(max(col) for col in zip(*(b[2:] for b in bs)))
    npairs = sum(len(x.terms) * len(y.terms) for x, y in pairs)
    F = R.field
    if npairs >= FASTMUL_THRESHOLD and R.fast:
        box = bnd[1] - bnd[0] + 1
        for e in bnd[2:]:
            box *= e + 1
        arr = _fastmul.sparse_dot([(x._arrays(), y._arrays()) for x, y in pairs], F, min(npairs, box))
        return RingElem(R, dict(zip(arr[0].tolist(), arr[1].tolist())), None, arr)
    d: dict[int, int] = {}
    get = d.get
    if F.is_prime:
        for x, y in pairs:
            a, b = x.terms, y.terms
            for kb, cb in b.items():
                for ka, ca in a.items():
                    k = ka + kb
                    d[k] = get(k, 0) + ca * cb
        p = F.p
        out = {}
        for k, c in d.items():
            c %= p
            if c:
                out[k] = c
        return RingElem(R, out)
    add, mul = F._add, F._mul
    for x, y in pairs:
        a, b = x.terms, y.terms
        for kb, cb in b.items():
            row = mul[cb]
            for ka, ca in a.items():
                k = ka + kb
                d[k] = add[get(k, 0)][row[ca]]
    return RingElem(R, {k: c for k, c in d.items() if c})


def _mul_bounds(a: RingElem, b: RingElem) -> tuple:
    # exact for products: R is an integral domain and degrees add
    ba, bb = a._bounds(), b._bounds()
    bnd = tuple(x + y for x, y in zip(ba, bb))
    _check_bounds(bnd, a.ring.layout)
    return bnd


_TERM_FACTOR = re.compile(r"^(T|g(\d+))(?:\^(-?\d+))?$")


def _split_top(s: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def parse_elem(R: Ring, text: str) -> RingElem:
    """Parse the text form produced by ``RingElem.to_text`` (and looser variants).

    Terms are separated by '+', factors by '*'.  A factor is a coefficient
    (int, or a parenthesized polynomial in z for non-prime q), ``T^m`` or
    ``g<i>^e``.  A leading '-' negates a term.
    """
    F = R.field
    s = text.replace(" ", "")
    if s in ("", "0"):
        return R.zero()
    s = re.sub(r"(?<=[^\^\(+*])-", "+-", s)
    terms = []
    for term in _split_top(s, "+"):
        if not term:
            raise ValueError(f"malformed element {text!r}")
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        c, t, gs = 1, 0, [0] * R.nvars
        for fac in _split_top(term, "*"):
            if fac.startswith("(") and fac.endswith(")"):
                c = F.mul(c, F.parse(fac[1:-1]))
                continue
            if fac.isdigit():
                c = F.mul(c, F.from_int(int(fac)))
                continue
            m = _TERM_FACTOR.match(fac)
            if not m:
                raise ValueError(f"cannot parse factor {fac!r} in {text!r}")
            e = int(m.group(3)) if m.group(3) is not None else 1
            if m.group(1) == "T":
                t += e
            else:
                i = int(m.group(2))
                if not 1 <= i <= R.nvars:
                    raise ValueError(f"variable g{i} not in {R}")
                if e < 0:
                    raise ValueError("g-exponents must be nonnegative")
                gs[i - 1] += e
        if sign < 0:
            c = F.neg(c)
        terms.append((c, t, gs))
    return R.from_terms(terms)
