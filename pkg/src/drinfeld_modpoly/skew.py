"""Twisted polynomials sum c_i tau^i with tau * c = c^q * tau.

The coefficient ring only has to provide +, -, *, truthiness and
``frob(k)`` (the q^k-th power).  Right division additionally needs
``inverse()`` on the leading coefficient of the divisor.  Interpreting tau as
X -> X^q turns a twisted polynomial into the additive polynomial
sum c_i X^{q^i}, and multiplication into composition.
"""

from __future__ import annotations

from typing import Sequence

from .upoly import UPoly


class SkewPoly:
    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs: Sequence, zero=None):
        cs = list(coeffs)
        if zero is None:
            if not cs:
                raise ValueError("zero element required for an empty SkewPoly")
            zero = cs[0] * 0
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs
        self.zero = zero

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.zero

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return len(self) == len(other) and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __add__(self, other: SkewPoly) -> SkewPoly:
        n = max(len(self), len(other))
        return SkewPoly([self[i] + other[i] for i in range(n)], self.zero)

    def __sub__(self, other: SkewPoly) -> SkewPoly:
        n = max(len(self), len(other))
        return SkewPoly([self[i] - other[i] for i in range(n)], self.zero)

    def __neg__(self) -> SkewPoly:
        return SkewPoly([-c for c in self.coeffs], self.zero)

    def __mul__(self, other: SkewPoly) -> SkewPoly:
        """(f*g)_k = sum_{i+j=k} f_i * g_j^{q^i}, i.e. f composed after g."""
        if not isinstance(other, SkewPoly):
            return SkewPoly([c * other for c in self.coeffs], self.zero)
        if not self.coeffs or not other.coeffs:
            return SkewPoly([], self.zero)
        out = [self.zero] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b.frob(i)
        return SkewPoly(out, self.zero)

    def right_divmod(self, g: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
        """Return (quo, rem) with self = quo * g + rem and deg rem < deg g."""
        if not g:
            raise ZeroDivisionError("right division by the zero twisted polynomial")
        dg = g.degree
        lead_inv = g.coeffs[-1].inverse()
        rem = list(self.coeffs)
        quo = [self.zero] * max(len(rem) - dg, 0)
        for k in range(len(rem) - 1, dg - 1, -1):
            c = rem[k]
            if not c:
                continue
            # c tau^k = (c * lead^{-q^s}) tau^s * (lead tau^dg + ...)
            s = k - dg
            t = c * lead_inv.frob(s)
            quo[s] = t
            for j, b in enumerate(g.coeffs):
                if b:
                    rem[s + j] = rem[s + j] - t * b.frob(s)
        return SkewPoly(quo, self.zero), SkewPoly(rem[:dg], self.zero)

    def to_additive(self, q: int) -> UPoly:
        """The ordinary polynomial sum c_i X^{q^i}."""
        return UPoly.from_dict({q ** i: c for i, c in enumerate(self.coeffs) if c}, self.zero)

    def __call__(self, x):
        """Evaluate the additive polynomial at x (needs x.frob)."""
        acc = self.zero
        for i, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * x.frob(i)
        return acc

    def __repr__(self) -> str:
        terms = [f"({c})*tau^{i}" for i, c in enumerate(self.coeffs) if c]
        return "SkewPoly(" + (" + ".join(terms) if terms else "0") + ")"
