"""Dense univariate polynomials over an arbitrary commutative coefficient ring.

Coefficients are any objects with +, -, * and truthiness (nonzero test);
``coeffs[i]`` multiplies x^i.  A zero element of the coefficient ring is kept
alongside so the zero polynomial still knows where it lives.
"""

from __future__ import annotations

from typing import Sequence


class UPoly:
    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs: Sequence, zero):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs
        self.zero = zero

    @classmethod
    def from_dict(cls, d: dict[int, object], zero) -> UPoly:
        n = max(d) + 1 if d else 0
        cs = [zero] * n
        for i, c in d.items():
            cs[i] = cs[i] + c
        return cls(cs, zero)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.zero

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.zero

    def is_monic(self) -> bool:
        lead = self.leading()
        return bool(self.coeffs) and lead == lead * 0 + 1

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __add__(self, other: UPoly) -> UPoly:
        n = max(len(self), len(other))
        return UPoly([self[i] + other[i] for i in range(n)], self.zero)

    def __sub__(self, other: UPoly) -> UPoly:
        n = max(len(self), len(other))
        return UPoly([self[i] - other[i] for i in range(n)], self.zero)

    def __neg__(self) -> UPoly:
        return UPoly([-c for c in self.coeffs], self.zero)

    def __mul__(self, other) -> UPoly:
        if not isinstance(other, UPoly):
            return UPoly([c * other for c in self.coeffs], self.zero)
        if not self.coeffs or not other.coeffs:
            return UPoly([], self.zero)
        out = [self.zero] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return UPoly(out, self.zero)

    def __call__(self, x):
        """Horner evaluation; x may be a coefficient or another UPoly (composition)."""
        if isinstance(x, UPoly):
            acc = UPoly([], self.zero)
            for c in reversed(self.coeffs):
                acc = acc * x + UPoly([c], self.zero)
            return acc
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return self.zero if acc is None else acc

    def map(self, fn) -> UPoly:
        return UPoly([fn(c) for c in self.coeffs], fn(self.zero))

    def reciprocal(self, n: int | None = None) -> UPoly:
        """x^n * self(1/x) with n = degree by default."""
        n = self.degree if n is None else n
        if n < self.degree:
            raise ValueError("reciprocal degree below polynomial degree")
        cs = [self.zero] * (n + 1)
        for i, c in enumerate(self.coeffs):
            cs[n - i] = c
        return UPoly(cs, self.zero)

    def __repr__(self) -> str:
        terms = [f"({c})*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "UPoly(" + (" + ".join(terms) if terms else "0") + ")"
