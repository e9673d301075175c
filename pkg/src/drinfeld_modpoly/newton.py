"""Newton polygons for the valuation v = -deg_T on F_q[T^{+-1}, g].

Points are (i, v(c_i)) for the nonzero coefficients c_i of a univariate
polynomial; the polygon is their lower convex hull, and a segment of slope m
and horizontal length l accounts for l roots of valuation -m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .upoly import UPoly


def valuation(c) -> int:
    """v(c) = -deg_T(c) for nonzero c."""
    if not c:
        raise ValueError("valuation of zero is +infinity")
    return -c.deg_T()


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple[tuple[int, Fraction], ...]

    @property
    def slopes(self) -> list[Fraction]:
        return [Fraction(v1 - v0) / (i1 - i0) for (i0, v0), (i1, v1) in zip(self.vertices, self.vertices[1:])]

    @property
    def segments(self) -> list[tuple[tuple[int, Fraction], tuple[int, Fraction]]]:
        return list(zip(self.vertices, self.vertices[1:]))

    def is_single_segment(self) -> bool:
        return len(self.vertices) == 2

    def endpoints(self) -> tuple[tuple[int, Fraction], tuple[int, Fraction]]:
        return self.vertices[0], self.vertices[-1]


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Lower convex hull of points sorted by x, collinear interior points dropped."""
    pts = sorted(points)
    hull: list = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def newton_polygon(P: UPoly) -> NewtonPolygon:
    pts = [(i, Fraction(valuation(c))) for i, c in enumerate(P.coeffs) if c]
    if not pts:
        raise ValueError("the zero polynomial has no Newton polygon")
    return NewtonPolygon(tuple(lower_hull(pts)))


def root_valuations(np_: NewtonPolygon) -> list[tuple[Fraction, int]]:
    """(valuation, multiplicity) pairs, one per segment, in increasing-slope order."""
    return [(-Fraction(v1 - v0) / (i1 - i0), i1 - i0) for (i0, v0), (i1, v1) in np_.segments]
