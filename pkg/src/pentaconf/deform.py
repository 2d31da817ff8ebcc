"""Polygons over truncated power series in a deformation parameter t.

A curve A(t) through a polygon A is stored by its base vertices as
vectors of ``Series``.  Every join and meet is followed by removing the
common power of t and the integer content, so the constant term of each
vector is the limit object at t = 0.  When some vector vanishes to the
known precision a ``PrecisionError`` is raised and the caller recomputes
with more terms.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polygon import HALF, TwistedPolygon, _twice, base_indices, other
from .projective import (
    IDENTITY,
    ProjLine,
    ProjPoint,
    RandomSource,
    mat_adj,
    mat_mul,
    mat_transpose,
    normalize,
)
from .scalar import RationalFunction, Series

Vec = tuple  # three Series


class CurveNotGeneric(ArithmeticError):
    """The deformation hit a vanishing object at every precision tried."""


def _svec(c, prec: int) -> Vec:
    return tuple(Series(list(x) if isinstance(x, (list, tuple)) else [x], prec) for x in c)


def s_cross(a: Vec, b: Vec) -> Vec:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def s_wedge(a: Vec, b: Vec) -> Vec:
    """Join of two points or meet of two lines, renormalized."""
    return normalize(s_cross(a, b))


def s_apply(M, v: Vec) -> Vec:
    return tuple(M[i][0] * v[0] + M[i][1] * v[1] + M[i][2] * v[2] for i in range(3))


def leading(v: Vec) -> tuple:
    """Constant terms of a normalized vector."""
    return tuple(s.c[0] if s.c else 0 for s in v)


def limit_point(v: Vec) -> ProjPoint:
    return ProjPoint(leading(v))


def limit_line(v: Vec) -> ProjLine:
    return ProjLine(leading(v))


def tangent(v: Vec) -> tuple:
    """Leading coefficients of v(0) x v(t): the decoration direction."""
    c0 = leading(v)
    w =(c0[1] * v[2] - c0[2] * v[1], c0[2] * v[0] - c0[0] * v[2], c0[0] * v[1] - c0[1] * v[0])
    return leading(normalize(w))


class SeriesPolygon:
    """Twisted polygon with Series coordinates; sides optional."""

    def __init__(self, vertices: Sequence[Vec], monodromy, indexing: str,
                 sides: Sequence[Vec] | None = None):
        self.n = len(vertices)
        self.base_vertices = tuple(vertices)
        self.base_sides = None if sides is None else tuple(sides)
        self.monodromy = tuple(tuple(r) for r in monodromy)
        self.indexing = indexing
        self._pv = {0: IDENTITY}
        self._pl = {0: IDENTITY}
        self._cache: dict = {}

    @property
    def offset(self):
        return 1 if self.indexing == HALF else 0

    def _mat(self, q: int, lines: bool):
        table = self._pl if lines else self._pv
        if q not in table:
            M = self.monodromy if q > 0 else mat_adj(self.monodromy)
            out = IDENTITY
            for _ in range(abs(q)):
                out = mat_mul(M, out)
            table[q] = mat_transpose(mat_adj(out)) if lines else out
        return table[q]

    def _get(self, i, offset, base, lines):
        t = _twice(i)
        if (t - offset) % 2:
            raise ValueError(f"index {i} does not match the indexing scheme")
        q, r = divmod((t - offset) // 2, self.n)
        v = base[r]
        return s_apply(self._mat(q, lines), v) if q else v

    def vertex(self, i) -> Vec:
        key = ("v", _twice(i))
        if key not in self._cache:
            self._cache[key] = self._get(i, self.offset, self.base_vertices, False)
        return self._cache[key]

    def side(self, j) -> Vec:
        key = ("s", _twice(j))
        if key not in self._cache:
            if self.base_sides is not None:
                self._cache[key] = self._get(j, 1 - self.offset, self.base_sides, True)
            else:
                h = Fraction(1, 2)
                self._cache[key] = s_wedge(self.vertex(j - h), self.vertex(j + h))
        return self._cache[key]

    @property
    def indices(self):
        return base_indices(self.n, self.indexing)

    @property
    def side_indices(self):
        return base_indices(self.n, other(self.indexing))

    def limit(self) -> TwistedPolygon:
        verts = [limit_point(self.vertex(i)) for i in self.indices]
        sides = [limit_line(self.side(j)) for j in self.side_indices]
        return TwistedPolygon(verts, self.monodromy, self.indexing, True, sides)


def series_pentagram(A: SeriesPolygon) -> SeriesPolygon:
    h = Fraction(1, 2)
    diag = {}
    for j in A.indices:
        diag[_twice(j)] = s_wedge(A.vertex(j - 1), A.vertex(j + 1))
    sides = [diag[_twice(j)] for j in A.indices]
    B = SeriesPolygon([(0, 0, 0)] * A.n, A.monodromy, other(A.indexing), sides)
    verts = [s_wedge(B.side(i - h), B.side(i + h)) for i in B.indices]
    return SeriesPolygon(verts, A.monodromy, B.indexing, sides)


def linear_curve(A: TwistedPolygon, V: Sequence[tuple], prec: int) -> SeriesPolygon:
    """A(t) = A + tV on the base vertices, transported by the monodromy."""
    verts = []
    for P, v in zip(A.base_vertices, V):
        c = _int_coords(P.coords)
        verts.append(normalize(tuple(Series([a, b], prec) for a, b in zip(c, v))))
    return SeriesPolygon(verts, _int_matrix(A.monodromy), A.indexing)


def curve_from_rational(A: TwistedPolygon, prec: int) -> SeriesPolygon:
    """Convert a polygon with RationalFunction coordinates into series."""
    verts = []
    for P in A.base_vertices:
        c = [x if isinstance(x, RationalFunction) else RationalFunction.const(x) for x in P.coords]
        c = normalize(tuple(c))  # polynomial, jointly primitive (constants may come back as ints)
        c = [x if isinstance(x, RationalFunction) else RationalFunction.const(x) for x in c]
        verts.append(normalize(tuple(Series(list(x.num), prec) for x in c)))
    return SeriesPolygon(verts, _int_matrix(A.monodromy), A.indexing)


def _int_coords(c):
    c = normalize(tuple(Fraction(x) for x in c))
    return tuple(int(x) for x in c)


def _int_matrix(M):
    from math import lcm
    den = 1
    for row in M:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    return tuple(tuple(int(Fraction(x) * den) for x in row) for row in M)


def random_direction(A: TwistedPolygon, src: RandomSource, bound: int = 50) -> list[tuple]:
    return [tuple(src.randint(-bound, bound) for _ in range(3)) for _ in range(A.n)]
