"""Exact projective plane over Q, Q(t) or truncated Q[[t]].

Points and lines are homogeneous triples kept in a canonical scale, so
equality and hashing are structural.  Every formula here is written with
coordinate determinants, which makes it chart free and self dual: the
same function applied to lines computes the dual construction.
"""
from __future__ import annotations

import hashlib
import random
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from .scalar import PrecisionError, RationalFunction, Series, _pdivmod, _pgcd, _pmul, _primitive


class DegenerateError(ValueError):
    """A join or meet of equal objects, or another incidence failure."""


class IndeterminateError(DegenerateError):
    pass


# ---------------------------------------------------------------------------
# normalization of coordinate triples

def _norm_ints(c):
    c = [Fraction(v) for v in c]
    den = reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in c), 1)
    ints = [int(v * den) for v in c]
    g = reduce(gcd, ints, 0)
    if g == 0:
        raise DegenerateError("zero vector")
    ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-w for w in ints]
            break
    return tuple(ints)


def _norm_fast(c):
    a, b, d = c
    g = gcd(gcd(a, b), d)
    if g == 0:
        raise DegenerateError("zero vector")
    if a < 0 or (a == 0 and (b < 0 or (b == 0 and d < 0))):
        g = -g
    if g == 1:
        return (a, b, d)
    return (a // g, b // g, d // g)


def _norm_rf(c):
    c = [v if isinstance(v, RationalFunction) else RationalFunction.const(v) for v in c]
    if not any(c):
        raise DegenerateError("zero vector")
    den = (1,)
    for v in c:
        den = _pdivmod(_pmul(den, v.den), _pgcd(den, v.den))[0]
    polys = [_pdivmod(_pmul(v.num, den), v.den)[0] for v in c]
    g = reduce(lambda a, b: _pgcd(a, b) if b else a, polys, ())
    polys = [_pdivmod(p, g)[0] if p else () for p in polys]
    flat = [x for p in polys for x in p]
    ints, _ = _primitive(flat)
    out, pos = [], 0
    for p in polys:
        out.append(ints[pos:pos + len(p)])
        pos += len(p)
    for p in out:
        if p:
            if p[-1] < 0:
                out = [tuple(-x for x in q) for q in out]
            break
    return tuple(RationalFunction(p) for p in out)


def _norm_series(c):
    v = min(s.order() for s in c)
    p = min(s.prec for s in c)
    if v >= p:
        raise PrecisionError("vector vanishes to known precision")
    c = [s.shift_down(v) for s in c]
    g = reduce(gcd, (x for s in c for x in s.c), 0)
    lead = next(s.c[0] for s in c if s.c and s.c[0])
    if lead < 0:
        g = -g
    return tuple(Series([x // g for x in s.c], s.prec) for s in c)


def normalize(c):
    x = c[0]
    if isinstance(x, Series):
        return _norm_series(c)
    if type(x) is int and type(c[1]) is int and type(c[2]) is int:
        return _norm_fast(c)
    if any(isinstance(v, RationalFunction) for v in c):
        if all(isinstance(v, (int, Fraction)) or v.is_constant() for v in c):
            return _norm_ints([v if not isinstance(v, RationalFunction)
                               else Fraction(v.num[0] if v.num else 0, v.den[0]) for v in c])
        return _norm_rf(c)
    return _norm_ints(c)


def _is_zero(x) -> bool:
    if isinstance(x, Series):
        if x.c and any(x.c):
            return False
        raise PrecisionError("cannot decide vanishing of a truncated series")
    return x == 0


# ---------------------------------------------------------------------------
# points and lines

class _Proj:
    __slots__ = ("coords",)
    kind = "?"

    def __init__(self, coords: Sequence, _normalized: bool = False):
        if len(coords) != 3:
            raise ValueError("homogeneous triple expected")
        self.coords = tuple(coords) if _normalized else normalize(tuple(coords))

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((self.kind, self.coords))

    def __repr__(self):
        from .scalar import format_scalar
        if isinstance(self.coords[0], Series):
            return f"{type(self).__name__}({self.coords})"
        return f"{type(self).__name__}({', '.join(format_scalar(v) for v in self.coords)})"

    def dual(self):
        raise NotImplementedError


class ProjPoint(_Proj):
    __slots__ = ()
    kind = "point"

    def dual(self) -> "ProjLine":
        return ProjLine(self.coords, _normalized=True)


class ProjLine(_Proj):
    __slots__ = ()
    kind = "line"

    def dual(self) -> ProjPoint:
        return ProjPoint(self.coords, _normalized=True)


def point(*c) -> ProjPoint:
    return ProjPoint(c if len(c) == 3 else tuple(c) + (1,))


def line(*c) -> ProjLine:
    return ProjLine(c)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def det3(a, b, c):
    a, b, c = (x.coords if isinstance(x, _Proj) else x for x in (a, b, c))
    return _dot(_cross(a, b), c)


def _other(P):
    return ProjLine if isinstance(P, ProjPoint) else ProjPoint


def _join_any(P, Q):
    c = _cross(P.coords, Q.coords)
    if all(_is_zero(v) for v in c):
        raise DegenerateError(f"degenerate {'join' if isinstance(P, ProjPoint) else 'meet'}")
    return _other(P)(c)


def join(P: ProjPoint, Q: ProjPoint) -> ProjLine:
    if not (isinstance(P, ProjPoint) and isinstance(Q, ProjPoint)):
        raise TypeError("join takes two points")
    return _join_any(P, Q)


def meet(l: ProjLine, m: ProjLine) -> ProjPoint:
    if not (isinstance(l, ProjLine) and isinstance(m, ProjLine)):
        raise TypeError("meet takes two lines")
    return _join_any(l, m)


def incident(P, l) -> bool:
    return _is_zero(_dot(P.coords, l.coords))


def collinear(*pts) -> bool:
    """True when all given points (or lines: concurrent) share one line."""
    pts = list(dict.fromkeys(pts))
    if len(pts) <= 2:
        return True
    L = _join_any(pts[0], pts[1])
    return all(incident(P, L) for P in pts[2:])


concurrent = collinear


def support(*objs):
    """The common line of collinear points (or common point of concurrent lines)."""
    distinct = list(dict.fromkeys(objs))
    if len(distinct) < 2:
        raise DegenerateError("support needs two distinct elements")
    L = _join_any(distinct[0], distinct[1])
    for P in distinct[2:]:
        if not incident(P, L):
            raise DegenerateError("elements are not collinear")
    return L


def combine(P, Q, a, b):
    """a*P + b*Q in homogeneous coordinates."""
    return type(P)(tuple(a * x + b * y for x, y in zip(P.coords, Q.coords)))


# ---------------------------------------------------------------------------
# ratios

def bracket(P, Q, w) -> object:
    """Determinant [P Q w]; for P, Q on the line w this is a chart-free signed distance."""
    return det3(P, Q, w)


def cross_ratio(P1, P2, P3, P4, line_=None):
    """[P1,P2,P3,P4] = (P1-P2)(P3-P4)/((P2-P3)(P4-P1)) on an affine parametrization.

    Works equally for four concurrent lines.
    """
    pts = (P1, P2, P3, P4)
    if len(set(pts)) < 4:
        raise DegenerateError("repeated point in cross ratio")
    w = line_ if line_ is not None else support(*pts)
    num = bracket(P1, P2, w) * bracket(P3, P4, w)
    den = bracket(P2, P3, w) * bracket(P4, P1, w)
    return Fraction(num, den) if isinstance(num, int) else num / den


def chi(P1, P2, P3, P4, line_=None):
    return cross_ratio(P2, P1, P3, P4, line_)


def triple_ratio(P1, P2, P3, P4, P5, P6, supports=None):
    """Six-point ratio (P1P2/P2P3)(P3P4/P4P5)(P5P6/P6P1).

    ``supports`` optionally gives the three lines P1P2P3, P3P4P5, P5P6P1
    (needed when a triple has coincident points).  Dually, six lines with
    the three common points.
    """
    if supports is None:
        supports = (support(P1, P2, P3), support(P3, P4, P5), support(P5, P6, P1))
    w1, w2, w3 = supports
    for P, w in ((P1, w1), (P2, w1), (P3, w1), (P3, w2), (P4, w2), (P5, w2),
                 (P5, w3), (P6, w3), (P1, w3)):
        if not incident(P, w):
            raise DegenerateError("triple ratio incidence violated")
    num = bracket(P1, P2, w1) * bracket(P3, P4, w2) * bracket(P5, P6, w3)
    den = bracket(P2, P3, w1) * bracket(P4, P5, w2) * bracket(P6, P1, w3)
    if _is_zero(den):
        raise DegenerateError("triple ratio undefined (repeated consecutive points)")
    return Fraction(num, den) if isinstance(num, int) else num / den


def triple_conjugate(P1, P2, P3, P4, P5, line_=None):
    """The point P6 on the common line with [P1,...,P6] = -1."""
    if P1 == P5:
        if P2 == P4:
            raise IndeterminateError("indeterminate: P1 = P5 and P2 = P4")
        raise DegenerateError("no solution: P1 = P5")
    w = line_ if line_ is not None else support(P1, P2, P3, P4, P5)
    a = bracket(P1, P2, w) * bracket(P3, P4, w)
    b = bracket(P2, P3, w) * bracket(P4, P5, w)
    if _is_zero(a) or _is_zero(b):
        raise DegenerateError("triple conjugate with repeated consecutive points")
    # P6 = -P1 + K P5 with K = a/b, scaled by b
    return combine(P1, P5, -b, a)


def triple_conjugate_construction(A, B, C, D, E, src: "RandomSource", retries: int = 20):
    """Straightedge construction of the triple conjugate using random choices."""
    if A == E:
        return triple_conjugate(A, B, C, D, E)
    for _ in range(retries):
        try:
            P = src.random_point()
            Cp = src.random_point_on(join(C, P))
            Bp = meet(join(B, P), join(A, Cp))
            Dp = meet(join(D, P), join(Cp, E))
            return meet(join(Bp, Dp), join(A, E))
        except DegenerateError:
            continue
    raise DegenerateError("triple conjugate construction kept degenerating")


def _ptrans_solve(A, B, C, D, A2, B2, C2):
    w = support(A, B, C, D)
    w2 = support(A2, B2, C2)
    if D == A:
        return A2
    N = bracket(A, B, w) * bracket(C, D, w)
    Dn = bracket(B, C, w) * bracket(D, A, w)
    x = (Dn - N) * bracket(B2, C2, w2)
    y = Dn * bracket(C2, A2, w2)
    return combine(A2, B2, x, y)


def projective_transformation(A, B, C, D, A2, B2, C2):
    """Image of D under the projective map of lines sending A, B, C to A2, B2, C2."""
    if len({A, B, C}) < 3 or len({A2, B2, C2}) < 3:
        raise DegenerateError("repeated points in projective transformation")
    return _ptrans_solve(A, B, C, D, A2, B2, C2)


def _ptrans_construct_once(A, B, C, D, A2, B2, C2, src):
    l = src.random_line_through(A2)
    P = src.random_point_on(join(A, A2))
    B3 = meet(l, join(B, P))
    C3 = meet(l, join(C, P))
    Q = meet(join(B3, B2), join(C3, C2))
    D3 = meet(l, join(D, P))
    return meet(join(D3, Q), join(A2, B2))


def projective_transformation_construction(A, B, C, D, A2, B2, C2, src, retries: int = 20):
    """Two-projection straightedge construction.

    When A = A2 or the two lines coincide the construction passes through
    an auxiliary random line.
    """
    if len({A, B, C}) < 3 or len({A2, B2, C2}) < 3:
        raise DegenerateError("repeated points in projective transformation")
    for _ in range(retries):
        try:
            if A == A2 or support(A, B, C) == support(A2, B2, C2):
                m = src.random_line()
                P = src.random_point()
                mid = [meet(m, join(X, P)) for X in (A, B, C)]
                Dm = _ptrans_construct_once(A, B, C, D, *mid, src)
                return _ptrans_construct_once(*mid, Dm, A2, B2, C2, src)
            return _ptrans_construct_once(A, B, C, D, A2, B2, C2, src)
        except DegenerateError:
            continue
    raise DegenerateError("projective transformation construction kept degenerating")


def ceva_companion(A, B, C, D, E):
    """Point P on AE with [A,B,C,D,E,F] = [A,P,E,F] for all F on AE."""
    if A == D or B == E:
        raise DegenerateError("degenerate Ceva configuration")
    return meet(join(C, meet(join(A, D), join(B, E))), join(A, E))


def projective_transformation_b(A, B, C, D, E, F, A2, B2, C2, D2, E2, src=None):
    """F2 on E2A2 with [A2,...,F2] = [A,...,F]."""
    P = ceva_companion(A, B, C, D, E)
    P2 = ceva_companion(A2, B2, C2, D2, E2)
    if src is None:
        return projective_transformation(A, P, E, F, A2, P2, E2)
    return projective_transformation_construction(A, P, E, F, A2, P2, E2, src)


# ---------------------------------------------------------------------------
# projective maps (3x3 integer or rational matrices)

def mat_mul(M, N):
    return tuple(tuple(sum(M[i][k] * N[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def mat_det(M):
    return det3(M[0], M[1], M[2])


def mat_adj(M):
    """Adjugate; proportional to the inverse."""
    c = [_cross(M[(i + 1) % 3], M[(i + 2) % 3]) for i in range(3)]
    # rows of M cross products give columns of the adjugate
    return tuple(tuple(c[j][i] for j in range(3)) for i in range(3))


def mat_transpose(M):
    return tuple(tuple(M[j][i] for j in range(3)) for i in range(3))


IDENTITY = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def apply(M, X):
    """Apply a projective map to a point, or transport a line (by the inverse transpose)."""
    if isinstance(X, ProjPoint):
        return ProjPoint(tuple(_dot(row, X.coords) for row in M))
    A = mat_transpose(mat_adj(M))
    return ProjLine(tuple(_dot(row, X.coords) for row in A))


# ---------------------------------------------------------------------------
# seeded generic choices

class RandomSource:
    """Deterministic supply of 'generic' points with small integer coordinates."""

    def __init__(self, seed: int = 0, bound: int = 1000, stream: str = ""):
        self.seed = seed
        self.bound = bound
        self.stream = stream
        h = hashlib.sha256(f"{seed}:{stream}".encode()).digest()
        self._rng = random.Random(int.from_bytes(h[:8], "big"))
        self.counter = 0

    def child(self, stream) -> "RandomSource":
        return RandomSource(self.seed, self.bound, f"{self.stream}/{stream}")

    def randint(self, lo: int, hi: int) -> int:
        self.counter += 1
        return self._rng.randint(lo, hi)

    def choice(self, seq):
        self.counter += 1
        return self._rng.choice(seq)

    def random_vector(self):
        b = self.bound
        while True:
            v = tuple(self.randint(-b, b) for _ in range(3))
            if any(v):
                return v

    def random_point(self) -> ProjPoint:
        return ProjPoint(self.random_vector())

    def random_line(self) -> ProjLine:
        while True:
            P, Q = self.random_point(), self.random_point()
            if P != Q:
                return join(P, Q)

    def random_point_on(self, l: ProjLine) -> ProjPoint:
        while True:
            m = self.random_line()
            if m != l:
                return meet(m, l)

    def random_line_through(self, P: ProjPoint) -> ProjLine:
        while True:
            Q = self.random_point()
            if Q != P:
                return join(P, Q)

    def random_matrix(self, bound: int = 5):
        while True:
            M = tuple(tuple(self.randint(-bound, bound) for _ in range(3)) for _ in range(3))
            if mat_det(M) != 0:
                return M
