"""Desingularized iterates: the deformation-limit oracle, the explicit
straightedge constructions for X_i and X_{i-1,i+1}, and the general
algorithm built on decorated polygons."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .decorated import (
    DecoratedPolygon,
    T_tilde,
    T_tilde2,
    decorate_randomly,
    decorations_from_series,
)
from .deform import CurveNotGeneric, SeriesPolygon, linear_curve, random_direction, series_pentagram
from .polygon import INTEGER, TwistedPolygon, _twice, other, in_X
from .projective import DegenerateError, ProjPoint, RandomSource, apply, join, meet, triple_conjugate
from .scalar import PrecisionError

H = Fraction(1, 2)


# ---------------------------------------------------------------------------
# oracle

class DeformationOracle:
    """T^k(A(t)) for A(t) = A + tV, evaluated at t = 0 after renormalization."""

    def __init__(self, base: TwistedPolygon, direction=None, src: RandomSource | None = None,
                 prec: int = 8, max_prec: int = 512):
        self.base = base
        if direction is None:
            direction = random_direction(base, src or RandomSource(0, stream="oracle"))
        self.direction = [tuple(v) for v in direction]
        self.prec = prec
        self.max_prec = max_prec
        self._cache: dict[int, SeriesPolygon] = {}

    def _curve(self, k: int, prec: int) -> SeriesPolygon:
        C = linear_curve(self.base, self.direction, prec)
        for _ in range(k):
            C = series_pentagram(C)
        return C

    def series(self, k: int) -> SeriesPolygon:
        prec = self.prec
        while True:
            try:
                C = self._curve(k, prec)
                C.limit()  # forces every vertex and side
                self.prec = prec
                return C
            except PrecisionError:
                prec *= 2
                if prec > self.max_prec:
                    raise CurveNotGeneric("curve not generic: limits vanish at every precision tried")

    def iterate(self, k: int) -> TwistedPolygon:
        return self.series(k).limit()

    def decorated(self, k: int) -> DecoratedPolygon:
        prec = self.prec
        while True:
            try:
                return decorations_from_series(self._curve(k, prec))
            except PrecisionError:
                prec *= 2
                if prec > self.max_prec:
                    raise CurveNotGeneric("curve not generic: decoration undefined")


def oracle_iterate(o: DeformationOracle, k: int, decorations: bool = False):
    return o.decorated(k) if decorations else o.iterate(k)


# ---------------------------------------------------------------------------
# explicit constructions

def _shifted(A: TwistedPolygon, s: int) -> TwistedPolygon:
    """Relabel so that new vertex i is old vertex i + s."""
    verts = [A.vertex(i + s) for i in A.indices]
    return TwistedPolygon(verts, A.monodromy, A.indexing, A.degenerate)


def _unshift(P: TwistedPolygon, s: int) -> TwistedPolygon:
    verts = [P.vertex(i - s) for i in P.indices]
    sides = [P.side(j - s) for j in P.side_indices]
    return TwistedPolygon(verts, P.monodromy, P.indexing, True, sides)


class _Table:
    """Vertices or sides by index, extended by the monodromy."""

    def __init__(self, n, mono, offset, values: dict, lines: bool):
        self.n, self.offset, self.values, self.lines = n, offset, values, lines
        self.P = TwistedPolygon([ProjPoint((0, 0, 1))] * n, mono, INTEGER, True)

    def __getitem__(self, i):
        t = _twice(i)
        q, r = divmod((t - self.offset) // 2, self.n)
        key = Fraction(2 * r + self.offset, 2)
        x = self.values[key]
        if x is None:
            raise DegenerateError(f"object {i} is not defined")
        if q:
            x = apply(self.P.phi_power(q), x)
        return x


def _table(A, values: dict, offset: int, lines: bool) -> _Table:
    return _Table(A.n, A.monodromy, offset, {Fraction(k): v for k, v in values.items()}, lines)


def _check_X(A, S):
    if A.indexing != INTEGER:
        raise ValueError("integer-indexed polygon expected")
    for i in S:
        if not in_X(A, i):
            raise DegenerateError(f"polygon is not in X_{i}")


def t3_on_Xi(A: TwistedPolygon, i: int = 3) -> TwistedPolygon:
    """T^3 on X_i by the straightedge construction with two triple conjugates."""
    _check_X(A, [i])
    A = _shifted(A, i - 3)
    n = A.n
    idx = list(range(n))
    half = [Fraction(2 * r + 1, 2) for r in range(n)]
    a = A.vertex
    b = _table(A, {k: join(a(k - 1), a(k + 1)) for k in idx}, 0, True)
    B = _table(A, {j: meet(b[j - H], b[j + H]) for j in half}, 1, False)
    c = _table(A, {j: join(B[j - 1], B[j + 1]) for j in half}, 1, True)
    Cv = {}
    for k in idx:
        if k == 3:
            Cv[k] = triple_conjugate(B[Fraction(3, 2)], B[Fraction(5, 2)], a(3), B[Fraction(9, 2)], B[Fraction(7, 2)])
        else:
            Cv[k] = meet(c[k - H], c[k + H])
    C = _table(A, Cv, 0, False)
    dv = {}
    for k in idx:
        if k == 3:
            dv[k] = triple_conjugate(c[Fraction(3, 2)], c[Fraction(7, 2)], b[3], c[Fraction(9, 2)], c[Fraction(5, 2)])
        else:
            dv[k] = join(C[k - 1], C[k + 1])
    d = _table(A, dv, 0, True)
    D = [meet(d[j - H], d[j + H]) for j in half]
    out = TwistedPolygon(D, A.monodromy, other(A.indexing), True, [d[k] for k in idx])
    return _unshift(out, i - 3)


def t4_on_X35(A: TwistedPolygon, i: int = 4) -> tuple[TwistedPolygon, dict]:
    """T^4 on X_{i-1} and X_{i+1}; also returns the intermediate special objects."""
    _check_X(A, [i - 1, i + 1])
    A = _shifted(A, i - 4)
    n = A.n
    idx = list(range(n))
    half = [Fraction(2 * r + 1, 2) for r in range(n)]
    a = A.vertex
    f = Fraction
    b = _table(A, {k: join(a(k - 1), a(k + 1)) for k in idx}, 0, True)
    B = _table(A, {j: meet(b[j - H], b[j + H]) for j in half}, 1, False)
    c = _table(A, {j: join(B[j - 1], B[j + 1]) for j in half}, 1, True)
    Cv = {}
    for k in idx:
        if k == 3:
            Cv[k] = triple_conjugate(B[f(3, 2)], B[f(5, 2)], a(3), B[f(9, 2)], B[f(7, 2)])
        elif k == 5:
            Cv[k] = triple_conjugate(B[f(7, 2)], B[f(9, 2)], a(5), B[f(13, 2)], B[f(11, 2)])
        elif k == 4:
            Cv[k] = None  # not defined; never used below
        else:
            Cv[k] = meet(c[k - H], c[k + H])
    l = b[2]
    C = _table(A, Cv, 0, False)

    dv = {}
    for k in idx:
        dv[k] = l if k in (3, 4, 5) else join(C[k - 1], C[k + 1])
    d = _table(A, dv, 0, True)
    Dv = {}
    for j in half:
        if j not in (f(7, 2), f(9, 2)):
            Dv[j] = meet(d[j - H], d[j + H])
    Dv[f(9, 2)] = Dv[f(5, 2)]
    Dv[f(7, 2)] = Dv[f(11, 2)]
    D = _table(A, Dv, 1, False)
    ev = {}
    for j in half:
        if j not in (f(7, 2), f(9, 2)):
            ev[j] = join(D[j - 1], D[j + 1])
    C3, C5 = Cv[3], Cv[5]
    ev[f(7, 2)] = join(meet(join(meet(b[5], d[2]), C5), c[f(13, 2)]), C3)
    ev[f(9, 2)] = join(meet(join(meet(b[3], d[6]), C3), c[f(3, 2)]), C5)
    e = _table(A, ev, 1, True)
    E = [meet(e[k - H], e[k + H]) for k in idx]
    out = TwistedPolygon(E, A.monodromy, A.indexing, True, [e[j] for j in half])
    extras = {"C3": C3, "C5": C5, "e3.5": ev[f(7, 2)], "e4.5": ev[f(9, 2)], "l": l}
    return _unshift(out, i - 4), extras


# ---------------------------------------------------------------------------
# the general algorithm

@dataclass
class MainTrace:
    iterates: list = field(default_factory=list)
    random_slots: list = field(default_factory=list)   # (step, kind, index)
    branches: list = field(default_factory=list)       # (step, kind, index, branch)


def main(A: TwistedPolygon, m: int, seed: int = 0, trace: MainTrace | None = None) -> TwistedPolygon:
    """T^m(A) through decorated iterates, tolerating singular intermediate steps."""
    src = RandomSource(seed, stream="main")
    trace = trace if trace is not None else MainTrace()
    dA = decorate_randomly(A, src.child("decorate"))
    its = [dA]
    if m >= 1:
        its.append(T_tilde(dA))
    for k in range(2, m + 1):
        log: list = []
        its.append(T_tilde2(its[k - 2], its[k - 1], src.child(f"step{k}"), log))
        trace.random_slots.extend((k, kind, i) for kind, i in log)
        for key, branch in its[k].provenance.items():
            if key[0] in ("side-branch", "vertex-branch"):
                trace.branches.append((k, key[0], key[1], branch))
    trace.iterates = its
    return its[m].polygon
