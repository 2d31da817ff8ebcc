"""Decorated polygons and the lifted pentagram maps.

A decoration of a vertex is a line through it; a decoration of a side is
a point on it.  Everything here is written on raw coordinate triples so
that one code path serves a configuration and its projective dual.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .deform import (
    CurveNotGeneric,
    SeriesPolygon,
    curve_from_rational,
    linear_curve,
    random_direction,
    tangent,
)
from .polygon import TwistedPolygon, _twice, base_indices, other, polygon_from_json, polygon_to_json
from .projective import (
    DegenerateError,
    IndeterminateError,
    ProjLine,
    ProjPoint,
    RandomSource,
    _cross,
    _dot,
    apply,
    det3,
)
from .scalar import PrecisionError, format_scalar, parse_scalar

H = Fraction(1, 2)

COMPUTED = "computed"
CURVE = "curve"
DEGENERATE = "degenerate-branch"
RANDOM = "random"


def _dual_type(x):
    return ProjLine if isinstance(x, ProjPoint) else ProjPoint


def wedge(x, y):
    """Join of two points or meet of two lines."""
    c = _cross(x.coords, y.coords)
    if not any(c):
        raise DegenerateError("wedge of equal objects")
    return _dual_type(x)(c)


def _on(x, y) -> bool:
    return _dot(x.coords, y.coords) == 0


# ---------------------------------------------------------------------------
# the triangle relation

SLOTS = ("A", "B", "C", "a", "b", "c")


@dataclass
class Triangle:
    """Vertices A, B, C and sides a = BC, b = CA, c = AB, with decorations.

    The vertices may be lines and the sides points (dual triangle).
    """
    A: object
    B: object
    C: object
    a: object
    b: object
    c: object
    dec: dict = field(default_factory=dict)


def _terms(T: Triangle, val: Callable[[str], tuple]):
    """(N_L, D_L, N_R, D_R) for [A,c*,B,a*,C,b*] = [a,C*,b,A*,c,B*]^-1."""
    A, B, C, a, b, c = (val(s) for s in SLOTS)
    As, Bs, Cs, as_, bs, cs = (val(s + "*") for s in SLOTS)
    NL = det3(A, cs, c) * det3(B, as_, a) * det3(C, bs, b)
    DL = det3(cs, B, c) * det3(as_, C, a) * det3(bs, A, b)
    NR = det3(a, Cs, C) * det3(b, As, A) * det3(c, Bs, B)
    DR = det3(Cs, b, C) * det3(As, c, A) * det3(Bs, a, B)
    return NL, DL, NR, DR


def two_triangle_ratios(A, B, C, A1, B1, C1) -> tuple:
    """Both sides of the two-triangle identity for triangles ABC and A1B1C1.

    Left: [A, c^c1, B, a^a1, C, b^b1].  Right: [a1, C.C1, b1, A.A1, c1, B.B1]^-1.
    """
    a, b, c = wedge(B, C), wedge(A, C), wedge(A, B)
    a1, b1, c1 = wedge(B1, C1), wedge(A1, C1), wedge(A1, B1)
    cs, as_, bs = (wedge(x, y).coords for x, y in ((c, c1), (a, a1), (b, b1)))
    As, Bs, Cs = (wedge(x, y).coords for x, y in ((A, A1), (B, B1), (C, C1)))
    A, B, C, a, b, c = (x.coords for x in (A, B, C, a, b, c))
    A1, B1, C1, a1, b1, c1 = (x.coords for x in (A1, B1, C1, a1, b1, c1))
    NL = det3(A, cs, c) * det3(B, as_, a) * det3(C, bs, b)
    DL = det3(cs, B, c) * det3(as_, C, a) * det3(bs, A, b)
    NR = det3(a1, Cs, C1) * det3(b1, As, A1) * det3(c1, Bs, B1)
    DR = det3(Cs, b1, C1) * det3(As, c1, A1) * det3(Bs, a1, B1)
    return Fraction(NL, DL), Fraction(DR, NR)


def _coords_of(T: Triangle):
    def val(s):
        if s.endswith("*"):
            return T.dec[s[0]].coords
        return getattr(T, s).coords
    return val


def relation_residual(T: Triangle):
    """N_L N_R - D_L D_R; zero exactly when the relation holds."""
    NL, DL, NR, DR = _terms(T, _coords_of(T))
    return NL * NR - DL * DR


def relation_sides(T: Triangle) -> tuple:
    """Both triple ratios, for reporting."""
    NL, DL, NR, DR = _terms(T, _coords_of(T))
    return Fraction(NL, DL), Fraction(DR, NR)


def _solve_linear(eq: Callable[[tuple], object], carrier, kind):
    """The object of type ``kind`` incident to ``carrier`` with eq(x) = 0 (eq linear)."""
    basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    g = tuple(eq(e) for e in basis)
    if not any(g):
        raise IndeterminateError("relation indeterminate")
    x = _cross(g, carrier.coords)
    if not any(x):
        raise IndeterminateError("relation indeterminate")
    return kind(x)


def solve_decoration(T: Triangle, slot: str):
    """Fill the missing decoration ``slot`` (one of A, B, C, a, b, c)."""
    base = _coords_of(T)
    target = getattr(T, slot)

    def eq(e):
        def val(s):
            return e if s == slot + "*" else base(s)
        NL, DL, NR, DR = _terms(T, val)
        return NL * NR - DL * DR

    x = _solve_linear(eq, target, _dual_type(target))
    return x


def solve_vertex(T: Triangle):
    """Recover vertex B from the other data (B itself is ignored).

    a != c: B = a ^ c.  a = c != b: cross ratio rule [A,c*,B,a*] = [a,C*,b,A*]^-1.
    a = b = c: [A,c*,B,a*,C,b*] = -1.  Returns (B, branch).
    """
    a, b, c = T.a, T.b, T.c
    if a != c:
        return wedge(a, c), "generic"
    kind = type(T.A)
    d = T.dec
    if b != a:
        A = T.A
        def eq(e):
            NL = det3(A.coords, d["c"].coords, a.coords) * det3(e, d["a"].coords, a.coords)
            DL = det3(d["c"].coords, e, a.coords) * det3(d["a"].coords, A.coords, a.coords)
            P = A.coords  # common point of a, C*, b, A*
            NR = det3(a.coords, d["C"].coords, P) * det3(b.coords, d["A"].coords, P)
            DR = det3(d["C"].coords, b.coords, P) * det3(d["A"].coords, a.coords, P)
            return NL * NR - DL * DR
        return _solve_linear(eq, a, kind), "cross-ratio"
    A, C = T.A, T.C
    w = a.coords

    def eq(e):
        NL = det3(A.coords, d["c"].coords, w) * det3(e, d["a"].coords, w) * det3(C.coords, d["b"].coords, w)
        DL = det3(d["c"].coords, e, w) * det3(d["a"].coords, C.coords, w) * det3(d["b"].coords, A.coords, w)
        return NL + DL
    return _solve_linear(eq, a, kind), "minus-one"


# ---------------------------------------------------------------------------
# degenerate complete quadrilateral

@dataclass
class Quadrilateral:
    """Vertices A..F and sides l1 = ABC, l2 = AEF, l3 = BDF, l4 = CDE.

    ``dec`` holds decorations of A..E and l1..l4.
    """
    A: object
    B: object
    C: object
    D: object
    E: object
    F: object
    l1: object
    l2: object
    l3: object
    l4: object
    dec: dict = field(default_factory=dict)


def _tri(verts, sides, dec, unknown=None):
    A, B, C = verts
    a, b, c = sides
    T = Triangle(A, B, C, a, b, c, dict(dec))
    return T


def decorate_sixth_vertex_degenerate(Q: Quadrilateral, src: RandomSource, retries: int = 12):
    """Decoration of F when all four sides coincide, by the auxiliary triangle chase."""
    vkind = type(Q.A)
    skind = _dual_type(Q.A)
    D = Q.dec
    last = None
    for _ in range(retries):
        try:
            cs = vkind(src.random_vector())
            Ps = skind(src.random_vector())
            C1s = skind(src.random_vector())
            c = wedge(Q.C, cs)
            P = wedge(c, Ps)
            C1 = wedge(c, C1s)
            l1p = wedge(Q.A, C1)
            l1ps = solve_decoration(Triangle(Q.A, C1, Q.C, c, Q.l1, l1p,
                                             {"A": D["A"], "B": C1s, "C": D["C"], "a": cs, "b": D["l1"]}), "c")
            bl = wedge(Q.B, P)
            bls = solve_decoration(Triangle(Q.B, P, Q.C, c, Q.l1, bl,
                                            {"A": D["B"], "B": Ps, "C": D["C"], "a": cs, "b": D["l1"]}), "c")
            B1 = wedge(l1p, bl)
            B1s = solve_decoration(Triangle(Q.A, B1, Q.B, bl, Q.l1, l1p,
                                            {"A": D["A"], "C": D["B"], "a": bls, "b": D["l1"], "c": l1ps}), "B")
            l4p = wedge(Q.E, C1)
            l4ps = solve_decoration(Triangle(Q.E, C1, Q.C, c, Q.l4, l4p,
                                             {"A": D["E"], "B": C1s, "C": D["C"], "a": cs, "b": D["l4"]}), "c")
            dl = wedge(Q.D, P)
            dls = solve_decoration(Triangle(Q.D, P, Q.C, c, Q.l4, dl,
                                            {"A": D["D"], "B": Ps, "C": D["C"], "a": cs, "b": D["l4"]}), "c")
            D1 = wedge(l4p, dl)
            D1s = solve_decoration(Triangle(Q.E, D1, Q.D, dl, Q.l4, l4p,
                                            {"A": D["E"], "C": D["D"], "a": dls, "b": D["l4"], "c": l4ps}), "B")
            l3p = wedge(B1, D1)
            l3ps = solve_decoration(Triangle(B1, C1, D1, l4p, l3p, l1p,
                                             {"A": B1s, "B": C1s, "C": D1s, "a": l4ps, "c": l1ps}), "b")
            F = wedge(l3p, Q.l2)
            if F != Q.F:
                raise DegenerateError("auxiliary construction missed F")
            return solve_decoration(Triangle(D1, Q.F, Q.E, Q.l2, l4p, l3p,
                                             {"A": D1s, "C": D["E"], "a": D["l2"], "b": l4ps, "c": l3ps}), "B")
        except DegenerateError as e:
            last = e
            continue
    raise DegenerateError(f"auxiliary choices kept degenerating: {last}")


# ---------------------------------------------------------------------------
# decorated polygons

class DecoratedPolygon:
    """A (possibly degenerate) twisted polygon with vertex and side decorations."""

    def __init__(self, polygon: TwistedPolygon, vertex_decorations: Sequence, side_decorations: Sequence,
                 provenance: dict | None = None, origin: str = COMPUTED):
        self.polygon = polygon
        self.vdec = tuple(vertex_decorations)
        self.sdec = tuple(side_decorations)
        self.provenance = dict(provenance or {})
        self.origin = origin
        if len(self.vdec) != polygon.n or len(self.sdec) != polygon.n:
            raise ValueError("one decoration per base vertex and side expected")

    @property
    def n(self):
        return self.polygon.n

    @property
    def indexing(self):
        return self.polygon.indexing

    def vertex(self, i):
        return self.polygon.vertex(i)

    def side(self, j):
        return self.polygon.side(j)

    def _lift(self, i, offset, base):
        t = _twice(i)
        q, r = divmod((t - offset) // 2, self.n)
        x = base[r]
        return apply(self.polygon.phi_power(q), x) if q else x

    def vertex_decoration(self, i):
        return self._lift(i, self.polygon.offset, self.vdec)

    def side_decoration(self, j):
        return self._lift(j, 1 - self.polygon.offset, self.sdec)

    def incidences_hold(self) -> bool:
        P = self.polygon
        return (all(_on(P.vertex(i), self.vertex_decoration(i)) for i in P.indices)
                and all(_on(self.side_decoration(j), P.side(j)) for j in P.side_indices))

    def random_slots(self) -> list:
        return sorted((k for k, v in self.provenance.items() if v == RANDOM), key=lambda k: (k[0], _twice(k[1])))

    def same_as(self, other: "DecoratedPolygon", decorations: bool = True) -> bool:
        if not self.polygon.same_as(other.polygon, sides=True):
            return False
        if not decorations:
            return True
        return self.vdec == other.vdec and self.sdec == other.sdec

    def __repr__(self):
        return f"DecoratedPolygon(n={self.n}, indexing={self.indexing}, random={len(self.random_slots())})"


def decorations_from_series(S: SeriesPolygon, origin: str = CURVE) -> DecoratedPolygon:
    """Limit polygon of a curve together with its curve-induced decorations."""
    P = S.limit()
    try:
        vd = [ProjLine(tangent(S.vertex(i))) for i in S.indices]
        sd = [ProjPoint(tangent(S.side(j))) for j in S.side_indices]
    except (PrecisionError, DegenerateError) as e:
        raise PrecisionError(f"decoration undefined: {e}") from e
    prov = {("v", i): CURVE for i in S.indices}
    prov.update({("s", j): CURVE for j in S.side_indices})
    return DecoratedPolygon(P, vd, sd, prov, origin)


def decoration_from_curve(curve, prec: int = 8, max_prec: int = 256) -> DecoratedPolygon:
    """Decorations induced by a curve.

    ``curve`` is a TwistedPolygon with RationalFunction coordinates, or a
    callable prec -> SeriesPolygon.
    """
    make = curve if callable(curve) else (lambda p: curve_from_rational(curve, p))
    while True:
        try:
            return decorations_from_series(make(prec))
        except PrecisionError:
            prec *= 2
            if prec > max_prec:
                raise CurveNotGeneric("decoration undefined along this curve")


def decorate_randomly(A: TwistedPolygon, src: RandomSource) -> DecoratedPolygon:
    """Decorations from A + tV for a seeded random direction V."""
    V = random_direction(A, src)
    return decoration_from_curve(lambda p: linear_curve(A, V, p))


# ---------------------------------------------------------------------------
# one step: the lift of the pentagram map

class NeedsTwoStepLift(DegenerateError):
    pass


def T_tilde(dA: DecoratedPolygon) -> DecoratedPolygon:
    A = dA.polygon
    if A.degenerate and A.base_sides is None:
        raise NeedsTwoStepLift("degenerate input without sides")
    out_idx = base_indices(A.n, other(A.indexing))
    diag, sdec, prov = {}, [], {}

    def b(i):
        k = _twice(i)
        if k not in diag:
            diag[k] = wedge(A.vertex(i - 1), A.vertex(i + 1))
        return diag[k]

    try:
        for i in A.indices:
            T = Triangle(A.vertex(i - 1), A.vertex(i), A.vertex(i + 1), A.side(i + H), b(i), A.side(i - H),
                         {"A": dA.vertex_decoration(i - 1), "B": dA.vertex_decoration(i),
                          "C": dA.vertex_decoration(i + 1), "a": dA.side_decoration(i + H),
                          "c": dA.side_decoration(i - H)})
            sdec.append(solve_decoration(T, "b"))
            prov[("s", i)] = COMPUTED
        sides = [b(i) for i in A.indices]
        B = TwistedPolygon([wedge(b(j - H), b(j + H)) for j in out_idx], A.monodromy, other(A.indexing),
                           True, sides)
        tmp = DecoratedPolygon(B, [ProjLine((0, 0, 1))] * A.n, sdec)
        vdec = []
        for j in out_idx:
            T = Triangle(A.vertex(j - H), B.vertex(j), A.vertex(j + H), B.side(j - H), A.side(j), B.side(j + H),
                         {"A": dA.vertex_decoration(j - H), "C": dA.vertex_decoration(j + H),
                          "a": tmp.side_decoration(j - H), "b": dA.side_decoration(j),
                          "c": tmp.side_decoration(j + H)})
            vdec.append(solve_decoration(T, "B"))
            prov[("v", j)] = COMPUTED
    except DegenerateError as e:
        raise NeedsTwoStepLift(f"degenerate triangle in the one-step lift: {e}") from e
    return DecoratedPolygon(B, vdec, sdec, prov)


# ---------------------------------------------------------------------------
# two steps: the degenerate-aware lift

@dataclass
class _Ctx:
    dA: DecoratedPolygon
    dB: DecoratedPolygon
    src: RandomSource
    log: list


def _pick_random(kind, carrier, src: RandomSource):
    while True:
        x = _cross(src.random_vector(), carrier.coords)
        if any(x):
            return kind(x)


def T_tilde2(dA: DecoratedPolygon, dB: DecoratedPolygon, src: RandomSource | None = None,
             log: list | None = None) -> DecoratedPolygon:
    """C from the consecutive decorated iterates A and B.

    Sides of C first (dual triangles), their decorations, then vertices and
    their decorations.  Slots where neither the triangle relation nor the
    quadrilateral rule applies get seeded random decorations; these are
    recorded in ``provenance`` and appended to ``log``.
    """
    src = src or RandomSource(0, stream="T2")
    log = log if log is not None else []
    A, B = dA.polygon, dB.polygon
    side_idx = base_indices(B.n, B.indexing)      # sides of C
    vert_idx = base_indices(A.n, A.indexing)      # vertices of C
    av, bv = dA.vertex, dB.vertex
    asd, bsd = dA.side, dB.side
    avd, asdd = dA.vertex_decoration, dA.side_decoration
    bvd, bsdd = dB.vertex_decoration, dB.side_decoration
    prov = {}

    # sides c_j: dual triangle with "vertices" b_{j-1/2}, c_j, b_{j+1/2}
    sides = []
    for j in side_idx:
        T = Triangle(bsd(j - H), None, bsd(j + H), bv(j + 1), bv(j), bv(j - 1),
                     {"A": bsdd(j - H), "C": bsdd(j + H), "a": bvd(j + 1), "b": bvd(j), "c": bvd(j - 1)})
        cj, branch = solve_vertex(T)
        sides.append(cj)
        if branch != "generic":
            prov[("side-branch", j)] = branch
    C_sides = TwistedPolygon([ProjPoint((0, 0, 1))] * A.n, A.monodromy, A.indexing, True, sides)
    cs = C_sides.side

    # side decorations
    sdec = []
    for j in side_idx:
        cstream = src.child(f"s{format_scalar(j)}")
        if bv(j - 1) != bv(j + 1):
            T = Triangle(bsd(j - H), cs(j), bsd(j + H), bv(j + 1), bv(j), bv(j - 1),
                         {"A": bsdd(j - H), "C": bsdd(j + H), "a": bvd(j + 1), "b": bvd(j), "c": bvd(j - 1)})
            try:
                sdec.append(solve_decoration(T, "B"))
                prov[("s", j)] = COMPUTED
                continue
            except DegenerateError:
                pass
        elif av(j - H) == av(j + H) == bv(j - 1):
            Q = Quadrilateral(bsd(j - 3 * H), bsd(j + H), asd(j), bsd(j + 3 * H), bsd(j - H), cs(j),
                              av(j - H), bv(j - 1), bv(j + 1), av(j + H),
                              {"A": bsdd(j - 3 * H), "B": bsdd(j + H), "C": asdd(j), "D": bsdd(j + 3 * H),
                               "E": bsdd(j - H), "l1": avd(j - H), "l2": bvd(j - 1), "l3": bvd(j + 1),
                               "l4": avd(j + H)})
            try:
                sdec.append(decorate_sixth_vertex_degenerate(Q, cstream))
                prov[("s", j)] = DEGENERATE
                continue
            except DegenerateError:
                pass
        sdec.append(_pick_random(ProjPoint, cs(j), cstream))
        prov[("s", j)] = RANDOM
        log.append(("s", j))
    tmp = DecoratedPolygon(C_sides, [ProjLine((0, 0, 1))] * A.n, sdec)
    csd = tmp.side_decoration

    # vertices C_i: triangle B_{i-1/2}, C_i, B_{i+1/2}
    verts = []
    for i in vert_idx:
        T = Triangle(bv(i - H), None, bv(i + H), cs(i - H), bsd(i), cs(i + H),
                     {"A": bvd(i - H), "C": bvd(i + H), "a": csd(i - H), "b": bsdd(i), "c": csd(i + H)})
        Ci, branch = solve_vertex(T)
        verts.append(Ci)
        if branch != "generic":
            prov[("vertex-branch", i)] = branch
    C = TwistedPolygon(verts, A.monodromy, A.indexing, True, sides)

    vdec = []
    for i in vert_idx:
        vstream = src.child(f"v{format_scalar(i)}")
        if cs(i - H) != cs(i + H):
            T = Triangle(bv(i - H), C.vertex(i), bv(i + H), cs(i - H), bsd(i), cs(i + H),
                         {"A": bvd(i - H), "C": bvd(i + H), "a": csd(i - H), "b": bsdd(i), "c": csd(i + H)})
            try:
                vdec.append(solve_decoration(T, "B"))
                prov[("v", i)] = COMPUTED
                continue
            except DegenerateError:
                pass
        elif bsd(i - 1) == bsd(i + 1) == cs(i - H):
            Q = Quadrilateral(bv(i - 3 * H), bv(i - H), av(i), bv(i + 3 * H), bv(i + H), C.vertex(i),
                              bsd(i - 1), cs(i - H), cs(i + H), bsd(i + 1),
                              {"A": bvd(i - 3 * H), "B": bvd(i - H), "C": avd(i), "D": bvd(i + 3 * H),
                               "E": bvd(i + H), "l1": bsdd(i - 1), "l2": csd(i - H), "l3": csd(i + H),
                               "l4": bsdd(i + 1)})
            try:
                vdec.append(decorate_sixth_vertex_degenerate(Q, vstream))
                prov[("v", i)] = DEGENERATE
                continue
            except DegenerateError:
                pass
        vdec.append(_pick_random(ProjLine, C.vertex(i), vstream))
        prov[("v", i)] = RANDOM
        log.append(("v", i))
    return DecoratedPolygon(C, vdec, sdec, prov)


# ---------------------------------------------------------------------------
# JSON

def _enc(x):
    return [format_scalar(c) for c in x.coords]


def decorated_to_json(D: DecoratedPolygon) -> dict:
    d = polygon_to_json(D.polygon)
    P = D.polygon
    d["vertex_decorations"] = [
        {"index": format_scalar(i), "line": _enc(x), "provenance": D.provenance.get(("v", i), COMPUTED)}
        for i, x in zip(P.indices, D.vdec)]
    d["side_decorations"] = [
        {"index": format_scalar(j), "point": _enc(x), "provenance": D.provenance.get(("s", j), COMPUTED)}
        for j, x in zip(P.side_indices, D.sdec)]
    d["origin"] = D.origin
    return d


def decorated_from_json(d: dict) -> DecoratedPolygon:
    P = polygon_from_json(d)
    vd, sd, prov = [], [], {}
    for e, i in zip(d["vertex_decorations"], P.indices):
        vd.append(ProjLine(tuple(parse_scalar(c) for c in e["line"])))
        prov[("v", i)] = e.get("provenance", COMPUTED)
    for e, j in zip(d["side_decorations"], P.side_indices):
        sd.append(ProjPoint(tuple(parse_scalar(c) for c in e["point"])))
        prov[("s", j)] = e.get("provenance", COMPUTED)
    return DecoratedPolygon(P, vd, sd, prov, d.get("origin", COMPUTED))
