"""Twisted polygons, the pentagram map and Schwartz's x-coordinates."""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .projective import (
    IDENTITY,
    DegenerateError,
    ProjLine,
    ProjPoint,
    RandomSource,
    apply,
    chi,
    det3,
    join,
    mat_adj,
    mat_mul,
    meet,
    _is_zero,
)
from .scalar import format_scalar, parse_scalar

INTEGER = "integer"
HALF = "half"


class SingularError(DegenerateError):
    """A construction failed at a specific index."""

    def __init__(self, msg, index=None, step=None):
        super().__init__(msg)
        self.index = index
        self.step = step


class CoordinateSingularity(SingularError):
    pass


def _twice(i) -> int:
    """2*i as an int, accepting ints, Fractions and floats like 2.5."""
    v = Fraction(i) * 2
    if v.denominator != 1:
        raise ValueError(f"bad index {i!r}")
    return int(v)


def as_index(i):
    """Normalize an index: int for integers, Fraction for half-integers."""
    v = Fraction(i)
    return int(v) if v.denominator == 1 else v


def other(indexing: str) -> str:
    return HALF if indexing == INTEGER else INTEGER


def base_indices(n: int, indexing: str):
    off = Fraction(1, 2) if indexing == HALF else 0
    return [as_index(off + r) for r in range(n)]


class _Cyclic:
    """Values v_1..v_{2n} with cyclic indexing."""

    __slots__ = ("values",)

    def __init__(self, values: Sequence):
        self.values = tuple(values)

    def __getitem__(self, j: int):
        return self.values[(j - 1) % len(self.values)]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        return type(self) is type(other) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"{type(self).__name__}([{', '.join(format_scalar(v) for v in self.values)}])"


class XCoords(_Cyclic):
    pass


class YParams(_Cyclic):
    pass


class TwistedPolygon:
    """A_{i+n} = phi(A_i), stored by n base vertices and the matrix phi.

    ``sides`` may be supplied explicitly (indexed like the base sides);
    this matters for degenerate polygons whose consecutive vertices
    coincide in the limit.
    """

    def __init__(self, vertices: Sequence[ProjPoint], monodromy=IDENTITY, indexing: str = INTEGER,
                 degenerate: bool | None = None, sides: Sequence[ProjLine] | None = None):
        self.n = len(vertices)
        if self.n < 5:
            raise ValueError("twisted polygons need n >= 5")
        if indexing not in (INTEGER, HALF):
            raise ValueError(f"unknown indexing {indexing!r}")
        self.indexing = indexing
        self.base_vertices = tuple(vertices)
        self.monodromy = tuple(tuple(r) for r in monodromy)
        self.base_sides = tuple(sides) if sides is not None else None
        self._pow = {0: IDENTITY, 1: self.monodromy, -1: mat_adj(self.monodromy)}
        self._vcache: dict = {}
        self._scache: dict = {}
        if degenerate is None:
            degenerate = not self.in_general_position()
        elif not degenerate and not self.in_general_position():
            raise DegenerateError("consecutive vertices not in general position")
        self.degenerate = degenerate

    # -- indices ---------------------------------------------------------
    @property
    def offset(self) -> int:
        return 1 if self.indexing == HALF else 0

    @property
    def indices(self):
        return base_indices(self.n, self.indexing)

    @property
    def side_indices(self):
        return base_indices(self.n, other(self.indexing))

    def _split(self, i, offset):
        t = _twice(i)
        if (t - offset) % 2:
            raise ValueError(f"index {i} does not match the indexing scheme")
        r = (t - offset) // 2
        q, r = divmod(r, self.n)
        return q, r

    def phi_power(self, q: int):
        if q not in self._pow:
            step = self._pow[1 if q > 0 else -1]
            prev = self.phi_power(q - 1 if q > 0 else q + 1)
            self._pow[q] = mat_mul(step, prev)
        return self._pow[q]

    # -- access ----------------------------------------------------------
    def vertex(self, i) -> ProjPoint:
        key = _twice(i)
        v = self._vcache.get(key)
        if v is None:
            q, r = self._split(i, self.offset)
            v = self.base_vertices[r]
            if q:
                v = apply(self.phi_power(q), v)
            self._vcache[key] = v
        return v

    def side(self, j) -> ProjLine:
        key = _twice(j)
        s = self._scache.get(key)
        if s is None:
            if self.base_sides is not None:
                q, r = self._split(j, 1 - self.offset)
                s = self.base_sides[r]
                if q:
                    s = apply(self.phi_power(q), s)
            else:
                h = Fraction(1, 2)
                s = join(self.vertex(j - h), self.vertex(j + h))
            self._scache[key] = s
        return s

    __getitem__ = vertex

    def sides(self):
        return [self.side(j) for j in self.side_indices]

    # -- predicates ------------------------------------------------------
    def in_general_position(self) -> bool:
        """Every four consecutive vertices have no three collinear."""
        try:
            for i in self.indices:
                quad = [self.vertex(i + d) for d in range(4)]
                for a, b, c in combinations(quad, 3):
                    if _is_zero(det3(a, b, c)):
                        return False
        except (ArithmeticError, DegenerateError):
            return False
        return True

    def transform(self, M) -> "TwistedPolygon":
        """M o A; the monodromy is conjugated."""
        Minv = mat_adj(M)
        mono = mat_mul(M, mat_mul(self.monodromy, Minv))
        sides = None if self.base_sides is None else [apply(M, s) for s in self.base_sides]
        return TwistedPolygon([apply(M, v) for v in self.base_vertices], mono, self.indexing,
                              self.degenerate, sides)

    def same_as(self, other: "TwistedPolygon", sides: bool = False) -> bool:
        if (self.n, self.indexing) != (other.n, other.indexing):
            return False
        if any(self.vertex(i) != other.vertex(i) for i in self.indices):
            return False
        if sides and any(self.side(j) != other.side(j) for j in self.side_indices):
            return False
        # monodromy up to scale
        if any(self.vertex(i + self.n) != other.vertex(i + self.n) for i in self.indices[:4]):
            return False
        return True

    def __repr__(self):
        return f"TwistedPolygon(n={self.n}, indexing={self.indexing}, degenerate={self.degenerate})"


def vertex(A: TwistedPolygon, i) -> ProjPoint:
    return A.vertex(i)


def side(A: TwistedPolygon, j) -> ProjLine:
    return A.side(j)


# ---------------------------------------------------------------------------
# the pentagram map

def pentagram(A: TwistedPolygon, check: bool = True) -> TwistedPolygon:
    """B_i = (A_{i-3/2} A_{i+1/2}) meet (A_{i-1/2} A_{i+3/2}).

    The sides of the output are the short diagonals b_j = A_{j-1} A_{j+1},
    kept explicitly so that coincident output vertices still have sides.
    """
    h = Fraction(1, 2)
    out_idx = base_indices(A.n, other(A.indexing))
    diag = {}

    def d(j):
        if j not in diag:
            try:
                diag[j] = join(A.vertex(j - 1), A.vertex(j + 1))
            except DegenerateError as e:
                raise SingularError(f"diagonal {as_index(j)} undefined: {e}", index=as_index(j)) from e
        return diag[j]

    verts = []
    for i in out_idx:
        try:
            verts.append(meet(d(i - h), d(i + h)))
        except SingularError:
            raise
        except DegenerateError as e:
            raise SingularError(f"vertex {i} undefined: diagonals coincide", index=i) from e
    sides = [d(j) for j in base_indices(A.n, A.indexing)]
    return TwistedPolygon(verts, A.monodromy, other(A.indexing),
                          None if check else True, sides)


def iterate(A: TwistedPolygon, k: int) -> list[TwistedPolygon]:
    out = [A]
    for step in range(1, k + 1):
        try:
            out.append(pentagram(out[-1]))
        except SingularError as e:
            e.step = step
            raise
    return out


# ---------------------------------------------------------------------------
# coordinates

def _x_pair(A: TwistedPolygon, k):
    P = A.vertex
    l01 = join(P(k - 2), P(k - 1))
    B = meet(l01, join(P(k), P(k + 1)))
    C = meet(join(P(k - 1), P(k)), join(P(k + 1), P(k + 2)))
    D = meet(l01, join(P(k + 1), P(k + 2)))
    return chi(P(k - 2), P(k - 1), B, D), chi(P(k + 2), P(k + 1), C, D)


def _cyclic_list(vals: dict, two_n: int) -> list:
    red = {j % two_n: v for j, v in vals.items()}
    return [red[j % two_n] for j in range(1, two_n + 1)]


def x_coords(A: TwistedPolygon) -> XCoords:
    """x_1..x_{2n}; vertex k contributes x_{2k} and x_{2k+1}."""
    vals = {}
    for k in A.indices:
        try:
            a, b = _x_pair(A, k)
        except (DegenerateError, ZeroDivisionError) as e:
            raise CoordinateSingularity(f"x-coordinate at vertex {k} undefined: {e}", index=k) from e
        j = _twice(k)
        vals[j] = a
        vals[j + 1] = b
    return XCoords(_cyclic_list(vals, 2 * A.n))


def y_from_x(x: XCoords, indexing: str) -> YParams:
    out = []
    for j in range(1, len(x) + 1):
        p = x[j] * x[j + 1]
        inverted = (j % 2 == 0) == (indexing == INTEGER)
        out.append(-1 / p if inverted else -p)
    return YParams(out)


def y_params(A: TwistedPolygon) -> YParams:
    return y_from_x(x_coords(A), A.indexing)


def y_params_cross_ratio(A: TwistedPolygon) -> YParams:
    """y via the vertex and edge cross ratios."""
    P = A.vertex
    vals = {}
    for k in A.indices:
        try:
            a = P(k)
            lines = [join(a, P(k + d)) for d in (-2, -1, 1, 2)]
            yv = -1 / chi(*lines)
            B = meet(join(P(k - 2), P(k - 1)), join(P(k), P(k + 1)))
            E = meet(join(P(k), P(k + 1)), join(P(k + 2), P(k + 3)))
            ye = -chi(B, P(k), P(k + 1), E)
        except (DegenerateError, ZeroDivisionError) as e:
            raise CoordinateSingularity(f"y-parameter at vertex {k} undefined: {e}", index=k) from e
        j = _twice(k)
        vals[j] = yv
        vals[j + 1] = ye
    return YParams(_cyclic_list(vals, 2 * A.n))


def _alpha(x: XCoords, even_lower: bool) -> XCoords:
    out = []
    for j in range(1, len(x) + 1):
        lower = (j % 2 == 0) == even_lower
        if lower:
            num, den = 1 - x[j - 3] * x[j - 2], 1 - x[j + 1] * x[j + 2]
            base = x[j - 1]
        else:
            num, den = 1 - x[j + 3] * x[j + 2], 1 - x[j - 1] * x[j - 2]
            base = x[j + 1]
        if den == 0:
            raise CoordinateSingularity(f"coordinate singularity at j={j}", index=j)
        out.append(base * num / den)
    return XCoords(out)


def alpha1(x: XCoords) -> XCoords:
    """x-coordinates of T(A) for A indexed by half-integers."""
    return _alpha(x, True)


def alpha2(x: XCoords) -> XCoords:
    """x-coordinates of T(A) for A indexed by integers."""
    return _alpha(x, False)


def alpha(x: XCoords, indexing: str) -> XCoords:
    return alpha1(x) if indexing == HALF else alpha2(x)


# ---------------------------------------------------------------------------
# singularity loci

def in_X(A: TwistedPolygon, i) -> bool:
    """A_{i-2}, A_i, A_{i+2} collinear."""
    return _is_zero(det3(A.vertex(i - 2), A.vertex(i), A.vertex(i + 2)))


def in_Y(A: TwistedPolygon, j) -> bool:
    """Sides a_{j-2}, a_j, a_{j+2} concurrent."""
    return _is_zero(det3(A.side(j - 2), A.side(j), A.side(j + 2)))


def singularity_type(A: TwistedPolygon) -> set:
    return {i for i in A.indices if in_X(A, i)}


def dual_type(A: TwistedPolygon) -> set:
    return {j for j in A.side_indices if in_Y(A, j)}


def reduce_index(i, n: int):
    """Index modulo n, into the base range."""
    t = _twice(i) % (2 * n)
    return as_index(Fraction(t, 2))


# ---------------------------------------------------------------------------
# generators

def _unforced_ok(A: TwistedPolygon, forced: set) -> bool:
    """No coincidences or collinear triples in any 5-window other than forced ones."""
    for i in A.indices:
        win = [i + d for d in range(5)]
        pts = [A.vertex(w) for w in win]
        if len(set(pts)) < 5:
            return False
        for a, b, c in combinations(range(5), 3):
            if _is_zero(det3(pts[a], pts[b], pts[c])):
                triple = tuple(sorted((win[a], win[b], win[c])))
                if triple not in forced:
                    return False
    return True


def regular_polygon(n: int, denominator: int = 10000) -> TwistedPolygon:
    """Closed convex n-gon with vertices rounded from the regular one."""
    verts = []
    for r in range(n):
        a = 2 * math.pi * r / n + math.pi / 2
        x = Fraction(round(denominator * math.cos(a)), denominator)
        y = Fraction(round(denominator * math.sin(a)), denominator)
        verts.append(ProjPoint((x, y, 1)))
    return TwistedPolygon(verts)


def random_polygon(n: int, indexing: str = INTEGER, src: RandomSource | None = None,
                   closed: bool = False, retries: int = 100) -> TwistedPolygon:
    """A generic twisted n-gon with small integer coordinates."""
    return random_polygon_in_XS(n, (), src, indexing=indexing, closed=closed, retries=retries)


def _groups(S, n, offset, closed: bool = False):
    """Merge constraint triples sharing two vertices.

    Works with doubled indices.  Returns one sorted member list per orbit
    under shifts by n, normalized so the smallest member is a base index.
    """
    S = sorted({Fraction(s) % n for s in S})
    span = range(-3, 4)
    triples = [(q, frozenset(_twice(s + q * n + d) for d in (-2, 0, 2))) for s in S for q in span]
    parent = list(range(len(triples)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in combinations(range(len(triples)), 2):
        if len(triples[a][1] & triples[b][1]) >= 2:
            parent[find(a)] = find(b)
    comp: dict = {}
    central = set()
    for a, (q, t) in enumerate(triples):
        comp.setdefault(find(a), set()).update(t)
        if q == 0:
            central.add(find(a))
    twice_n = 2 * n
    groups = {}
    for root in central:
        members = comp[root]
        if not closed and max(members) - min(members) > 3 * twice_n:
            raise DegenerateError("singularity type forces a line invariant under the monodromy")
        shift = (min(members) - offset) // twice_n
        key = tuple(sorted(m - shift * twice_n for m in members))
        groups[key] = None
    return list(groups)


def _power(phi, phinv, q: int):
    M = IDENTITY
    for _ in range(abs(q)):
        M = mat_mul(phi if q > 0 else phinv, M)
    return M


def random_polygon_in_XS(n: int, S: Iterable, src: RandomSource | None = None, indexing: str = INTEGER,
                         closed: bool = False, retries: int = 100) -> TwistedPolygon:
    """Random A with A_{i-2}, A_i, A_{i+2} collinear exactly for i in S (mod n)."""
    if n < 5:
        raise ValueError("n must be at least 5")
    src = src or RandomSource(0)
    off = 1 if indexing == HALF else 0
    S = [as_index(s) for s in S]
    for s in S:
        if (_twice(s) - off) % 2:
            raise ValueError(f"index {s} does not match indexing {indexing}")
    groups = _groups(S, n, off, closed) if S else []
    twice_n = 2 * n
    for _ in range(retries):
        phi = IDENTITY if closed else src.random_matrix()
        phinv = mat_adj(phi)
        lines, fixed = [], {}
        for g in groups:
            wrap = [(w, m) for m in g for w in (1, 2, 3) if m + w * twice_n in g]
            if not wrap or closed:
                lines.append(src.random_line())
                continue
            # the line joins some vertex P and phi^w(P): choose P first
            w, t = min(wrap)
            q, r = divmod((t - off) // 2, n)
            P = fixed.setdefault(r, src.random_point())
            Pq = apply(_power(phi, phinv, q), P)
            try:
                lines.append(join(Pq, apply(_power(phi, phinv, w), Pq)))
            except DegenerateError:
                lines.append(src.random_line())
        # incidences of base vertex r: lines phi^q(L_g) with r + q n in g
        verts = []
        ok = True
        for r in range(n):
            t = 2 * r + off
            through = []
            for g, L in zip(groups, lines):
                for m in g:
                    if (m - t) % twice_n == 0:
                        q = (m - t) // twice_n
                        # A_r = phi^{-q}(A_m) lies on phi^{-q}(L)
                        through.append(apply(_power(phi, phinv, -q), L))
            through = list(dict.fromkeys(through))
            try:
                if r in fixed:
                    if any(not _is_zero(sum(a * b for a, b in zip(fixed[r].coords, l.coords))) for l in through):
                        ok = False
                        break
                    verts.append(fixed[r])
                elif not through:
                    verts.append(src.random_point())
                elif len(through) == 1:
                    verts.append(src.random_point_on(through[0]))
                else:
                    P = meet(through[0], through[1])
                    if any(not _is_zero(sum(a * b for a, b in zip(P.coords, l.coords))) for l in through[2:]):
                        ok = False
                        break
                    verts.append(P)
            except DegenerateError:
                ok = False
                break
        if not ok:
            continue
        try:
            A = TwistedPolygon(verts, phi, indexing, degenerate=bool(S))
        except DegenerateError:
            continue
        forced = set()
        for g in groups:
            for q in range(-3, 4):
                idx = [as_index(Fraction(m + q * twice_n, 2)) for m in g]
                forced.update(tuple(sorted(c)) for c in combinations(idx, 3))
        if not A.in_general_position() or not _unforced_ok(A, forced):
            continue
        if S and singularity_type(A) != {reduce_index(s, n) for s in S}:
            continue
        return A
    raise DegenerateError(f"could not realize singularity type {sorted(S)} for n={n}")


# ---------------------------------------------------------------------------
# JSON

def polygon_to_json(A: TwistedPolygon) -> dict:
    d = {
        "n": A.n,
        "indexing": A.indexing,
        "vertices": [[format_scalar(c) for c in v.coords] for v in A.base_vertices],
        "monodromy": [[format_scalar(c) for c in row] for row in A.monodromy],
        "degenerate": bool(A.degenerate),
    }
    if A.base_sides is not None:
        d["sides"] = [[format_scalar(c) for c in s.coords] for s in A.base_sides]
    return d


def polygon_from_json(d: dict) -> TwistedPolygon:
    for key in ("n", "indexing", "vertices"):
        if key not in d:
            raise ValueError(f"polygon JSON missing {key!r}")
    verts = [ProjPoint(tuple(parse_scalar(str(c)) for c in v)) for v in d["vertices"]]
    if len(verts) != d["n"]:
        raise ValueError("vertex count does not match n")
    mono = d.get("monodromy") or IDENTITY
    mono = tuple(tuple(parse_scalar(str(c)) for c in row) for row in mono)
    # keep integer matrices integral
    mono = tuple(tuple(int(c) if Fraction(c).denominator == 1 else c for c in row) for row in mono)
    sides = d.get("sides")
    if sides is not None:
        sides = [ProjLine(tuple(parse_scalar(str(c)) for c in s)) for s in sides]
    return TwistedPolygon(verts, mono, d["indexing"], bool(d.get("degenerate", False)) or None, sides)
