"""Closed formulas for T^k, vanishing of restricted F-polynomials and the
confinement predictor."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .fpoly import (
    F_ideal,
    F_values,
    asm_term,
    avoiding_asms,
    index_array,
    is_asm,
    ones,
    restrict,
    wt,
    weight,
    B0_ideal,
)
from .polygon import (
    INTEGER,
    SingularError,
    TwistedPolygon,
    XCoords,
    YParams,
    x_coords,
    y_from_x,
)
from .projective import RandomSource


# ---------------------------------------------------------------------------
# iterate formulas

def _prod_y(y, j, k):
    out = Fraction(1)
    for i in range(-k, k):
        out *= y[j + 1 + 3 * i]
    return out


def _M(y, j, k):
    out = Fraction(1)
    for i in range(-k, k + 1):
        out *= y[3 * i + j]
    return out


class FTable:
    """Values F_{j,k}(y) for periodic y, computed on demand up to some k."""

    def __init__(self, y: YParams, kmax: int):
        self.y = y
        self.period = len(y)
        self.kmax = kmax
        ks = list(range(0, kmax + 1))
        self.values = F_values(lambda i: y[i], ks, range(self.period), period=self.period)

    def __call__(self, j: int, k: int):
        if k <= 0:
            return Fraction(1)
        return self.values[(j % self.period, k)]


def _denominator(F, p, q, k):
    v = F(p, q)
    if v == 0:
        raise SingularError(f"singular at step {k}: F[{p},{q}] vanishes", index=(p, q), step=k)
    return v


def iterate_x(x: XCoords, y: YParams, j: int, k: int, F: FTable | None = None):
    """x_j(T^k A) from the data of A (integer indexed)."""
    if k == 0:
        return x[j]
    F = F or FTable(y, k)
    pre = _prod_y(y, j, k)
    if (j + k) % 2 == 0:
        den = _denominator(F, j - 2, k - 1, k) * _denominator(F, j + 1, k, k)
        return x[j - 3 * k] * pre * F(j + 2, k - 1) * F(j - 3, k) / den
    den = _denominator(F, j + 1, k - 1, k) * _denominator(F, j - 2, k, k)
    return x[j + 3 * k] * pre * F(j - 3, k - 1) * F(j + 2, k) / den


def iterate_y(y: YParams, j: int, k: int, F: FTable | None = None):
    """y_j(T^k A) from the y-parameters of A (integer indexed)."""
    if k == 0:
        return y[j]
    F = F or FTable(y, k)
    if (j + k) % 2 == 0:
        den = _denominator(F, j - 3, k, k) * _denominator(F, j + 3, k, k)
        return _M(y, j, k) * F(j - 1, k) * F(j + 1, k) / den
    den = _denominator(F, j - 1, k - 1, k) * _denominator(F, j + 1, k - 1, k)
    return F(j - 3, k - 1) * F(j + 3, k - 1) / (_M(y, j, k - 1) * den)


def iterate_coords(A: TwistedPolygon, k: int) -> tuple[XCoords, YParams]:
    """x and y data of T^k(A) from the closed formulas."""
    if A.indexing != INTEGER:
        raise ValueError("the iterate formulas are stated for integer-indexed polygons")
    x = x_coords(A)
    y = y_from_x(x, A.indexing)
    F = FTable(y, k)
    two_n = len(x)
    xs = XCoords([iterate_x(x, y, j, k, F) for j in range(1, two_n + 1)])
    ys = YParams([iterate_y(y, j, k, F) for j in range(1, two_n + 1)])
    return xs, ys


def singular_denominators(y: YParams, k: int, F: FTable | None = None) -> list[tuple[int, int]]:
    """The vanishing F_{p,q} with p + q odd and q in {k-1, k}: nonempty iff T^k is singular."""
    F = F or FTable(y, k)
    out = []
    for q in (k - 1, k):
        if q <= 0:
            continue
        for p in range(len(y)):
            if (p + q) % 2 and F(p, q) == 0:
                out.append((p, q))
    return out


def singular_steps(y: YParams, kmax: int) -> list[int]:
    F = FTable(y, kmax)
    return [k for k in range(1, kmax + 1) if singular_denominators(y, k, F)]


def first_regular_step(y: YParams, kmax: int) -> int | None:
    # tables are cheap for small k, so grow the horizon gradually
    lo, hi = 1, min(kmax, 4)
    while lo <= kmax:
        F = FTable(y, hi)
        for k in range(lo, hi + 1):
            if not singular_denominators(y, k, F):
                return k
        lo, hi = hi + 1, min(kmax, hi + 2)
    return None


# ---------------------------------------------------------------------------
# knight paths

@dataclass
class KnightPath:
    k: int
    l: int
    sigma: int
    segments: tuple[int, int, int]
    matrix: tuple
    start_row: int
    shift: int = 0

    def values(self, j: int = 0) -> set[int]:
        arr = index_array(j, self.k)
        return {arr[i - 1][c - 1] for i, c in ones(self.matrix)}


def knight_sigma(k: int, l: int) -> int:
    if k % 2:
        return 0
    return -2 if (l + k) % 4 == 1 else 2


def _path(k: int, r0: int, shift: int, moved: int = 1):
    rows, segs, seg = [], [], 0
    r = r0
    for c in range(k):
        if c > 0:
            r -= 2
            if r < 1:
                r += k
                seg += 1
        rows.append(r)
        segs.append(seg)
    if shift:
        rows = [((r - 1 + shift) % k) + 1 if s == moved else r for r, s in zip(rows, segs)]
    sizes = [segs.count(s) for s in range(3)]
    M = [[0] * k for _ in range(k)]
    for c, r in enumerate(rows):
        M[r - 1][c] = 1
    return tuple(tuple(row) for row in M), tuple(sizes)


def knight_path(k: int, l: int) -> KnightPath:
    """A permutation matrix whose 1's sit only on array values j+l-2k, j+l+sigma, j+l+2k."""
    if (l - (k + 1)) % 2 or abs(l) > k + 1:
        raise ValueError(f"l={l} outside [-(k+1), k+1]_2")
    sigma = knight_sigma(k, l)
    target = {l - 2 * k, l + sigma, l + 2 * k}
    arr = index_array(0, k)
    shifts = [(0, 0)] if k % 2 else [(sh, s) for s in (1, 0, 2) for sh in (1, -1)]
    for r0 in range(1, k + 1):
        for sh, moved in shifts:
            M, sizes = _path(k, r0, sh, moved)
            if not is_asm(M):
                continue
            vals = {arr[i - 1][c - 1] for i, c in ones(M)}
            if vals <= target:
                # segment sizes in the order of the three target values
                seg_of = {}
                for i, c in ones(M):
                    seg_of[arr[i - 1][c - 1]] = seg_of.get(arr[i - 1][c - 1], 0) + 1
                abc = tuple(seg_of.get(v, 0) for v in (l - 2 * k, l + sigma, l + 2 * k))
                return KnightPath(k, l, sigma, abc, M, r0, sh)
    raise ValueError(f"no knight path found for k={k}, l={l}")


# ---------------------------------------------------------------------------
# vanishing analysis

class Vanishing(enum.Enum):
    IDENTICALLY_ZERO = "zero"
    NONZERO = "nonzero"
    UNKNOWN = "unknown"


def _is_progression(S: list[int], steps=(2, 4)) -> bool:
    if len(S) <= 1:
        return True
    d = S[1] - S[0]
    return d in steps and all(b - a == d for a, b in zip(S, S[1:]))


def vanishing_analysis(S: Iterable[int], j: int, k: int, enumerate_upto: int = 6) -> Vanishing:
    """Decide F_{j,k}|_S = 0 from the row/column, progression and avoider criteria."""
    S = set(S)
    if k <= 0:
        return Vanishing.NONZERO
    arr = index_array(j, k)
    relevant = sorted(s for s in S if (s - (j + k + 1)) % 2 == 0 and j - 3 * (k - 1) <= s <= j + 3 * (k - 1))
    same_parity = all((s - (j + k + 1)) % 2 == 0 for s in S)
    rows = [set(r) for r in arr]
    cols = [set(c) for c in zip(*arr)]
    if any(r <= S for r in rows) or any(c <= S for c in cols):
        return Vanishing.IDENTICALLY_ZERO
    if same_parity and len(relevant) < k and _is_progression(relevant):
        return Vanishing.NONZERO
    if same_parity:
        full = set(range(j - 3 * k + 3, j + 3 * k - 2, 2))
        for l in range(-(k + 1), k + 2, 2):
            sig = knight_sigma(k, l)
            if S & full <= full - {j + l - 2 * k, j + l + sig, j + l + 2 * k}:
                return Vanishing.NONZERO
    if k <= enumerate_upto:
        av = avoiding_asms(S, j, k)
        if not av:
            return Vanishing.IDENTICALLY_ZERO
        if len(av) == 1:
            return Vanishing.NONZERO
    return Vanishing.UNKNOWN


def resolve(S: Iterable[int], j: int, k: int) -> Vanishing:
    """Explicit computation of restrict(F_{j,k}, S) (k <= 5)."""
    if k > 5:
        raise ValueError("explicit restriction limited to k <= 5")
    return Vanishing.IDENTICALLY_ZERO if not restrict(F_ideal(j, k), S) else Vanishing.NONZERO


def vanishing_report(S: Iterable[int], js: Iterable[int], ks: Iterable[int]) -> list[dict]:
    """Per (j, k) rows with labels zero / nonzero / unknown-resolved-*."""
    S = set(S)
    out = []
    for k in ks:
        for j in js:
            v = vanishing_analysis(S, j, k)
            label = v.value
            if v is Vanishing.UNKNOWN:
                label = "unknown-resolved-" + resolve(S, j, k).value if k <= 5 else "unknown"
            out.append({"j": j, "k": k, "status": label})
    return out


# ---------------------------------------------------------------------------
# worst case for odd n

def worst_case_y(n: int, y0, src: RandomSource) -> YParams:
    """y_{2i} = -1 for 0 < i < n, free y_0, odd y's random with the product relation."""
    vals = {}
    for i in range(2, 2 * n - 1, 2):
        vals[i] = Fraction(-1)
    vals[0] = Fraction(y0)
    prod = vals[0] * (-1) ** (n - 1)
    odd = list(range(3, 2 * n, 2))
    for i in odd:
        v = 0
        while v == 0:
            v = Fraction(src.randint(-30, 30), src.randint(1, 30))
        vals[i] = v
        prod *= v
    vals[1] = 1 / prod
    # stored as y_1..y_{2n}
    return YParams([vals[j % (2 * n)] for j in range(1, 2 * n + 1)])


def _asm_value(A, j, y: YParams):
    return asm_term(A, j).evaluate(lambda i: y[i])


@dataclass
class WorstCaseResult:
    n: int
    ok: bool
    checked: int
    details: list = field(default_factory=list)


def worst_case_check(n: int, src: RandomSource | None = None, trials: int = 5,
                     asm_route: bool = True) -> WorstCaseResult:
    """Nonvanishing of F_{j,k} (j + k odd, k in {n, n+1}) on X_S, S = [1,n] minus {n}.

    Each value is computed by the perturbed recursion and, independently,
    by the sum over alternating sign matrices that avoid S cyclically.
    Also checks that y_0 = -1 forces vanishing and the two-avoider shape
    at j = n, k = n + 1.
    """
    if n % 2 == 0:
        raise ValueError("n must be odd")
    src = src or RandomSource(0)
    S = set(range(2, 2 * n - 1, 2))
    two_n = 2 * n
    ks = (n, n + 1)
    avoiders = {(j, k): avoiding_asms(S, j, k, modulus=two_n) if asm_route else None
                for k in ks for j in range(two_n) if (j + k) % 2}
    details = []
    ok = True
    checked = 0
    for trial in range(trials + 1):
        if trial < trials:
            y0 = Fraction(0)
            while y0 in (0, -1):
                y0 = Fraction(src.randint(-30, 30), src.randint(1, 30))
        else:
            y0 = Fraction(-1)
        y = worst_case_y(n, y0, src)
        vals = F_values(lambda i: y[i], ks, range(two_n), period=two_n)
        for k in ks:
            for j in range(two_n):
                if (j + k) % 2 == 0:
                    continue
                v = vals[(j, k)]
                checked += 1
                expect_zero = y0 == -1
                good = (v == 0) if expect_zero else (v != 0)
                if asm_route:
                    alt = sum((_asm_value(A, j, y) for A in avoiders[(j, k)]), Fraction(0))
                    good = good and alt == v
                if not good:
                    ok = False
                    details.append({"j": j, "k": k, "y0": str(y0), "value": str(v)})
        if trial < trials:
            two = avoiders.get((n, n + 1)) if asm_route else avoiding_asms(S, n, n + 1, modulus=two_n)
            if len(two) != 2:
                ok = False
                details.append({"two_avoiders": len(two)})
            else:
                A = two[0] if two[0][0][0] == 1 else two[1]
                M = (wt(A, n) * weight(B0_ideal(A), n)).evaluate(lambda i: y[i])
                if vals[(n, n + 1)] != M * (1 + y0) ** (n + 2):
                    ok = False
                    details.append({"two_avoider_identity": False})
    return WorstCaseResult(n, ok, checked, details)


# ---------------------------------------------------------------------------
# singularity types and the predictor

class Shape(enum.Enum):
    STEP2 = "SingletonOrStep2Progression"
    STEP1 = "Step1Progression"
    COMPLEMENT = "ComplementOfPoint"
    GENERAL = "General"
    EXCEPTIONAL = "Exceptional"


@dataclass
class SingularityType:
    n: int
    S: frozenset
    classification: Shape
    m: int = 0
    center: Fraction | None = None

    def __str__(self):
        return f"{self.classification.value}(m={self.m}) S={sorted(self.S)} n={self.n}"


def _as_runs(S: list, step, n):
    """Try to read S (mod n) as one progression with the given step; return (start, size)."""
    Sset = {s % n for s in S}
    m = len(Sset)
    for a in Sset:
        run = {(a + step * t) % n for t in range(m)}
        if run == Sset and len(run) == m:
            # a run must not wrap onto itself
            if step * (m - 1) < n:
                return a, m
    return None


def classify(S: Iterable, n: int) -> SingularityType:
    S = frozenset(Fraction(s) % n for s in S)
    Sl = sorted(S)
    full = {Fraction(i) for i in range(n)}
    if len(S) == 0:
        return SingularityType(n, S, Shape.GENERAL, 0)
    if S == full or (n % 2 == 0 and ({Fraction(i) for i in range(1, n, 2)} <= S
                                     or {Fraction(i % n) for i in range(2, n + 1, 2)} <= S)):
        return SingularityType(n, S, Shape.EXCEPTIONAL, len(S))
    if len(S) == n - 1:
        return SingularityType(n, S, Shape.COMPLEMENT, len(S))
    r2 = _as_runs(Sl, 2, n)
    if r2:
        a, m = r2
        return SingularityType(n, S, Shape.STEP2, m, Fraction(a) + (m - 1))
    r1 = _as_runs(Sl, 1, n)
    if r1:
        a, m = r1
        return SingularityType(n, S, Shape.STEP1, m, Fraction(a) + Fraction(m - 1, 2))
    return SingularityType(n, S, Shape.GENERAL, len(S))


@dataclass
class Prediction:
    kind: str                    # "confined", "bounded", "exceptional", "experimental"
    first_regular_step: int | None = None
    image_type: frozenset | None = None
    note: str = ""


class OutOfTheoremRange(ValueError):
    pass


def dual_progression(st: SingularityType) -> frozenset:
    """S' for a step-2 type and S for a step-1 type (the predicted Y-locus)."""
    c, m = st.center, st.m
    if st.classification is Shape.STEP2:
        return frozenset((c - Fraction(m - 1, 2) + t) % st.n for t in range(m))
    if st.classification is Shape.STEP1:
        return frozenset((c - (m - 1) + 2 * t) % st.n for t in range(m))
    raise ValueError("dual progression only for progression types")


def predict_confinement(st: SingularityType) -> Prediction:
    n = st.n
    if st.classification is Shape.EXCEPTIONAL:
        return Prediction("exceptional", note="the first iterate collapses to a point or into a line; no confinement")
    if st.classification in (Shape.STEP2, Shape.STEP1):
        m = st.m
        if not (1 <= m < n / 3 - 1):
            if n % 2:
                return Prediction("bounded", n + 1, note="outside theorem range; odd-n bound")
            raise OutOfTheoremRange(f"m={m} not below n/3 - 1 for n={n}")
        return Prediction("confined", m + 2, dual_progression(st))
    if n % 2:
        return Prediction("bounded", n + 1, note="odd n, proper subset of [1,n]")
    return Prediction("experimental", note="n even: only experiments (conjectural)")


def observed_first_regular_step(A: TwistedPolygon, kmax: int) -> int | None:
    """Experiment: first k with no vanishing denominator at this polygon."""
    y = y_from_x(x_coords(A), A.indexing)
    return first_regular_step(y, kmax)


# ---------------------------------------------------------------------------
# textual singularity types

@dataclass(frozen=True)
class TypeSpec:
    """A singularity type as typed on the command line.

    kinds: none, single (i), step2 (i, m), step1 (i, m), complement (i), set (elements).
    """
    kind: str
    i: Fraction | None = None
    m: int | None = None
    elements: tuple = ()

    def members(self, n: int) -> list:
        if self.kind == "none":
            return []
        if self.kind == "single":
            return [self.i]
        if self.kind == "step2":
            return [self.i - (self.m - 1) + 2 * t for t in range(self.m)]
        if self.kind == "step1":
            return [self.i - Fraction(self.m - 1, 2) + t for t in range(self.m)]
        if self.kind == "complement":
            return [Fraction(r) for r in range(1, n + 1) if (r - self.i) % n]
        return list(self.elements)

    def __str__(self):
        f = lambda x: str(x) if Fraction(x).denominator != 1 else str(int(x))
        if self.kind == "none":
            return "none"
        if self.kind in ("single", "complement"):
            return f"{self.kind}:i={f(self.i)}"
        if self.kind in ("step1", "step2"):
            return f"{self.kind}:i={f(self.i)},m={self.m}"
        return "set:{" + ",".join(f(x) for x in self.elements) + "}"


def _num(s: str) -> Fraction:
    return Fraction(s.strip())


def parse_type_spec(text: str) -> TypeSpec:
    text = text.strip().replace(" ", "")
    if text in ("", "none"):
        return TypeSpec("none")
    kind, _, body = text.partition(":")
    if kind == "set":
        inner = body.strip("{}")
        if not inner:
            raise ValueError("empty set type")
        els = tuple(sorted({_num(x) for x in inner.split(",")}))
        return TypeSpec("set", elements=els)
    if kind not in ("single", "step1", "step2", "complement"):
        raise ValueError(f"unknown singularity type {kind!r}")
    args = {}
    for part in body.split(","):
        if "=" not in part:
            raise ValueError(f"bad type argument {part!r}")
        k, v = part.split("=", 1)
        args[k] = v
    if "i" not in args:
        raise ValueError("type needs i=")
    i = _num(args["i"])
    if kind in ("step1", "step2"):
        if "m" not in args:
            raise ValueError("type needs m=")
        m = int(args["m"])
        if m < 1:
            raise ValueError("m must be positive")
        return TypeSpec(kind, i, m)
    return TypeSpec(kind, i)
