"""Polynomials in the y-variables, the posets Q_k and P_k, alternating sign
matrices, and three independent constructions of the F-polynomials."""
from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

# ---------------------------------------------------------------------------
# Laurent polynomials with packed monomials
#
# A monomial prod y_i^{e_i} is stored as the integer sum e_i * BASE^(i + OFF)
# with balanced digits.  Multiplication of monomials is integer addition and
# shifting all indices by j is multiplication by BASE^j.  For genuine
# polynomials the integer order is a lexicographic monomial order.

_BITS = 16
BASE = 1 << _BITS
_HALF = BASE >> 1
OFF = 64
MIN_VAR, MAX_VAR = -OFF, 256


def _var_key(i: int) -> int:
    if not MIN_VAR <= i <= MAX_VAR:
        raise ValueError(f"variable index {i} out of supported range")
    return 1 << (_BITS * (i + OFF))


def _decode(m: int) -> dict[int, int]:
    out = {}
    pos = -OFF
    while m:
        d = m & (BASE - 1)
        if d >= _HALF:
            d -= BASE
        if d:
            out[pos] = d
        m = (m - d) >> _BITS
        pos += 1
    return out


# adding _HALF to every digit turns balanced digits into ordinary ones
_ALL_HALF = sum(_HALF << (_BITS * p) for p in range(MAX_VAR + OFF + 2))


def _digit(m: int, i: int) -> int:
    """Exponent of y_i in the packed monomial m."""
    return (((m + _ALL_HALF) >> (_BITS * (i + OFF))) & (BASE - 1)) - _HALF


def _encode(exps: Mapping[int, int]) -> int:
    return sum(e * _var_key(i) for i, e in exps.items())


class YPoly:
    """Integer Laurent polynomial in y_i, i in Z."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # constructors
    @classmethod
    def const(cls, c: int = 1) -> "YPoly":
        return cls({0: c})

    @classmethod
    def var(cls, i: int) -> "YPoly":
        return cls({_var_key(i): 1})

    @classmethod
    def monomial(cls, exps: Mapping[int, int], c: int = 1) -> "YPoly":
        return cls({_encode(exps): c})

    # arithmetic
    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return YPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return YPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out: dict[int, int] = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                out[m] = get(m, 0) + c1 * c2
        return YPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = YPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = YPoly.const(other)
        if not isinstance(other, YPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def shift(self, j: int) -> "YPoly":
        """Substitute y_i -> y_{i+j}."""
        if j == 0:
            return self
        if j > 0:
            f = 1 << (_BITS * j)
            return YPoly({m * f: c for m, c in self.terms.items()})
        # negative shift: exact because no variable drops below MIN_VAR in practice
        return YPoly({_encode({i + j: e for i, e in _decode(m).items()}): c for m, c in self.terms.items()})

    def divide_exact(self, other: "YPoly") -> "YPoly":
        """Polynomial division that must leave no remainder."""
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        lead = max(other.terms)
        lc = other.terms[lead]
        rest = [(m - lead, c) for m, c in other.terms.items() if m != lead]
        rem = dict(self.terms)
        heap = [-m for m in rem]
        heapq.heapify(heap)
        quot: dict[int, int] = {}
        while heap:
            m = -heapq.heappop(heap)
            c = rem.pop(m, 0)
            if not c:
                continue
            q, r = divmod(c, lc)
            if r:
                raise ArithmeticError("inexact division (coefficient)")
            qm = m - lead
            if any(e < 0 for e in _decode(qm).values()) and all(e >= 0 for e in _decode(lead).values()):
                raise ArithmeticError("inexact division (monomial)")
            quot[qm] = q
            for dm, dc in rest:
                k = qm + lead + dm
                v = rem.get(k)
                if v is None:
                    rem[k] = -q * dc
                    heapq.heappush(heap, -k)
                else:
                    rem[k] = v - q * dc
        return YPoly(quot)

    # inspection
    def monomials(self):
        """(exponent dict, coefficient) pairs."""
        return [(_decode(m), c) for m, c in self.terms.items()]

    def support(self) -> set[int]:
        out = set()
        for m in self.terms:
            out.update(_decode(m))
        return out

    def is_positive_polynomial(self) -> bool:
        return all(c > 0 and all(e > 0 for e in _decode(m).values()) for m, c in self.terms.items())

    def evaluate(self, y: Callable[[int], object] | Mapping[int, object]):
        get = y.__getitem__ if hasattr(y, "__getitem__") else y
        total = 0
        for m, c in self.terms.items():
            v = c
            for i, e in _decode(m).items():
                v = v * (get(i) ** e if e > 0 else Fraction(1) / get(i) ** (-e))
            total = total + v
        return total

    def substitute_signs(self, S: Iterable[int]) -> "YPoly":
        return restrict(self, S)

    def __repr__(self):
        return f"YPoly({format_ypoly(self)})"


def _lift(x) -> YPoly:
    if isinstance(x, YPoly):
        return x
    if isinstance(x, int):
        return YPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a y-polynomial")


def restrict(F: YPoly, S: Iterable[int]) -> YPoly:
    """Substitute y_i = -1 for every i in S."""
    keys = [(i, _var_key(i)) for i in set(S)]
    if not keys:
        return F
    out: dict[int, int] = {}
    for m, c in F.terms.items():
        k, sign = m, c
        for i, key in keys:
            e = _digit(m, i)
            if e:
                k -= e * key
                if e % 2:
                    sign = -sign
        out[k] = out.get(k, 0) + sign
    return YPoly(out)


def cyclic_reduce(F: YPoly, n: int) -> YPoly:
    """Impose y_{i+2n} = y_i, representing every variable by its residue in [0, 2n)."""
    out: dict[int, int] = {}
    for m, c in F.terms.items():
        exps: dict[int, int] = {}
        for i, e in _decode(m).items():
            r = i % (2 * n)
            exps[r] = exps.get(r, 0) + e
        k = _encode(exps)
        out[k] = out.get(k, 0) + c
    return YPoly(out)


def format_ypoly(F: YPoly) -> str:
    """Deterministic text form, terms sorted by their (index, exponent) lists."""
    if not F.terms:
        return "0"
    items = sorted(((sorted(_decode(m).items()), c) for m, c in F.terms.items()))
    parts = []
    for exps, c in items:
        mono = " ".join(f"y[{i}]" if e == 1 else f"y[{i}]^{e}" for i, e in exps)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c} * {mono}")
    return " + ".join(parts).replace("+ -", "- ")


def M_poly(j: int, k: int) -> YPoly:
    """prod_{i=-k}^{k} y_{3i+j}."""
    return YPoly.monomial({3 * i + j: 1 for i in range(-k, k + 1)}) if k >= 0 else YPoly.const(1)


# ---------------------------------------------------------------------------
# posets

def progression(a: int, b: int, step: int) -> list[int]:
    """[a, b]_step; empty when b < a."""
    if (b - a) % step:
        raise ValueError(f"[{a},{b}]_{step} is not a progression")
    return list(range(a, b + 1, step))


@lru_cache(maxsize=None)
def poset_Q(k: int) -> tuple:
    out = []
    for r in range(-(k - 2), k - 1):
        for s in range(-(k - 2), k - 1):
            if abs(r) + abs(s) > k - 2 or (r + s - k) % 2:
                continue
            lo, hi = 2 * abs(s) - k + 2, k - 2 - 2 * abs(r)
            if hi >= lo:
                out.extend((r, s, t) for t in range(lo, hi + 1, 4))
    return tuple(sorted(out, key=lambda e: (e[2], e[0], e[1])))


def _covers(elements) -> dict:
    """Lower covers of each element under the rule t' = t + 1, |dr| + |ds| = 1."""
    eset = set(elements)
    low = {}
    for (r, s, t) in elements:
        low[(r, s, t)] = [(r + dr, s + ds, t - 1) for dr, ds in ((1, 0), (-1, 0), (0, 1), (0, -1))
                          if (r + dr, s + ds, t - 1) in eset]
    return low


@lru_cache(maxsize=None)
def poset_P(k: int):
    """(elements sorted by t, lower-cover map) for P_k = Q_{k+1} u Q_k."""
    elements = tuple(sorted(poset_Q(k + 1) + poset_Q(k), key=lambda e: (e[2], e[0], e[1])))
    return elements, _covers(elements)


def hasse_edges(k: int) -> set:
    elements, low = poset_P(k)
    return {(b, a) for a in elements for b in low[a]}


@lru_cache(maxsize=None)
def _below_P(k: int) -> dict:
    """Strict down-sets in P_k."""
    elements, low = poset_P(k)
    below: dict = {}
    for e in elements:
        acc = set()
        for b in low[e]:
            acc.add(b)
            acc |= below[b]
        below[e] = frozenset(acc)
    return below


@lru_cache(maxsize=None)
def _Q_order(k: int):
    """Q_k ordered by the restriction of the P_k order (equivalently P_{k-1})."""
    elements = poset_Q(k)
    if k <= 1:
        return elements, {e: [] for e in elements}
    below = _below_P(k)
    eset = set(elements)
    strict = {e: below[e] & eset for e in elements}
    # lower covers: maximal strictly-below elements
    low = {}
    for e in elements:
        cand = strict[e]
        low[e] = [b for b in cand if not any(b in strict[c] for c in cand)]
    return elements, low


def order_ideals(elements, low) -> list[frozenset]:
    """All order ideals; ``elements`` must be a linear extension."""
    elements = list(elements)
    out: list[frozenset] = []

    def rec(idx, cur):
        if idx == len(elements):
            out.append(frozenset(cur))
            return
        e = elements[idx]
        rec(idx + 1, cur)
        if all(b in cur for b in low[e]):
            cur.add(e)
            rec(idx + 1, cur)
            cur.remove(e)

    rec(0, set())
    return out


def ideals_Q(k: int) -> list[frozenset]:
    return order_ideals(*_Q_order(k))


def ideals_P(k: int) -> list[frozenset]:
    return order_ideals(*poset_P(k))


def is_order_ideal(I, low) -> bool:
    return all(b in I for e in I for b in low[e])


# ---------------------------------------------------------------------------
# F-polynomials: three routes

@lru_cache(maxsize=None)
def _F_rec0(k: int) -> YPoly:
    if k <= 0:
        return YPoly.const(1)
    prev = _F_rec0(k - 1)
    prev2 = _F_rec0(k - 2)
    num = prev.shift(-3) * prev.shift(3) + M_poly(0, k - 1) * prev.shift(-1) * prev.shift(1)
    return num.divide_exact(prev2)


def F_recursive(j: int, k: int) -> YPoly:
    """F_{j,k} from the three-term recursion (F_{j,-1} = F_{j,0} = 1).

    F_{j,k} is F_{0,k} with indices shifted by j, since the recursion is
    translation equivariant; the recursion is run once at j = 0.
    """
    if k < -1:
        raise ValueError("k must be >= -1")
    return _F_rec0(k).shift(j)


@lru_cache(maxsize=None)
def _F_ideal0(k: int) -> YPoly:
    elements, low = poset_P(k)
    keys = [_var_key(3 * r + s) for (r, s, t) in elements]
    elements = list(elements)
    index = {e: i for i, e in enumerate(elements)}
    low_idx = [[index[b] for b in low[e]] for e in elements]
    out: dict[int, int] = {}
    n = len(elements)
    chosen = [False] * n

    def rec(i, mono):
        if i == n:
            out[mono] = out.get(mono, 0) + 1
            return
        rec(i + 1, mono)
        if all(chosen[b] for b in low_idx[i]):
            chosen[i] = True
            rec(i + 1, mono + keys[i])
            chosen[i] = False

    rec(0, 0)
    return YPoly(out)


def F_ideal(j: int, k: int) -> YPoly:
    """Generating function of order ideals of P_k with weight y_{3r+s+j}."""
    if k < 0:
        return YPoly.const(1)
    return _F_ideal0(k).shift(j)


# ---------------------------------------------------------------------------
# alternating sign matrices

def is_asm(A) -> bool:
    k = len(A)
    for vecs in (A, list(zip(*A))):
        for v in vecs:
            if len(v) != k:
                return False
            s = 0
            for x in v:
                if x not in (-1, 0, 1):
                    return False
                s += x
                if s not in (0, 1):
                    return False
            if s != 1:
                return False
    return True


def _rows(k: int, allowed_one=None, row=None):
    """Candidate rows: entries in {-1,0,1} with prefix sums in {0,1} and total 1."""
    out = []

    def rec(i, s, cur):
        if i == k:
            if s == 1:
                out.append(tuple(cur))
            return
        for x in ((0, 1) if s == 0 else (0, -1)):
            if x == 1 and allowed_one is not None and not allowed_one(row, i):
                continue
            cur.append(x)
            rec(i + 1, s + x, cur)
            cur.pop()

    rec(0, 0, [])
    return out


def asm_enumerate(k: int, allowed_one: Callable[[int, int], bool] | None = None) -> list[tuple]:
    """All k x k ASMs (optionally only those with 1's at allowed (row, col), 0-based)."""
    if k == 0:
        return [()]
    rows_by = [_rows(k, allowed_one, r) for r in range(k)]
    out = []

    def rec(r, colsum, acc):
        if r == k:
            if all(c == 1 for c in colsum):
                out.append(tuple(acc))
            return
        for row in rows_by[r]:
            new = [c + x for c, x in zip(colsum, row)]
            if any(c not in (0, 1) for c in new):
                continue
            acc.append(row)
            rec(r + 1, new, acc)
            acc.pop()

    rec(0, [0] * k, [])
    return out


@lru_cache(maxsize=None)
def asm_list(k: int) -> tuple:
    return tuple(asm_enumerate(k))


def corner_sums(A) -> list[list[int]]:
    k = len(A)
    c = [[0] * (k + 1) for _ in range(k + 1)]
    for p in range(1, k + 1):
        for q in range(1, k + 1):
            c[p][q] = A[p - 1][q - 1] + c[p - 1][q] + c[p][q - 1] - c[p - 1][q - 1]
    return c


def _column(k: int, r: int, s: int) -> list[int]:
    lo, hi = 2 * abs(s) - k + 2, k - 2 - 2 * abs(r)
    return list(range(lo, hi + 1, 4))


def site_heights(A) -> dict:
    """Number of ideal elements in each (r, s) column of Q_k.

    Interior lattice vertex (p, q) of the k x k matrix sits over the column
    (p + q - k, q - p); the height counts how far the corner sum at that
    vertex is below its maximum min(p, q).
    """
    k = len(A)
    c = corner_sums(A)
    out = {}
    for p in range(1, k):
        for q in range(1, k):
            out[(p + q - k, q - p)] = min(p, q) - c[p][q]
    return out


def asm_to_ideal(A) -> frozenset:
    if not is_asm(A):
        raise ValueError("not an alternating sign matrix")
    k = len(A)
    out = set()
    for (r, s), h in site_heights(A).items():
        col = _column(k, r, s)
        out.update((r, s, t) for t in col[:h])
    return frozenset(out)


@lru_cache(maxsize=None)
def _ideal_to_asm_table(k: int) -> dict:
    return {asm_to_ideal(A): A for A in asm_list(k)}


def ideal_to_asm(I, k: int):
    """Inverse bijection: recover the corner sums from the column heights."""
    heights: dict = {}
    for (r, s, t) in I:
        heights[(r, s)] = heights.get((r, s), 0) + 1
    c = [[0] * (k + 1) for _ in range(k + 1)]
    for p in range(k + 1):
        c[p][k] = p
        c[k][p] = p
    for p in range(1, k):
        for q in range(1, k):
            c[p][q] = min(p, q) - heights.get((p + q - k, q - p), 0)
    A = tuple(tuple(c[p][q] - c[p - 1][q] - c[p][q - 1] + c[p - 1][q - 1] for q in range(1, k + 1))
              for p in range(1, k + 1))
    if not is_asm(A):
        raise ValueError("ideal does not correspond to an ASM")
    return A


def ones(A) -> list[tuple[int, int]]:
    """1-entries as 1-based (row, column) pairs."""
    return [(i + 1, l + 1) for i, row in enumerate(A) for l, x in enumerate(row) if x == 1]


def B0_ideal(A) -> frozenset:
    """Smallest J in J(Q_{k+1}) making I u J an ideal of P_k."""
    k = len(A)
    I = asm_to_ideal(A)
    below = _below_P(k)
    q1 = set(poset_Q(k + 1))
    J = set()
    for e in I:
        J |= below[e] & q1
    return frozenset(J)


def B0(A):
    return ideal_to_asm(B0_ideal(A), len(A) + 1)


def compatible_pairs(k: int) -> list[tuple]:
    """Pairs (A, B) in ASM(k) x ASM(k+1) whose ideals unite to an ideal of P_k."""
    _, low = poset_P(k)
    out = []
    Bs = [(B, asm_to_ideal(B)) for B in asm_list(k + 1)]
    for A in asm_list(k):
        I = asm_to_ideal(A)
        for B, J in Bs:
            if is_order_ideal(I | J, low):
                out.append((A, B))
    return out


def weight(I, j: int) -> YPoly:
    exps: dict[int, int] = {}
    for (r, s, t) in I:
        i = 3 * r + s + j
        exps[i] = exps.get(i, 0) + 1
    return YPoly.monomial(exps)


def wt(A, j: int) -> YPoly:
    return weight(asm_to_ideal(A), j)


def array_index(j: int, k: int, i: int, l: int) -> int:
    """Value j + 2i + 4l - 3k - 3 attached to entry (i, l), 1-based."""
    return j + 2 * i + 4 * l - 3 * k - 3


def index_array(j: int, k: int) -> list[list[int]]:
    return [[array_index(j, k, i, l) for l in range(1, k + 1)] for i in range(1, k + 1)]


def asm_term(A, j: int) -> YPoly:
    k = len(A)
    out = wt(A, j) * weight(B0_ideal(A), j)
    for (i, l) in ones(A):
        out = out * (1 + YPoly.var(array_index(j, k, i, l)))
    return out


def F_asm(j: int, k: int) -> YPoly:
    """Sum over ASM(k) of wt(A) wt(B0(A)) prod over 1-entries of (1 + y)."""
    if k < 1:
        return YPoly.const(1)
    total = YPoly()
    for A in asm_list(k):
        total = total + asm_term(A, j)
    return total


def avoids(A, S, j: int) -> bool:
    k = len(A)
    S = set(S)
    return all(array_index(j, k, i, l) not in S for (i, l) in ones(A))


def avoiding_asms(S, j: int, k: int, modulus: int | None = None) -> list[tuple]:
    """ASMs of size k avoiding (S, j), found by a pruned search.

    With ``modulus`` the array values are read modulo it (cyclic y's).
    """
    S = set(S) if modulus is None else {s % modulus for s in S}

    def ok(r, c):
        v = array_index(j, k, r + 1, c + 1)
        if modulus is not None:
            v %= modulus
        return v not in S

    return asm_enumerate(k, ok)


def F_restricted_avoiders(S, j: int, k: int) -> YPoly:
    """F_{j,k}|_S via the avoiding-ASM sum (valid for S of parity j + k + 1)."""
    total = YPoly()
    for A in avoiding_asms(S, j, k):
        total = total + asm_term(A, j)
    return restrict(total, S)


# ---------------------------------------------------------------------------
# numeric evaluation through the recursion, robust to vanishing values

class _EpsSeries:
    """Truncated power series in a perturbation parameter with exact coefficients."""

    __slots__ = ("c", "prec")

    def __init__(self, c, prec):
        self.c = list(c[:prec]) + [0] * max(0, prec - len(c))
        self.prec = prec

    def __add__(self, o):
        p = min(self.prec, o.prec)
        return _EpsSeries([self.c[i] + o.c[i] for i in range(p)], p)

    def __mul__(self, o):
        p = min(self.prec, o.prec)
        out = [0] * p
        for i in range(p):
            a = self.c[i]
            if a:
                for jx in range(p - i):
                    b = o.c[jx]
                    if b:
                        out[i + jx] += a * b
        return _EpsSeries(out, p)

    def order(self):
        for i, v in enumerate(self.c):
            if v:
                return i
        return self.prec

    def __truediv__(self, o):
        v = o.order()
        if v >= o.prec:
            raise _PrecisionExhausted()
        # both must vanish to order v for an exact quotient
        if any(self.c[i] for i in range(min(v, self.prec))):
            raise ArithmeticError("non-polynomial quotient in recursion")
        num = self.c[v:]
        den = o.c[v:]
        p = min(len(num), len(den))
        if p <= 0:
            raise _PrecisionExhausted()
        q = [Fraction(0)] * p
        d0 = Fraction(den[0])
        for i in range(p):
            s = num[i] - sum(q[m] * den[i - m] for m in range(max(0, i - len(den) + 1), i) if den[i - m])
            q[i] = s / d0
        return _EpsSeries(q, p)


class _PrecisionExhausted(Exception):
    pass


def F_values(y: Callable[[int], object], ks: Iterable[int], js: Iterable[int],
             period: int | None = None, max_prec: int = 256) -> dict:
    """Exact values F_{j,k}(y) computed with the recursion.

    Every y_i is perturbed to y_i + eps and the recursion runs over
    truncated series in eps; the constant term is the value.  This stays
    exact when intermediate F's vanish.  With ``period`` the y's are
    treated as periodic (y_{i+period} = y_i) and tables are kept modulo it.
    """
    ks = sorted(set(ks))
    js = list(js)
    kmax = ks[-1]
    prec = 4
    while True:
        try:
            table = _F_table(y, kmax, js, period, prec)
            return {(j, k): _const(table[k][j]) for k in ks for j in js}
        except _PrecisionExhausted:
            prec *= 2
            if prec > max_prec:
                raise ArithmeticError("perturbation precision exhausted")


def _const(s):
    if s.prec < 1:
        raise _PrecisionExhausted()
    return s.c[0]


def _F_table(y, kmax, js, period, prec):
    one = _EpsSeries([1], prec)

    def yv(i):
        return _EpsSeries([y(i), 1], prec)

    spread = 3 * kmax + 3
    if period is not None:
        idx = list(range(period))
        norm = lambda i: i % period
    else:
        lo = min(js) - spread
        hi = max(js) + spread
        idx = list(range(lo, hi + 1))
        norm = lambda i: i
    levels = {-1: {i: one for i in idx}, 0: {i: one for i in idx}}
    for k in range(0, kmax):
        prev, prev2 = levels[k], levels[k - 1]
        cur = {}
        for i in idx:
            need = [norm(i - 3), norm(i + 3), norm(i - 1), norm(i + 1)]
            if any(x not in prev for x in need) or norm(i) not in prev2:
                continue
            M = one
            for a in range(-k, k + 1):
                M = M * yv(norm(3 * a + i))
            num = prev[need[0]] * prev[need[1]] + M * prev[need[2]] * prev[need[3]]
            cur[i] = num / prev2[norm(i)]
        levels[k + 1] = cur
    out = {}
    for k in range(0, kmax + 1):
        out[k] = {j: levels[k][norm(j)] for j in js if norm(j) in levels[k]}
        missing = [j for j in js if norm(j) not in levels[k]]
        if missing:
            raise ValueError("index window too small for requested F values")
    return out
