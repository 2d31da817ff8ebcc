"""Named verification suites.

Each suite checks one family of invariants on seeded instances and returns
a ``SuiteResult``.  The ``conjecture-experiments`` suite only observes and
never fails.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

from . import confinement as cf
from . import fpoly as fp
from .decorated import T_tilde, T_tilde2, Triangle, relation_residual, solve_decoration, two_triangle_ratios
from .deform import random_direction
from .desing import DeformationOracle, main, t3_on_Xi, t4_on_X35
from .polygon import (
    in_Y,
    iterate,
    random_polygon,
    random_polygon_in_XS,
    singularity_type,
    x_coords,
    y_params,
)
from .projective import (
    DegenerateError,
    RandomSource,
    cross_ratio,
    join,
    projective_transformation,
    projective_transformation_b,
    projective_transformation_construction,
    triple_conjugate,
    triple_conjugate_construction,
    triple_ratio,
)

PASS, FAIL, REPORT = "PASS", "FAIL", "REPORT"

# largest m for which seed-independence and main == oracle are asserted
ASSERTED_M = 3


@dataclass
class SuiteResult:
    name: str
    status: str
    lines: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def text(self) -> str:
        head = f"{self.name}: {self.status} ({self.seconds:.1f}s)"
        if self.counts:
            head += " " + " ".join(f"{k}={v}" for k, v in self.counts.items())
        return "\n".join([head] + ["  " + l for l in self.lines])


def _fan_out(fn: Callable, items: list, jobs: int = 1) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _finish(name, failures, lines, counts, t0, rows=None):
    lines = list(lines) + [f"failure: {f}" for f in failures[:20]]
    return SuiteResult(name, FAIL if failures else PASS, lines, counts, rows or [], time.time() - t0)


# ---------------------------------------------------------------------------
# F-polynomials and alternating sign matrices

def fpoly_routes(kmax: int = 4, js=(0, 1, 2), **_) -> SuiteResult:
    """Recursion = order ideals = ASM sum; the first two also at kmax + 1."""
    t0 = time.time()
    failures, lines = [], []
    terms = {}
    for k in range(1, kmax + 2):
        n_ideals = len(fp.ideals_P(k))
        for j in js:
            R, I = fp.F_recursive(j, k), fp.F_ideal(j, k)
            if R != I:
                failures.append(f"recursive != ideal at j={j}, k={k}")
            if k <= kmax and fp.F_asm(j, k) != R:
                failures.append(f"asm != recursive at j={j}, k={k}")
            if sum(c for _, c in R.monomials()) != n_ideals:
                failures.append(f"coefficient sum != |J(P_{k})| at j={j}, k={k}")
        terms[k] = len(fp.F_recursive(0, k))
        lines.append(f"k={k}: {terms[k]} monomials, |J(P_k)| = {n_ideals}"
                     + ("" if k <= kmax else " (asm route skipped)"))
    return _finish("fpoly-routes", failures, lines, {"kmax": kmax, "checked": len(js) * (kmax + 1)}, t0)


def check_compatible_structure(A) -> list[str]:
    """The 2^m compatible matrices of A and their position above B0(A)."""
    k = len(A)
    problems = []
    I = fp.asm_to_ideal(A)
    _, low = fp.poset_P(k)
    Js = [fp.asm_to_ideal(B) for B in fp.asm_list(k + 1)]
    compat = [J for J in Js if fp.is_order_ideal(I | J, low)]
    m = len(fp.ones(A))
    if len(compat) != 2 ** m:
        problems.append(f"{len(compat)} compatible matrices, expected 2^{m}")
        return problems
    J0 = fp.B0_ideal(A)
    if J0 not in compat or any(not J0 <= J for J in compat):
        problems.append("B0 is not the least compatible ideal")
        return problems
    extra = set().union(*compat) - J0
    if len(extra) != m:
        problems.append(f"{len(extra)} elements above J0, expected {m}")
    expected_rs = sorted((i + l - k - 1, l - i) for i, l in fp.ones(A))
    if sorted((r, s) for r, s, _ in extra) != expected_rs:
        problems.append("element positions do not match the 1-entries")
    subsets = {frozenset(J - J0) for J in compat}
    if len(subsets) != 2 ** m:
        problems.append("compatible ideals are not all subsets of the extra elements")
    return problems


def check_corner_swap(A) -> list[str]:
    """Swapping corner 1's moves the ideals by one element per admissible (r, s)."""
    k = len(A)
    if not (A[0][0] == 1 and A[k - 1][k - 1] == 1):
        return []
    Ap = [list(r) for r in A]
    Ap[0][0] = Ap[k - 1][k - 1] = 0
    Ap[0][k - 1] = Ap[k - 1][0] = 1
    Ap = tuple(tuple(r) for r in Ap)
    problems = []
    I, Ip = fp.asm_to_ideal(A), fp.asm_to_ideal(Ap)
    want = sorted((r, s) for r in range(-k, k + 1) for s in range(-k, k + 1)
                  if abs(r) + abs(s) <= k - 2 and (r + s - k) % 2 == 0)
    if not I <= Ip or sorted((r, s) for r, s, _ in Ip - I) != want:
        problems.append("ideal difference in Q_k")
    J, Jp = fp.B0_ideal(A), fp.B0_ideal(Ap)
    want = sorted((r, s) for r in range(-k, k + 1) for s in range(-k, k + 1)
                  if abs(r) + abs(s) <= k - 1 and (r + s - k - 1) % 2 == 0 and abs(s) != k - 1)
    if not J <= Jp or sorted((r, s) for r, s, _ in Jp - J) != want:
        problems.append("ideal difference in Q_{k+1}")
    return problems


def asm_bijection(kmax: int = 4, exhaustive: int = 3, **_) -> SuiteResult:
    t0 = time.time()
    failures, lines = [], []
    for k in range(1, kmax + 1):
        asms = fp.asm_list(k)
        ideals = fp.ideals_Q(k)
        images = {fp.asm_to_ideal(A) for A in asms}
        ok = len(asms) == len(ideals) and images == set(ideals)
        ok = ok and all(fp.ideal_to_asm(fp.asm_to_ideal(A), k) == A for A in asms)
        if not ok:
            failures.append(f"ASM({k}) -> J(Q_{k}) is not a bijection")
        lines.append(f"k={k}: |ASM| = {len(asms)}, |J(Q_k)| = {len(ideals)}")
        if k <= exhaustive:
            for A in asms:
                failures.extend(f"k={k} {A}: {p}" for p in check_compatible_structure(A) + check_corner_swap(A))
            pairs = len(fp.compatible_pairs(k))
            if pairs != len(fp.ideals_P(k)):
                failures.append(f"compatible pairs {pairs} != |J(P_{k})|")
            lines.append(f"k={k}: {pairs} compatible pairs = |J(P_k)|, 2^m structure checked")
    return _finish("asm-bijection", failures, lines, {"kmax": kmax}, t0)


# ---------------------------------------------------------------------------
# iterate formulas

def _iterate_case(args):
    seed, n, kmax = args
    A = random_polygon(n, src=RandomSource(seed, stream=f"iter{n}"))
    its = iterate(A, kmax)
    bad = []
    for k in range(1, kmax + 1):
        xs, ys = cf.iterate_coords(A, k)
        if xs != x_coords(its[k]) or ys != y_params(its[k]):
            bad.append(f"seed={seed} n={n} k={k}")
    return bad


def iterate_formulas(instances: int = 100, ns=range(7, 13), kmax: int = 4, seed: int = 0,
                     jobs: int = 1, **_) -> SuiteResult:
    t0 = time.time()
    ns = list(ns)
    cases = [(seed + t, ns[t % len(ns)], kmax) for t in range(instances)]
    failures = [b for res in _fan_out(_iterate_case, cases, jobs) for b in res]
    return _finish("iterate-formulas", failures,
                   [f"{instances} polygons, n in {ns[0]}..{ns[-1]}, k <= {kmax}: x and y agree with geometry"],
                   {"instances": instances}, t0)


# ---------------------------------------------------------------------------
# vanishing and confinement

def _nonzero_on(k: int, S, src: RandomSource) -> bool:
    """F_{0,k}|_S is not the zero polynomial.

    A nonzero value at random y (with y_i = -1 on S) proves it; otherwise
    fall back to the explicit restriction.
    """
    S = set(S)
    vals = {}

    def y(i):
        if i in S:
            return -1
        if i not in vals:
            vals[i] = Fraction(src.randint(1, 10**6), src.randint(1, 10**6))
        return vals[i]

    if fp.F_values(y, [k], [0])[(0, k)] != 0:
        return True
    return bool(fp.restrict(fp.F_recursive(0, k), S))


def vanishing_theorems(kmax: int = 5, seed: int = 0) -> tuple[list, list]:
    """Row/column zeros and progression nonzeros."""
    failures, lines = [], []
    zeros = nonzeros = 0
    src = RandomSource(seed, stream="vanishing")
    for k in range(1, kmax + 1):
        F = fp.F_recursive(0, k)
        support = F.support()
        # step-4 runs [l-2(k-1), l+2(k-1)] and step-2 runs [2l-(k-1), 2l+(k-1)] force zero
        forced = []
        for l in range(-(k - 1), k, 2):
            forced.append(fp.progression(l - 2 * (k - 1), l + 2 * (k - 1), 4))
            forced.append(fp.progression(2 * l - (k - 1), 2 * l + (k - 1), 2))
        for vec in forced:
            if fp.restrict(F, vec):
                failures.append(f"k={k}: run {vec} does not vanish")
            zeros += 1
        # step-2 and step-4 progressions shorter than k, parity of k + 1, give nonzero
        for size in range(1, k):
            for step in (2, 4):
                for start in range(-3 * k, 3 * k + 1):
                    if (start - k - 1) % 2:
                        continue
                    S = fp.progression(start, start + step * (size - 1), step)
                    if not set(S) & support:
                        continue
                    if not _nonzero_on(k, S, src):
                        failures.append(f"k={k}: progression {S} vanishes")
                    nonzeros += 1
    lines.append(f"k <= {kmax}: {zeros} forced zeros, {nonzeros} progression nonvanishings")
    return failures, lines


def _confinement_case(args):
    kind, m, n, seed = args
    spec = cf.parse_type_spec(f"{kind}:i=4,m={m}")
    src = RandomSource(seed, stream=f"conf-{kind}-{m}-{n}")
    A = random_polygon_in_XS(n, spec.members(n), src)
    pred = cf.predict_confinement(cf.classify(singularity_type(A), n))
    steps = cf.singular_steps(y_params(A), m + 2)
    bad = []
    if steps != list(range(1, m + 2)):
        bad.append(f"{kind} m={m} n={n} seed={seed}: singular steps {steps}")
    E = main(A, m + 2, seed=seed)
    O = DeformationOracle(A, src=src.child("direction")).iterate(m + 2)
    if not E.same_as(O, sides=True):
        bad.append(f"{kind} m={m} n={n} seed={seed}: main != oracle")
    if not all(in_Y(E, j) for j in pred.image_type):
        bad.append(f"{kind} m={m} n={n} seed={seed}: image not in Y_S'")
    if m <= ASSERTED_M and not main(A, m + 2, seed=seed + 1000).same_as(E, sides=True):
        bad.append(f"{kind} m={m} n={n} seed={seed}: main depends on the seed")
    return bad


def theorem_range(m: int, nmax: int = 13) -> list[int]:
    """n with 1 <= m < n/3 - 1, up to nmax."""
    return [n for n in range(5, nmax + 1) if 3 * (m + 1) < n]


def confinement_cases(kind: str, ms, instances: int, nmax: int = 13, seed: int = 0) -> list:
    return [(kind, m, n, seed + t) for m in ms for n in theorem_range(m, nmax) for t in range(instances)]


def special_constructions(instances: int = 20, seed: int = 0) -> tuple[list, list]:
    """t3 = main = oracle on X_3 and t4 (with the closed-form e's) = main = oracle on X_{3,5}."""
    failures = []
    for t in range(instances):
        n = (8, 9, 10)[t % 3]
        src = RandomSource(seed + t, stream="special3")
        A = random_polygon_in_XS(n, [3], src)
        D = t3_on_Xi(A)
        O = DeformationOracle(A, src=src.child("V")).iterate(3)
        if not (D.same_as(O, sides=True) and main(A, 3, seed=t).same_as(D, sides=True)):
            failures.append(f"X_3 instance {t}: t3/main/oracle disagree")
        if not in_Y(D, 3):
            failures.append(f"X_3 instance {t}: output not in Y_3")
    for t in range(instances):
        n = (9, 10, 11)[t % 3]
        src = RandomSource(seed + t, stream="special35")
        A = random_polygon_in_XS(n, [3, 5], src)
        E, extras = t4_on_X35(A)
        O = DeformationOracle(A, src=src.child("V")).iterate(4)
        if not (E.same_as(O, sides=True) and main(A, 4, seed=t).same_as(E, sides=True)):
            failures.append(f"X_35 instance {t}: t4/main/oracle disagree")
        h = Fraction(1, 2)
        if O.side(3 + h) != extras["e3.5"] or O.side(4 + h) != extras["e4.5"]:
            failures.append(f"X_35 instance {t}: closed forms for e_3.5, e_4.5 differ from the oracle")
    return failures, [f"{instances} X_3 and {instances} X_35 instances: constructions = main = oracle"]


def ill_defined_witness(seed: int = 0, n: int = 9) -> tuple[bool, bool]:
    """(C_4 differs between two directions, final T^4 agrees) on one X_{3,5} instance."""
    src = RandomSource(seed, stream="witness")
    A = random_polygon_in_XS(n, [3, 5], src)
    o1 = DeformationOracle(A, src=src.child("V1"))
    o2 = DeformationOracle(A, src=src.child("V2"))
    differs = o1.iterate(2).vertex(4) != o2.iterate(2).vertex(4)
    agrees = o1.iterate(4).same_as(o2.iterate(4), sides=True)
    return differs, agrees


def known_failure(seed: int = 0, n: int = 12) -> dict:
    """S = {3,4,6}: main against the oracle and against a second seed."""
    src = RandomSource(seed, stream="fixture346")
    A = random_polygon_in_XS(n, [3, 4, 6], src)
    k = cf.observed_first_regular_step(A, 8)
    O = DeformationOracle(A, src=src.child("V")).iterate(k)
    E1 = main(A, k, seed=seed)
    E2 = main(A, k, seed=seed + 1)
    return {"step": k, "main_equals_oracle": E1.same_as(O, sides=True),
            "seed_independent": E1.same_as(E2, sides=True)}


def confinement_theorems(instances: int = 2, nmax: int = 13, seed: int = 0, jobs: int = 1,
                         special: int = 5, **_) -> SuiteResult:
    t0 = time.time()
    failures, lines = vanishing_theorems(5)
    cases = (confinement_cases("step2", (1, 2, 3), instances, nmax, seed)
             + confinement_cases("step1", (1, 3), instances, nmax, seed))
    failures += [b for res in _fan_out(_confinement_case, cases, jobs) for b in res]
    lines.append(f"{len(cases)} progression instances: singular through m+1, main = oracle, image in Y_S'")
    f2, l2 = special_constructions(special, seed)
    failures += f2
    lines += l2
    differs, agrees = ill_defined_witness(seed)
    if not (differs and agrees):
        failures.append("X_35 C_4 witness not reproduced")
    lines.append(f"X_35 C_4 depends on the direction: {differs}; T^4 agrees: {agrees}")
    fx = known_failure(seed)
    if fx["main_equals_oracle"]:
        failures.append("S={3,4,6}: expected discrepancy not reproduced")
    lines.append(f"known failure S={{3,4,6}} at step {fx['step']}: main == oracle: "
                 f"{str(fx['main_equals_oracle']).lower()}")
    return _finish("confinement-theorems", failures, lines, {"instances": len(cases)}, t0)


# ---------------------------------------------------------------------------
# appendix constructions

def _random_on(src, l):
    return src.random_point_on(l)


def appendix_constructions(instances: int = 100, seed: int = 0, **_) -> SuiteResult:
    t0 = time.time()
    failures = []
    src = RandomSource(seed, bound=50, stream="appendix")
    s1, s2 = RandomSource(seed + 1, stream="aux"), RandomSource(seed + 2, stream="aux")
    for t in range(instances):
        try:
            l = src.random_line()
            P = [_random_on(src, l) for _ in range(5)]
            Q = triple_conjugate(*P)
            if triple_ratio(*P, Q, supports=(l, l, l)) != -1:
                failures.append(f"{t}: triple conjugate ratio != -1")
            if not (triple_conjugate_construction(*P, s1) == Q == triple_conjugate_construction(*P, s2)):
                failures.append(f"{t}: triple conjugate construction depends on choices")

            l2 = src.random_line()
            A, B, C, D = (_random_on(src, l) for _ in range(4))
            A2, B2, C2 = (_random_on(src, l2) for _ in range(3))
            D2 = projective_transformation(A, B, C, D, A2, B2, C2)
            if cross_ratio(A, B, C, D) != cross_ratio(A2, B2, C2, D2):
                failures.append(f"{t}: cross ratio not preserved")
            if not (projective_transformation_construction(A, B, C, D, A2, B2, C2, s1) == D2
                    == projective_transformation_construction(A, B, C, D, A2, B2, C2, s2)):
                failures.append(f"{t}: projective transformation construction depends on choices")

            def sextuple():
                X, Y, Z = src.random_point(), src.random_point(), src.random_point()
                XY, YZ, ZX = join(X, Y), join(Y, Z), join(Z, X)
                return X, _random_on(src, XY), Y, _random_on(src, YZ), Z, _random_on(src, ZX)
            A, B, C, D, E, F = sextuple()
            A2, B2, C2, D2, E2, _ = sextuple()
            F2 = projective_transformation_b(A, B, C, D, E, F, A2, B2, C2, D2, E2)
            if triple_ratio(A, B, C, D, E, F) != triple_ratio(A2, B2, C2, D2, E2, F2):
                failures.append(f"{t}: triple ratio not preserved")
            if not (projective_transformation_b(A, B, C, D, E, F, A2, B2, C2, D2, E2, s1) == F2
                    == projective_transformation_b(A, B, C, D, E, F, A2, B2, C2, D2, E2, s2)):
                failures.append(f"{t}: second transformation construction depends on choices")
        except DegenerateError as e:
            failures.append(f"{t}: unexpected degeneracy {e}")
    return _finish("appendix-constructions", failures,
                   [f"{instances} instances of each construction, two auxiliary seeds"],
                   {"instances": instances}, t0)


# ---------------------------------------------------------------------------
# decorations

def _curve_triangle(src: RandomSource):
    """A triangle with decorations induced by a random linear curve."""
    A = random_polygon(5, src=src)
    V = random_direction(A, src)
    o = DeformationOracle(A, V)
    dA = o.decorated(0)
    i = 2
    P = dA.polygon
    return Triangle(P.vertex(i - 1), P.vertex(i), P.vertex(i + 1), P.side(i + Fraction(1, 2)),
                    join(P.vertex(i - 1), P.vertex(i + 1)), P.side(i - Fraction(1, 2)),
                    {"A": dA.vertex_decoration(i - 1), "B": dA.vertex_decoration(i),
                     "C": dA.vertex_decoration(i + 1), "a": dA.side_decoration(i + Fraction(1, 2)),
                     "c": dA.side_decoration(i - Fraction(1, 2))}), o, i


def decorated_lifts(triangles: int = 100, pairs: int = 100, lifts: int = 20, seed: int = 0, **_) -> SuiteResult:
    t0 = time.time()
    failures, lines = [], []
    src = RandomSource(seed, bound=50, stream="decorated")
    for t in range(triangles):
        T, o, i = _curve_triangle(src.child(f"tri{t}"))
        # the diagonal's decoration comes from the pushed-forward curve
        b_star = o.decorated(1).side_decoration(i)
        T.dec["b"] = b_star
        if relation_residual(T) != 0:
            failures.append(f"triangle {t}: relation fails on curve decorations")
        del T.dec["b"]
        if solve_decoration(T, "b") != b_star:
            failures.append(f"triangle {t}: solving b* does not recover the curve decoration")
    lines.append(f"{triangles} curve-decorated triangles satisfy the relation")
    for t in range(pairs):
        pts = [src.random_point() for _ in range(6)]
        try:
            lhs, rhs = two_triangle_ratios(*pts)
        except (DegenerateError, ZeroDivisionError):
            continue
        if lhs != rhs:
            failures.append(f"pair {t}: two-triangle identity fails")
    lines.append(f"{pairs} triangle pairs satisfy the two-triangle identity")
    for t in range(lifts):
        n = 7 + t % 4
        s = src.child(f"lift{t}")
        A = random_polygon(n, src=s) if t % 2 == 0 else random_polygon_in_XS(n, [3], s)
        o = DeformationOracle(A, src=s.child("V"))
        d0, d1, d2 = o.decorated(0), o.decorated(1), o.decorated(2)
        if t % 2 == 0 and not T_tilde(d0).same_as(d1):
            failures.append(f"lift {t}: one-step lift differs from the curve")
        C = T_tilde2(d0, d1, s.child("T2"))
        if C.random_slots() or not C.same_as(d2):
            failures.append(f"lift {t}: two-step lift differs from the curve")
        if not C.incidences_hold():
            failures.append(f"lift {t}: decoration incidence broken")
    lines.append(f"{lifts} one- and two-step lifts match the curve pushforward")
    return _finish("decorated-lifts", failures, lines, {"triangles": triangles, "pairs": pairs, "lifts": lifts}, t0)


# ---------------------------------------------------------------------------
# worst case and experiments

def worst_case_odd_n(n=5, trials: int = 3, seed: int = 0, **_) -> SuiteResult:
    t0 = time.time()
    ns = [n] if isinstance(n, int) else list(n)
    failures, lines = [], []
    for m in ns:
        r = cf.worst_case_check(m, RandomSource(seed, stream=f"worst{m}"), trials=trials)
        if not r.ok:
            failures.extend(f"n={m}: {d}" for d in r.details)
        lines.append(f"n={m}: {r.checked} values of F on k in {{{m}, {m + 1}}} checked by two routes")
    return _finish("worst-case-odd-n", failures, lines, {"n": ",".join(map(str, ns))}, t0)


def _rotation_classes(n: int, sizes) -> list[tuple]:
    seen, out = set(), []
    for size in sizes:
        for S in combinations(range(1, n + 1), size):
            key = min(tuple(sorted((s + r - 1) % n + 1 for s in S)) for r in range(n))
            if key not in seen:
                seen.add(key)
                out.append(key)
    return out


def _experiment(args):
    n, S, seed, kmax = args
    row = {"n": n, "S": "{" + ",".join(map(str, S)) + "}"}
    st = cf.classify(S, n)
    row["classification"] = st.classification.value
    try:
        A = random_polygon_in_XS(n, S, RandomSource(seed, stream=f"exp{S}"))
    except DegenerateError as e:
        row.update(observed="not realized", note=str(e))
        return row
    k = cf.observed_first_regular_step(A, kmax)
    row["observed"] = "none" if k is None else k
    row["lasts"] = "" if k is None else k - 1
    row["within_n"] = "" if k is None else k - 1 <= n
    return row


def conjecture_experiments(n: int = 8, sizes=(1, 2, 3), seed: int = 0, kmax: int | None = None,
                           jobs: int = 1, **_) -> SuiteResult:
    """Observed singularity length per type (denominator diagnosis); never fails."""
    t0 = time.time()
    kmax = kmax or n + 2
    types = _rotation_classes(n, sizes)
    if n % 2 == 0:
        types.append(tuple(range(1, n, 2)))
    rows = _fan_out(_experiment, [(n, S, seed, kmax) for S in types], jobs)
    lines = [f"{'S':<14} {'class':<28} first regular step"]
    for r in rows:
        lines.append(f"{r['S']:<14} {r['classification']:<28} {r['observed']}")
    return SuiteResult("conjecture-experiments", REPORT, lines, {"n": n, "types": len(rows)}, rows,
                       time.time() - t0)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "fpoly-routes": fpoly_routes,
    "asm-bijection": asm_bijection,
    "iterate-formulas": iterate_formulas,
    "confinement-theorems": confinement_theorems,
    "appendix-constructions": appendix_constructions,
    "decorated-lifts": decorated_lifts,
    "worst-case-odd-n": worst_case_odd_n,
    "conjecture-experiments": conjecture_experiments,
}


def run_suite(name: str, **opts) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](**opts)
