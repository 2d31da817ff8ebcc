"""The twelve acceptance criteria, at full scale.

Each test records one PASS/FAIL line; conftest prints them at the end of
the run (and they are printed immediately under ``-s``).
"""
import time

import pytest

from pentaconf import fpoly as fp
from pentaconf import suites

from oracles import brute_force_asm_count

RESULTS: dict[int, str] = {}

pytestmark = pytest.mark.acceptance


def record(number: int, title: str, ok: bool, detail: str, t0: float, budget: float):
    elapsed = time.time() - t0
    status = "PASS" if ok and elapsed <= budget else "FAIL"
    line = f"{status} criterion {number:>2}: {title} ({detail}; {elapsed:.1f}s, budget {budget:.0f}s)"
    RESULTS[number] = line
    print(line)
    assert ok, line
    assert elapsed <= budget, line


def failures_of(res: suites.SuiteResult) -> str:
    return "; ".join(l for l in res.lines if l.startswith("failure")) or res.status


def test_01_fpoly_three_routes():
    t0 = time.time()
    res = suites.fpoly_routes(kmax=4, js=(0, 1, 2))
    # every other j is a translate: the recursion commutes with y_i -> y_{i+1}
    shifted = all(fp.F_recursive(j, k) == fp.F_recursive(0, k).shift(j) for k in range(1, 5) for j in (-7, 5, 11))
    record(1, "recursion = order ideals = ASM sum", res.status == suites.PASS and shifted,
           "k <= 4 all routes, k = 5 recursion vs ideals", t0, 120)


def test_02_asm_bijection():
    t0 = time.time()
    counts = [brute_force_asm_count(k) for k in range(1, 5)]
    res = suites.asm_bijection(kmax=4, exhaustive=3)
    ok = res.status == suites.PASS and counts == [1, 2, 7, 42] == [len(fp.ideals_Q(k)) for k in range(1, 5)]
    record(2, "ASM(k) <-> J(Q_k) and the 2^m compatible structure", ok, f"counts {counts}", t0, 60)


def test_03_iterate_formulas():
    t0 = time.time()
    res = suites.iterate_formulas(instances=100, ns=range(7, 13), kmax=4)
    record(3, "iterate formulas reproduce geometric T^k", res.status == suites.PASS,
           f"100 polygons, n 7..12, k <= 4; {failures_of(res)}", t0, 120)


def test_04_vanishing():
    t0 = time.time()
    failures, lines = suites.vanishing_theorems(kmax=5)
    record(4, "row/column zeros and progression nonzeros", not failures, lines[0], t0, 120)


def _confinement(kind, ms):
    cases = suites.confinement_cases(kind, ms, instances=10)
    bad = [b for case in cases for b in suites._confinement_case(case)]
    return cases, bad


def test_05_step2_confinement():
    t0 = time.time()
    cases, bad = _confinement("step2", (1, 2, 3))
    record(5, "step-2 progressions confine at T^{m+2}, main = oracle, image in Y_S'", not bad,
           f"{len(cases)} instances, m 1..3, 3(m+1) < n <= 13" + (f"; {bad[:3]}" if bad else ""), t0, 600)


def test_06_step1_confinement():
    t0 = time.time()
    cases, bad = _confinement("step1", (1, 3))
    record(6, "step-1 progressions confine at T^{m+2}, main = oracle, image in Y_S'", not bad,
           f"{len(cases)} instances, m in {{1,3}}" + (f"; {bad[:3]}" if bad else ""), t0, 300)


def test_07_special_constructions():
    t0 = time.time()
    failures, lines = suites.special_constructions(instances=20)
    record(7, "t3 and t4 constructions = main = oracle", not failures, lines[0], t0, 300)


def test_08_ill_defined_witness():
    t0 = time.time()
    differs, agrees = suites.ill_defined_witness()
    record(8, "C_4 depends on the deformation, T^4 does not", differs and agrees,
           f"C_4 differs: {differs}, T^4 agrees: {agrees}", t0, 60)


def test_09_worst_case_odd_n():
    t0 = time.time()
    res = suites.worst_case_odd_n(n=(5, 7), trials=3)
    record(9, "complement of a point, n odd: F nonzero for y_0 != -1, zero at -1",
           res.status == suites.PASS, "n = 5, 7; " + failures_of(res), t0, 600)


def test_10_appendix_constructions():
    t0 = time.time()
    res = suites.appendix_constructions(instances=100)
    record(10, "straightedge constructions preserve their invariants", res.status == suites.PASS,
           "100 instances each, two auxiliary seeds; " + failures_of(res), t0, 60)


def test_11_decoration_laws():
    t0 = time.time()
    res = suites.decorated_lifts(triangles=100, pairs=100, lifts=20)
    record(11, "triangle relation, two-triangle identity, lifted maps", res.status == suites.PASS,
           "100 triangles, 100 pairs, 20 lifts; " + failures_of(res), t0, 180)


def test_12_known_failure():
    t0 = time.time()
    fx = suites.known_failure()
    record(12, "S = {3,4,6}: discrepancy between main and the oracle is reproduced",
           not fx["main_equals_oracle"], f"step {fx['step']}, main == oracle: {fx['main_equals_oracle']}", t0, 120)
