from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pentaconf import confinement as cf
from pentaconf import fpoly as fp
from pentaconf.polygon import SingularError, iterate, random_polygon, random_polygon_in_XS, x_coords, y_params
from pentaconf.projective import RandomSource

h = Fraction(1, 2)
seeds = st.integers(0, 2**32)


@given(seeds, st.integers(7, 10))
def test_iterate_formulas_first_steps(seed, n):
    A = random_polygon(n, src=RandomSource(seed))
    x, y = x_coords(A), y_params(A)
    assert [cf.iterate_x(x, y, j, 0) for j in range(1, 2 * n + 1)] == list(x)
    polys = iterate(A, 2)
    for k in (1, 2):
        xs, ys = cf.iterate_coords(A, k)
        assert xs == x_coords(polys[k]) and ys == y_params(polys[k])


def test_iterate_formula_singular_on_X3():
    A = random_polygon_in_XS(9, [3], RandomSource(2))
    x, y = x_coords(A), y_params(A)
    assert cf.singular_denominators(y, 1) == [(6, 1)]
    with pytest.raises(SingularError, match="step 1"):
        cf.iterate_x(x, y, 5, 1)
    assert cf.singular_steps(y, 4) == [1, 2]
    assert cf.first_regular_step(y, 5) == 3


def test_regular_polygon_has_no_singular_steps():
    y = y_params(random_polygon(9, src=RandomSource(1)))
    assert cf.singular_steps(y, 5) == []
    assert cf.first_regular_step(y, 5) == 1


def test_vanishing_examples():
    Z, N, U = cf.Vanishing.IDENTICALLY_ZERO, cf.Vanishing.NONZERO, cf.Vanishing.UNKNOWN
    assert cf.vanishing_analysis([-3, 1], 0, 2) is Z
    assert cf.vanishing_analysis([1], 0, 2) is N
    # step-4 runs of length 2k - 1 cover a row of the array
    for k in (2, 3, 4):
        S = fp.progression(-2 * (k - 1) + (k - 1), 2 * (k - 1) + (k - 1), 4)
        assert cf.vanishing_analysis(S, 0, k) is Z
        assert fp.restrict(fp.F_recursive(0, k), S) == 0
    assert cf.vanishing_analysis([-2, 0], 0, 2) is U
    assert cf.resolve([-2, 0], 0, 2) in (Z, N)


def test_vanishing_report_resolves_unknowns():
    rows = cf.vanishing_report([6, 10], range(0, 3), range(1, 3))
    assert {r["status"] for r in rows} <= {"zero", "nonzero", "unknown-resolved-zero", "unknown-resolved-nonzero"}
    for r in rows:
        F = fp.restrict(fp.F_recursive(r["j"], r["k"]), [6, 10])
        assert (F == 0) == (r["status"] in ("zero", "unknown-resolved-zero"))


def test_worst_case_n5():
    r = cf.worst_case_check(5, RandomSource(3), trials=3)
    assert r.ok, r.details
    # two avoiders at j = n, k = n + 1 with y cyclic of period 2n
    assert len(fp.avoiding_asms(range(2, 10, 2), 5, 6, modulus=10)) == 2


@pytest.mark.parametrize("S, n, shape, m", [
    ([3], 9, cf.Shape.STEP2, 1),
    ([3, 5], 11, cf.Shape.STEP2, 2),
    ([3, 4], 11, cf.Shape.STEP1, 2),
    ([h * 7, h * 9], 11, cf.Shape.STEP1, 2),
    ([1, 2, 3, 4, 5, 6], 7, cf.Shape.COMPLEMENT, 6),
    (range(8), 8, cf.Shape.EXCEPTIONAL, 8),
    ([1, 3, 5, 7], 8, cf.Shape.EXCEPTIONAL, 4),
    ([2, 4, 6, 8, 1], 8, cf.Shape.EXCEPTIONAL, 5),
    ([3, 4, 6], 12, cf.Shape.GENERAL, 3),
    ([11, 1], 12, cf.Shape.STEP2, 2),
])
def test_classify(S, n, shape, m):
    st_ = cf.classify(S, n)
    assert st_.classification is shape and st_.m == m


def test_predictions():
    for n in (7, 9, 12):
        p = cf.predict_confinement(cf.classify([4], n))
        assert (p.kind, p.first_regular_step, p.image_type) == ("confined", 3, {4})
    p = cf.predict_confinement(cf.classify([3, 5], 11))
    assert p.first_regular_step == 4 and p.image_type == {Fraction(7, 2), Fraction(9, 2)}
    p = cf.predict_confinement(cf.classify([3, 4], 11))
    assert p.first_regular_step == 4 and p.image_type == {Fraction(5, 2), Fraction(9, 2)}
    assert cf.predict_confinement(cf.classify([3, 4, 7, 8], 12)).kind == "experimental"
    assert cf.predict_confinement(cf.classify([1, 3, 5, 7], 8)).kind == "exceptional"
    p = cf.predict_confinement(cf.classify([1, 2, 3, 4, 5, 6], 7))
    assert (p.kind, p.first_regular_step) == ("bounded", 8)
    with pytest.raises(cf.OutOfTheoremRange):
        cf.predict_confinement(cf.classify([3, 5, 7], 12))


def test_experimental_type_observed_step():
    A = random_polygon_in_XS(12, [3, 4, 7, 8], RandomSource(0))
    assert cf.observed_first_regular_step(A, 8) == 5


@given(st.sampled_from(["single", "step1", "step2", "complement", "set", "none"]),
       st.integers(-20, 20), st.integers(1, 5), st.booleans(),
       st.lists(st.integers(1, 12), min_size=1, max_size=5))
def test_type_spec_round_trip(kind, i, m, half, els):
    i = Fraction(i) + (h if half else 0)
    spec = {"single": cf.TypeSpec("single", i), "complement": cf.TypeSpec("complement", i),
            "step1": cf.TypeSpec("step1", i, m), "step2": cf.TypeSpec("step2", i, m),
            "set": cf.TypeSpec("set", elements=tuple(Fraction(e) for e in sorted(set(els)))),
            "none": cf.TypeSpec("none")}[kind]
    assert cf.parse_type_spec(str(spec)) == spec
    assert str(cf.parse_type_spec(str(spec))) == str(spec)


def test_type_spec_members():
    assert cf.parse_type_spec("step2:i=4,m=2").members(9) == [3, 5]
    assert cf.parse_type_spec("step1:i=4,m=2").members(9) == [Fraction(7, 2), Fraction(9, 2)]
    assert cf.parse_type_spec("complement:i=7").members(7) == list(range(1, 7))
    assert cf.parse_type_spec("set:{3, 4, 6}").members(12) == [3, 4, 6]
    for bad in ("step2:i=4", "cone:i=1", "step1:m=2", "set:{}", "step2:i=1,m=0", "single:4"):
        with pytest.raises(ValueError):
            cf.parse_type_spec(bad)
