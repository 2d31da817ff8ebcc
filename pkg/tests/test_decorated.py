import pytest
from hypothesis import given, settings, strategies as st

from pentaconf.decorated import (
    CURVE,
    DEGENERATE,
    RANDOM,
    DecoratedPolygon,
    NeedsTwoStepLift,
    T_tilde,
    T_tilde2,
    decorate_randomly,
    decorated_from_json,
    decorated_to_json,
    decoration_from_curve,
    relation_residual,
    relation_sides,
    solve_decoration,
    two_triangle_ratios,
)
from pentaconf.deform import CurveNotGeneric
from pentaconf.desing import DeformationOracle
from pentaconf.polygon import random_polygon, random_polygon_in_XS
from pentaconf.projective import DegenerateError, RandomSource, apply, incident, mat_det
from pentaconf.scalar import RationalFunction
from pentaconf.suites import _curve_triangle

seeds = st.integers(0, 2**32)


def invertible(src):
    while True:
        M = src.random_matrix()
        if mat_det(M):
            return M


def transformed(D: DecoratedPolygon, M) -> DecoratedPolygon:
    return DecoratedPolygon(D.polygon.transform(M), [apply(M, l) for l in D.vdec],
                            [apply(M, p) for p in D.sdec], D.provenance, D.origin)


@given(seeds)
def test_two_triangle_identity(seed):
    src = RandomSource(seed, bound=50)
    pts = [src.random_point() for _ in range(6)]
    try:
        lhs, rhs = two_triangle_ratios(*pts)
    except (DegenerateError, ZeroDivisionError):
        return
    assert lhs == rhs


@settings(max_examples=15)
@given(seeds)
def test_curve_decorations_satisfy_relation(seed):
    T, o, i = _curve_triangle(RandomSource(seed, bound=50))
    b_star = o.decorated(1).side_decoration(i)
    T.dec["b"] = b_star
    assert relation_residual(T) == 0
    lhs, rhs = relation_sides(T)
    assert lhs == rhs
    del T.dec["b"]
    solved = solve_decoration(T, "b")
    assert solved == b_star and incident(solved, T.b)


def test_curve_decorations_incident():
    A = random_polygon(7, src=RandomSource(4))
    D = decorate_randomly(A, RandomSource(5))
    assert D.incidences_hold()
    assert D.origin == CURVE
    # decorations repeat with the monodromy
    assert D.vertex_decoration(9) == apply(A.monodromy, D.vertex_decoration(2))


def test_constant_curve_has_no_decoration():
    A = random_polygon(6, src=RandomSource(1))
    const = A.transform(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(CurveNotGeneric):
        decoration_from_curve(const, max_prec=16)


def test_rational_curve_decoration_is_tangent():
    A = random_polygon(6, src=RandomSource(2))
    t = RationalFunction.t()
    V = [(1, 2, 0)] * 6
    verts = [type(P)(tuple(c + t * v for c, v in zip(P.coords, V[0]))) for P in A.base_vertices]
    curve = type(A)(verts, A.monodromy, A.indexing, True)
    D = decoration_from_curve(curve)
    for i in range(6):
        P = A.vertex(i)
        moved = type(P)(tuple(c + v for c, v in zip(P.coords, V[0])))
        assert incident(moved, D.vertex_decoration(i))


@settings(max_examples=10)
@given(seeds, st.integers(7, 9))
def test_one_step_lift_matches_curve(seed, n):
    src = RandomSource(seed)
    o = DeformationOracle(random_polygon(n, src=src), src=src.child("V"))
    d0, d1 = o.decorated(0), o.decorated(1)
    L = T_tilde(d0)
    assert L.same_as(d1) and L.incidences_hold()
    assert T_tilde2(d0, L).same_as(T_tilde(L))


@settings(max_examples=8)
@given(seeds)
def test_one_step_lift_natural(seed):
    src = RandomSource(seed)
    D = decorate_randomly(random_polygon(7, src=src), src.child("dec"))
    M = invertible(src)
    assert T_tilde(transformed(D, M)).same_as(transformed(T_tilde(D), M))


def test_one_step_lift_refuses_degenerate_input():
    A = random_polygon_in_XS(9, [3], RandomSource(1))
    d1 = DeformationOracle(A, src=RandomSource(5)).decorated(1)
    with pytest.raises(NeedsTwoStepLift):
        T_tilde(d1)


def test_two_step_lift_on_X3_degenerate_branch():
    A = random_polygon_in_XS(9, [3], RandomSource(1))
    o = DeformationOracle(A, src=RandomSource(5))
    d0, d1, d2 = o.decorated(0), o.decorated(1), o.decorated(2)
    C = T_tilde2(d0, d1, RandomSource(1))
    assert C.provenance[("v", 3)] == DEGENERATE
    assert C.same_as(d2) and not C.random_slots()
    assert T_tilde2(d0, d1, RandomSource(2)).same_as(C)


def test_two_step_lift_on_X35_random_slot():
    A = random_polygon_in_XS(9, [3, 5], RandomSource(1))
    o = DeformationOracle(A, src=RandomSource(5))
    log = []
    C = T_tilde2(o.decorated(0), o.decorated(1), RandomSource(1), log)
    assert C.provenance[("v", 4)] == RANDOM
    assert log == [("v", 4)] and C.random_slots() == [("v", 4)]
    assert C.incidences_hold()


def test_json_round_trip():
    A = random_polygon_in_XS(9, [3], RandomSource(1))
    o = DeformationOracle(A, src=RandomSource(5))
    C = T_tilde2(o.decorated(0), o.decorated(1))
    d = decorated_to_json(C)
    back = decorated_from_json(d)
    assert back.same_as(C) and back.provenance[("v", 3)] == DEGENERATE
    assert decorated_to_json(back) == d
