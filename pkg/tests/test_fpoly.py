from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pentaconf import fpoly as fp
from pentaconf.confinement import knight_path
from pentaconf.suites import check_compatible_structure, check_corner_swap

from oracles import brute_force_asm_count, brute_force_ideals, recursion_value, triples_Q

y = fp.YPoly.var


# -- posets and ideals -----------------------------------------------------

def test_poset_sizes():
    assert [len(fp.poset_Q(k)) for k in (2, 3, 4)] == [1, 4, 10]
    assert len(fp.poset_P(2)[0]) == 5
    assert len(fp.poset_P(3)[0]) == 14
    assert len(fp.hasse_edges(2)) == 4


@pytest.mark.parametrize("k", range(1, 6))
def test_poset_Q_matches_definition(k):
    assert set(fp.poset_Q(k)) == triples_Q(k)
    assert set(fp.poset_P(k)[0]) == triples_Q(k) | triples_Q(k + 1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_ideal_counts_brute_force(k):
    assert len(fp.ideals_P(k)) == brute_force_ideals(triples_Q(k) | triples_Q(k + 1))
    P = triples_Q(k) | triples_Q(k + 1)
    assert len(fp.ideals_Q(k + 1)) == brute_force_ideals(triples_Q(k + 1), P)


def test_ideal_counts_frozen():
    assert len(fp.ideals_P(2)) == 8
    assert len(fp.ideals_Q(3)) == 7
    assert [len(fp.ideals_P(k)) for k in range(1, 5)] == [2, 8, 64, 1024]


def test_chain_ideals():
    chain = [(0, 0, t) for t in range(4)]
    low = {e: [(0, 0, e[2] - 1)] if e[2] else [] for e in chain}
    ideals = fp.order_ideals(chain, low)
    assert len(ideals) == 5
    assert all(fp.is_order_ideal(I, low) for I in ideals)


# -- F polynomials -----------------------------------------------------------

def test_small_F():
    assert fp.F_recursive(4, 0) == 1
    assert fp.F_recursive(4, -1) == 1
    assert fp.F_recursive(5, 1) == 1 + y(5)
    j = 2
    expected = ((1 + y(j - 3)) * (1 + y(j + 3))
                + y(j - 3) * y(j) * y(j + 3) * (1 + y(j - 1)) * (1 + y(j + 1)))
    F2 = fp.F_recursive(j, 2)
    assert F2 == expected and len(F2) == 8
    assert fp.F_ideal(j, 1) == 1 + y(j)
    assert fp.F_asm(j, 1) == 1 + y(j)


@pytest.mark.parametrize("k, monomials", [(1, 2), (2, 8), (3, 60), (4, 822)])
def test_monomial_counts_frozen(k, monomials):
    F = fp.F_recursive(0, k)
    assert len(F) == monomials
    assert sum(c for _, c in F.monomials()) == 2 ** (k * (k + 1) // 2)
    assert F.is_positive_polynomial()


@pytest.mark.parametrize("k", range(1, 5))
def test_three_routes(k):
    for j in (0, 1):
        R = fp.F_recursive(j, k)
        assert fp.F_ideal(j, k) == R
        assert fp.F_asm(j, k) == R


@pytest.mark.parametrize("k", range(1, 5))
def test_support_window_and_shift(k):
    F = fp.F_recursive(0, k)
    assert F.support() <= set(range(-3 * (k - 1), 3 * (k - 1) + 1))
    assert fp.F_recursive(5, k) == F.shift(5)


@settings(max_examples=25)
@given(st.data())
def test_recursion_value_oracle(data):
    vals = {}

    def yv(i):
        if i not in vals:
            vals[i] = Fraction(data.draw(st.integers(1, 50)), data.draw(st.integers(1, 50)))
        return vals[i]

    k = data.draw(st.integers(1, 4))
    assert fp.F_recursive(0, k).evaluate(yv) == recursion_value(yv, 0, k)


def test_F_values_matches_polynomial():
    yv = lambda i: Fraction(i % 5 + 1, 3) if i % 3 else -1
    got = fp.F_values(yv, [1, 2, 3, 4], [0, 1])
    for (j, k), v in got.items():
        assert v == fp.F_recursive(j, k).evaluate(yv)


def test_restrict_and_cyclic_reduce():
    assert fp.restrict(1 + y(3), {3}) == 0
    assert fp.restrict((1 + y(3)) * y(4), {3, 4}) == 0
    assert fp.restrict(1 + y(3) + y(4), {4}) == y(3)
    assert fp.cyclic_reduce(y(1) * y(11), 5) == y(1) ** 2
    assert fp.format_ypoly(1 + y(-2) * y(3) ** 2) == "1 + y[-2] y[3]^2"


def test_exact_division_guard():
    with pytest.raises(ArithmeticError):
        (1 + y(0)).divide_exact(1 + y(1))


# -- alternating sign matrices ---------------------------------------------

@pytest.mark.parametrize("k, count", [(1, 1), (2, 2), (3, 7), (4, 42)])
def test_asm_counts(k, count):
    assert brute_force_asm_count(k) == count
    assert len(fp.asm_list(k)) == count == len(fp.ideals_Q(k))


def test_asm_count_five():
    assert len(fp.asm_list(5)) == 429


def test_is_asm():
    assert fp.is_asm(((0, 1, 0), (1, -1, 1), (0, 1, 0)))
    assert not fp.is_asm(((1, 1), (0, 0)))
    assert not fp.is_asm(((0, 1, 0), (1, 0, 0), (0, 0, 0)))


@pytest.mark.parametrize("k", range(1, 5))
def test_asm_ideal_bijection(k):
    asms = fp.asm_list(k)
    assert {fp.asm_to_ideal(A) for A in asms} == set(fp.ideals_Q(k))
    assert all(fp.ideal_to_asm(fp.asm_to_ideal(A), k) == A for A in asms)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_compatible_structure(k):
    for A in fp.asm_list(k):
        assert check_compatible_structure(A) == []
        assert check_corner_swap(A) == []
    assert len(fp.compatible_pairs(k)) == len(fp.ideals_P(k))


def test_asm_term_single():
    assert fp.asm_term(((1,),), 3) == 1 + y(3)
    assert fp.B0(((1,),)) == ((0, 1), (1, 0)) or fp.is_asm(fp.B0(((1,),)))


def test_avoiders_and_forced_zero():
    # the step-4 run [-3, 1] sits on a whole row of the k = 2 array
    S = [-3, 1]
    assert fp.avoiding_asms(S, 0, 2) == []
    assert fp.restrict(fp.F_recursive(0, 2), S) == 0
    assert fp.F_restricted_avoiders([1], 0, 2) == fp.restrict(fp.F_recursive(0, 2), [1])


@pytest.mark.parametrize("k", range(1, 9))
def test_knight_paths(k):
    for l in range(-(k + 1), k + 2, 2):
        kp = knight_path(k, l)
        assert sum(kp.segments) == k
        assert fp.is_asm(kp.matrix) and all(v >= 0 for row in kp.matrix for v in row)
        assert kp.values() <= {l - 2 * k, l + kp.sigma, l + 2 * k}
        assert kp.sigma == (0 if k % 2 else kp.sigma) and kp.sigma in (-2, 0, 2)


def test_knight_path_range():
    with pytest.raises(ValueError):
        knight_path(4, 7)
    with pytest.raises(ValueError):
        knight_path(4, 2)


def test_k5_counts_and_value():
    F = fp.F_recursive(0, 5)
    assert len(F) == 19968
    assert sum(c for _, c in F.monomials()) == 2 ** 15
    yv = lambda i: Fraction(i % 7 + 2, i % 4 + 1)
    assert F.evaluate(yv) == recursion_value(yv, 0, 5)
