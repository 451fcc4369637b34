from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropical_trace.catalog import catalog, corpus_matroids
from tropical_trace.errors import ConsistencyError
from tropical_trace.fan import (PLFunction, WeightedFan, balancing_check, degree, dehomogenize,
                                divisor, eval_pl, gap_sequence, hyperplane_section,
                                linearity_guard, matroid_fan)
from tropical_trace.matroid import generic_chain, uniform
from tropical_trace.subsets import mask_of, popcount

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_dehomogenize():
    assert dehomogenize(0b111, 3) == (0, 0)
    assert dehomogenize(mask_of([1]), 3) == (1, 0)
    assert dehomogenize(mask_of([0]), 3) == (-1, -1)
    assert dehomogenize(mask_of([0, 2]), 3) == (-1, 0)


def test_eval_pl_examples():
    f = PLFunction(4, lambda S: 3 * popcount(S) if S != 0b1111 else 0)
    for S in range(1, 15):
        assert eval_pl(f, dehomogenize(S, 4)) == f.value(S)
    assert eval_pl(f, (0, 0, 0)) == 0
    g1 = generic_chain(uniform(1, 3), uniform(2, 3)).functions[0]
    assert eval_pl(g1, (1, 1)) == -1


def test_eval_pl_descends_modulo_ones():
    # a function with f(E) != 0: values of at() are what the point sees
    f = PLFunction(3, lambda S: 5 if S == 0b111 else popcount(S))
    assert eval_pl(f, dehomogenize(mask_of([0]), 3)) == 1 - 5
    assert eval_pl(f, dehomogenize(mask_of([1]), 3)) == 1


@given(st.lists(rationals, min_size=3, max_size=3), st.fractions(min_value=0, max_value=9).filter(bool))
def test_eval_pl_positively_homogeneous(x, lam):
    f = PLFunction(4, lambda S: (S * 7919) % 11 - 5)
    assert eval_pl(f, [lam * v for v in x]) == lam * eval_pl(f, x)


def test_matroid_fan_examples(u23):
    X = matroid_fan(u23)
    assert X.dim == 1 and sorted(X.weights) == [(1,), (2,), (4,)]
    assert set(X.weights.values()) == {1}
    point = matroid_fan(uniform(1, 4))
    assert point.dim == 0 and point.weights == {(): 1}
    assert len(matroid_fan(uniform(3, 3))) == 6


def test_balancing():
    for M in corpus_matroids():
        assert balancing_check(matroid_fan(M)) == (True, None)
    bad = WeightedFan(3, 1, {(1,): 1, (2,): 1, (4,): -1})
    ok, tau = balancing_check(bad)
    assert not ok and tau == ()


def test_divisor_hyperplane_u23(u23):
    g1 = generic_chain(uniform(1, 3), u23).functions[0]
    Y = divisor(g1, matroid_fan(u23))
    assert Y.weights == {(): 1}
    assert degree(Y) == 1


def test_divisor_of_linear_function_vanishes():
    M = catalog("boolean:4")
    # a linear function on R^E: S -> sum of weights of its elements
    w = [3, -1, 4, 2]
    f = PLFunction(4, lambda S: sum(w[i] for i in range(4) if (S >> i) & 1))
    assert len(divisor(f, matroid_fan(M))) == 0


def test_divisor_scales_with_weights():
    M = catalog("uniform:3:4")
    g = generic_chain(uniform(1, 4), M).functions[0]
    X = matroid_fan(M)
    Y = divisor(g, X)
    Y3 = divisor(g, X.scaled(3))
    assert Y3.weights == {c: 3 * w for c, w in Y.weights.items()}


def test_divisor_rejects_unbalanced():
    bad = WeightedFan(3, 1, {(1,): 1, (2,): 1})
    f = PLFunction(3, lambda S: 0)
    with pytest.raises(ConsistencyError, match="not balanced"):
        divisor(f, bad)


def test_degree():
    assert degree(matroid_fan(uniform(1, 5))) == 1
    assert degree(WeightedFan(3, 0, {})) == 0
    with pytest.raises(ValueError):
        degree(matroid_fan(uniform(2, 3)))


def test_linearity_guard():
    f = PLFunction(4, lambda S: (S * 31) % 7)
    for chain in matroid_fan(uniform(4, 4)).facets():
        assert linearity_guard(f, chain)
    # v_{1} and v_{2} span a cone cut by the wall x_1 = x_2
    mx = PLFunction(3, lambda S: 1 if S & 0b110 else 0)
    assert not linearity_guard(mx, (mask_of([1]), mask_of([2])))


def test_divisor_rejects_non_linear_pullback():
    # a permutation that is not an automorphism gives a pullback that bends inside a facet
    from tropical_trace.intersection import Pullback
    from tropical_trace.matroid import MatroidAutomorphism

    M = catalog("graphic:K4")
    f = Pullback(M, MatroidAutomorphism((1, 0, 2, 4, 3, 5)), 1)
    with pytest.raises(ConsistencyError, match="not facet-linear"):
        divisor(f, matroid_fan(M))


def test_gap_sequence():
    M = catalog("uniform:3:4")
    flag = matroid_fan(M).facets()[0]
    assert gap_sequence(flag, M) == (0, 0, 0)
    assert gap_sequence((), M) == (2,)
    assert gap_sequence((mask_of([1]),), M) == (1, 0)
    with pytest.raises(ValueError):
        gap_sequence((mask_of([1, 2, 3]),), M)


def test_gap_sum_property():
    for M in corpus_matroids():
        for chain in matroid_fan(M).facets():
            for drop in range(len(chain) + 1):
                sub = chain[:drop]
                assert sum(gap_sequence(sub, M)) + len(sub) == M.n


def test_hyperplane_sections():
    for M in corpus_matroids():
        for i in range(M.n + 1):
            X, T = hyperplane_section(M, i)
            assert X.weights == T.weights


def test_dump_is_stable(u23):
    assert matroid_fan(u23).dump() == "[0]\t1\n[1]\t1\n[2]\t1"


@given(st.lists(rationals, min_size=2, max_size=2))
def test_hyperplane_function_is_median(x):
    # g'_1 for U_{1,3} < U_{2,3} is -1 on sets of rank 2 and 0 on singletons,
    # i.e. minus the middle coordinate of (0, x_1, x_2)
    g1 = generic_chain(uniform(1, 3), uniform(2, 3)).functions[0]
    y = sorted([Fraction(0)] + list(x))
    assert eval_pl(g1, x) == -y[1]
