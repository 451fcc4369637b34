from hypothesis import given, strategies as st

import pytest

from tropical_trace.catalog import catalog, corpus_matroids
from tropical_trace.matroid import (automorphism, contract_automorphism, contraction,
                                    fixed_flat_lattice, flat_lattice, psi_closure, uniform)
from tropical_trace.poset import (RankedLattice, beta, beta_interval, check_mobius_inversion,
                                  check_recursive_beta, mobius, mobius_row, mobius_via_chains,
                                  sublattice_mobius_check)
from tropical_trace.subsets import mask_of


def lattice_of(name):
    return flat_lattice(catalog(name))


def test_mobius_examples():
    L = lattice_of("uniform:2:3")
    assert mobius(L, L.bottom, L.bottom) == 1
    assert mobius(L, L.bottom, L.top) == 2
    assert mobius_via_chains(L, L.bottom, L.top) == 2
    B3 = lattice_of("boolean:3")
    assert mobius(B3, B3.bottom, B3.top) == -1
    assert mobius_via_chains(B3, B3.bottom, B3.top) == -1
    atom = B3.index(1)
    assert mobius_via_chains(B3, B3.bottom, atom) == -1


def test_mobius_errors():
    L = lattice_of("uniform:2:3")
    a, b = L.index(1), L.index(2)
    with pytest.raises(ValueError):
        mobius(L, a, b)
    with pytest.raises(ValueError):
        mobius_via_chains(L, a, a)


def test_beta_examples(u23):
    single = RankedLattice.from_poset(["E"], lambda a, b: True, lambda a: 4)
    assert beta(single) == 4
    assert beta(flat_lattice(u23)) == 1
    cyc = fixed_flat_lattice(u23, automorphism(u23, (1, 2, 0)))
    assert beta(cyc) == -2
    swap = fixed_flat_lattice(u23, automorphism(u23, (0, 2, 1)))
    assert beta(swap) == -1
    assert beta_interval(swap, swap.index(mask_of([0]))) == 1
    L = flat_lattice(u23)
    assert beta_interval(L, L.top) == u23.rk
    assert beta_interval(L, L.bottom) == beta(L)


def test_beta_of_uniform_matroids():
    # beta(U_{r,m}) = C(m-2, r-1) for loopless uniform matroids with r >= 2
    from math import comb
    for r, m in [(2, 3), (2, 4), (3, 4), (2, 5), (3, 5), (3, 6)]:
        assert beta(flat_lattice(uniform(r, m))) == comb(m - 2, r - 1)
    assert beta(lattice_of("boolean:3")) == 0


def test_identities_on_corpus():
    for M in corpus_matroids():
        L = flat_lattice(M)
        assert check_mobius_inversion(L)
        assert all(check_recursive_beta(L, G) for G in range(len(L)))


def test_recursive_beta_edge_cases(u23):
    L = flat_lattice(u23)
    assert check_recursive_beta(L, L.top)
    assert check_recursive_beta(L, L.bottom)
    assert check_recursive_beta(L, L.index(mask_of([0])))
    single = RankedLattice.from_poset(["E"], lambda a, b: True, lambda a: 2)
    assert check_mobius_inversion(single)
    assert check_recursive_beta(single, 0)


def test_sublattice_examples(u23):
    L = flat_lattice(u23)
    assert sublattice_mobius_check(L, L, lambda F: F)
    for perm, expected in (((0, 2, 1), -1), ((1, 2, 0), -2)):
        psi = automorphism(u23, perm)
        K = fixed_flat_lattice(u23, psi)
        cl = lambda F: K.index(psi_closure(u23, psi, L.labels[F]))
        assert sublattice_mobius_check(L, K, cl)
        assert beta(K) == expected


def test_fixed_interval_matches_contraction():
    # beta of the fixed interval [F, E] equals beta of Fix(M/F), for fixed F != E
    M = catalog("boolean:4")
    psi = automorphism(M, (1, 0, 2, 3))
    K = fixed_flat_lattice(M, psi)
    for F in K.labels:
        if F == M.E:
            continue
        C = contraction(M, F)
        KC = fixed_flat_lattice(C, contract_automorphism(M, psi, F))
        assert beta_interval(K, K.index(F)) == beta(KC)


# -- random lattices ---------------------------------------------------------


@st.composite
def closure_systems(draw):
    """Intersection-closed families on 4 points containing the full set,
    with an arbitrary integer rank function."""
    m = 4
    full = (1 << m) - 1
    fam = set(draw(st.lists(st.integers(0, full), max_size=8))) | {full}
    changed = True
    while changed:
        changed = False
        for a in list(fam):
            for b in list(fam):
                if a & b not in fam:
                    fam.add(a & b)
                    changed = True
    ranks = draw(st.lists(st.integers(-3, 5), min_size=len(fam), max_size=len(fam)))
    table = dict(zip(sorted(fam), ranks))
    return RankedLattice.from_closure_system(fam, table.__getitem__)


@given(closure_systems())
def test_random_lattice_identities(L):
    assert L.check_lattice()
    assert check_mobius_inversion(L)
    for G in range(len(L)):
        assert check_recursive_beta(L, G)


@given(closure_systems())
def test_random_lattice_mobius_routes(L):
    for a in range(len(L)):
        row = mobius_row(L, a)
        for b, val in row.items():
            assert val == mobius(L, a, b)
            if b != a:
                assert val == mobius_via_chains(L, a, b)
                # nontrivial intervals sum to zero
                assert sum(row[c] for c in row if L.leq(c, b)) == 0


@given(closure_systems())
def test_random_sublattice_of_itself(L):
    assert sublattice_mobius_check(L, L, lambda F: F)
