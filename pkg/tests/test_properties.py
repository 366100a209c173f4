from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    betti_by_brute_force,
    f_vector_by_enumeration,
    invariant_factors_by_minors,
    rank_over_q,
    reduced_betti_over_q,
)
from polynerve.betti import bigraded_betti
from polynerve.buchstaber import SubtorusLattice, integer_kernel
from polynerve.complex import SimplicialComplex, f_polynomial
from polynerve.homology import reduced_homology, smith_normal_form
from polynerve.invariants import link_derivative_check
from polynerve.poly import Poly


@st.composite
def complexes(draw, max_m=6):
    m = draw(st.integers(1, max_m))
    gens = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=1, max_size=6))
    return SimplicialComplex(m, gens)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(complexes())
def test_f_polynomial_methods_agree(K):
    assert f_polynomial(K) == f_polynomial(K, method="enumerate")
    assert list(f_polynomial(K)) == f_vector_by_enumeration(K.maximal)


@given(complexes())
def test_link_derivatives(K):
    for s in (1, 2, 3):
        assert link_derivative_check(K, s).equal


@given(complexes())
def test_homology_ranks_match_oracle(K):
    assert reduced_homology(K, torsion=False).nonzero_ranks() == reduced_betti_over_q(K.maximal)
    assert reduced_homology(K).ranks == reduced_homology(K, torsion=False).ranks


@settings(max_examples=40, deadline=None)
@given(complexes(max_m=5))
def test_betti_matches_brute_force(K):
    pruned = bigraded_betti(K)
    assert pruned.entries == betti_by_brute_force(K.maximal, K.m)
    assert bigraded_betti(K, prune=False) == pruned


@settings(max_examples=40, deadline=None)
@given(complexes(max_m=6), st.randoms(use_true_random=False))
def test_betti_invariant_under_relabeling(K, rnd):
    perm = list(range(K.m))
    rnd.shuffle(perm)
    assert bigraded_betti(K.relabel(perm)) == bigraded_betti(K)


@given(matrices)
def test_snf_matches_minors(M):
    factors, rank = smith_normal_form(M)
    assert list(factors) == invariant_factors_by_minors(M)
    assert rank == rank_over_q(M)


@given(matrices)
def test_integer_kernel_is_saturated_and_complete(M):
    m = len(M[0])
    ker = integer_kernel(M, m)
    assert len(ker) == m - rank_over_q(M)
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    if ker:
        SubtorusLattice(tuple(ker))  # raises unless a direct summand


@given(st.lists(st.integers(-9, 9), max_size=7), st.integers(-4, 4))
def test_poly_shift(coeffs, x):
    p = Poly(coeffs)
    assert p.shift_by_one()(x) == p(x + 1)
