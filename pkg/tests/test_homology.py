import io
import random

import pytest

from oracles import invariant_factors_by_minors, reduced_betti_over_q
from polynerve.complex import SimplicialComplex, nerve_complex
from polynerve.homology import (
    chain_complex,
    dump_boundary,
    euler_characteristic,
    invariant_factors,
    is_sphere_homology,
    rational_rank,
    reduced_homology,
    smith_normal_form,
)
from polynerve.polytope import make_standard, pyramid


def rp2():
    # six-vertex triangulation of the real projective plane
    tris = [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
        (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
    ]
    return SimplicialComplex(6, tris)


def test_snf_small_cases():
    assert smith_normal_form([[2, 0], [0, 3]]) == ((1, 6), 2)
    assert smith_normal_form([[2, 4], [4, 8]]) == ((2,), 1)
    assert smith_normal_form([[0, 0], [0, 0]]) == ((), 0)
    assert smith_normal_form([[6, 4], [4, 6]]) == ((2, 10), 2)


def test_invariant_factor_chain():
    assert invariant_factors([4, 6]) == (2, 12)
    assert invariant_factors([1, -3, 0]) == (1, 3)


@pytest.mark.parametrize("seed", range(40))
def test_snf_matches_minors_oracle(seed):
    rng = random.Random(seed)
    r, c = rng.randint(1, 4), rng.randint(1, 4)
    M = [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)]
    factors, rank = smith_normal_form(M)
    assert list(factors) == invariant_factors_by_minors(M)
    assert rank == len(factors)


def test_rational_rank():
    cols = [{0: 2, 1: 4}, {0: 1, 1: 2}, {2: 3}]
    assert rational_rank(cols) == 2


def test_boundary_squares_to_zero():
    assert chain_complex(rp2()).check_square_zero()
    assert chain_complex(nerve_complex(make_standard("cube", 3))).check_square_zero()


def test_rp2_torsion():
    h = reduced_homology(rp2())
    assert h.nonzero_ranks() == {}
    assert h.torsion_nonempty() == {1: (2,)}
    assert h.has_torsion and not h.is_acyclic()
    # over the rationals it is acyclic
    assert reduced_homology(rp2(), torsion=False).nonzero_ranks() == {}


def test_empty_complex_has_degree_minus_one_class():
    h = reduced_homology(SimplicialComplex(2, [0]))
    assert h.nonzero_ranks() == {-1: 1}
    assert is_sphere_homology(SimplicialComplex(2, [0]), -1)


def test_point_is_acyclic():
    assert reduced_homology(SimplicialComplex(1, [1])).is_acyclic()


def test_nerve_of_polytope_is_sphere():
    for P in [pyramid(make_standard("polygon", 4)), make_standard("cube", 3), make_standard("cross", 3)]:
        assert is_sphere_homology(nerve_complex(P), P.n - 1)


def test_torsion_and_rational_paths_agree_on_ranks():
    for K in [rp2(), nerve_complex(make_standard("cube", 4)), SimplicialComplex(5, [[0, 1], [1, 2], [3, 4]])]:
        assert reduced_homology(K).ranks == reduced_homology(K, torsion=False).ranks


def test_ranks_match_dense_oracle():
    rng = random.Random(3)
    for _ in range(30):
        m = rng.randint(1, 6)
        gens = [rng.randrange(1, 1 << m) for _ in range(rng.randint(1, 5))]
        K = SimplicialComplex(m, gens)
        assert reduced_homology(K, torsion=False).nonzero_ranks() == reduced_betti_over_q(K.maximal)


def test_euler_characteristic():
    assert euler_characteristic(nerve_complex(make_standard("cube", 3))) == 2
    assert euler_characteristic(rp2()) == 1
    h = reduced_homology(nerve_complex(make_standard("cube", 3)))
    assert h.alternating_sum() == euler_characteristic(nerve_complex(make_standard("cube", 3))) - 1


def test_dump_boundary_matrix_market():
    buf = io.StringIO()
    dump_boundary(SimplicialComplex(3, [[0, 1, 2]]), buf)
    text = buf.getvalue()
    assert text.count("%%MatrixMarket") == 3
    assert "3 1 3" in text  # degree 2 -> 1: 3 rows, 1 column, 3 entries
