import json

import numpy as np
import pytest

from oracles import face_count_by_closure, polar_pair_polytope
from polynerve.errors import (
    DimensionOutOfRange,
    DuplicateRowOrColumn,
    InvalidPolytope,
    NotGraded,
    RankMismatch,
    SizeOutOfRange,
    UnknownFace,
)
from polynerve.polytope import (
    IncidencePolytope,
    bits,
    euler_poincare_sum,
    flag_number,
    is_isomorphic,
    make_standard,
    mask_of,
    polar_dual,
    product,
    pyramid,
    sigma_tilde,
)


def square_pyramid():
    return pyramid(make_standard("polygon", 4))


def test_bits_and_masks():
    assert bits(0b10110) == [1, 2, 4]
    assert mask_of([1, 2, 4]) == 0b10110


@pytest.mark.parametrize(
    "kind,size,f",
    [
        ("simplex", 3, [4, 6, 4, 1]),
        ("cube", 3, [8, 12, 6, 1]),
        ("cross", 3, [6, 12, 8, 1]),
        ("polygon", 6, [6, 6, 1]),
        ("cube", 4, [16, 32, 24, 8, 1]),
    ],
)
def test_standard_f_vectors(kind, size, f):
    assert make_standard(kind, size).lattice.f_vector() == f


def test_pyramid_face_lattice():
    P = square_pyramid()
    assert (P.n, P.m, P.v) == (3, 5, 5)
    assert len(P.lattice) == 19
    assert P.lattice.f_vector() == [5, 8, 5, 1]
    assert not P.is_simple
    # the apex is the last vertex and lies on the four side facets
    assert bits(P.vertex_facets[-1]) == [0, 1, 2, 3]


def test_face_count_matches_closure_oracle():
    for P in [square_pyramid(), make_standard("cube", 3), polar_pair_polytope(), product(make_standard("polygon", 5), make_standard("simplex", 1))]:
        # the oracle also counts the empty face
        assert face_count_by_closure(P) == len(P.lattice) + 1


def test_flag_numbers():
    L = square_pyramid().lattice
    assert flag_number(L, [0]) == 5
    assert flag_number(L, [0, 1]) == 16
    assert flag_number(L, [0, 2]) == 16
    assert flag_number(L, [1, 2]) == 16
    assert flag_number(L, []) == 1
    with pytest.raises(DimensionOutOfRange):
        flag_number(L, [3])


def test_euler_poincare_sum():
    for P in [square_pyramid(), make_standard("cube", 4), make_standard("cross", 3)]:
        assert euler_poincare_sum(P.lattice) == 1


def test_sigma_tilde():
    P = square_pyramid()
    apex = 1 << (P.v - 1)
    assert bits(sigma_tilde(P.lattice, apex)) == [0, 1, 2, 3]
    assert sigma_tilde(P.lattice, P.lattice.top) == 0
    with pytest.raises(UnknownFace):
        P.lattice.face(0b00101)  # a diagonal of the base

def test_duplicate_rows_rejected():
    M = np.array([[1, 1, 0], [1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=bool)
    with pytest.raises(DuplicateRowOrColumn):
        IncidencePolytope(M, 2)


def test_duplicate_columns_rejected():
    M = np.array([[1, 1], [1, 1]], dtype=bool)
    with pytest.raises(DuplicateRowOrColumn):
        IncidencePolytope(M, 1)


def test_rank_mismatch():
    with pytest.raises(InvalidPolytope):
        IncidencePolytope(make_standard("polygon", 4).incidence, 3)


def test_not_graded():
    # a "square" whose vertex 0 lies on three edges
    M = np.array([[1, 1, 1, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]], dtype=bool)
    with pytest.raises(InvalidPolytope):
        IncidencePolytope(M, 2)


def test_zero_dimensional_needs_one_vertex():
    with pytest.raises(RankMismatch):
        IncidencePolytope(np.array([[True], [False]]), 0)


def test_error_hierarchy():
    assert issubclass(NotGraded, InvalidPolytope)
    assert issubclass(InvalidPolytope, ValueError)


def test_input_matrix_is_not_frozen():
    M = make_standard("cube", 2).incidence.copy()
    P = IncidencePolytope(M, 2)
    M[0, 0] = not M[0, 0]
    assert not P.incidence.flags.writeable


def test_standard_size_guards():
    with pytest.raises(SizeOutOfRange):
        make_standard("polygon", 2)
    with pytest.raises(SizeOutOfRange):
        make_standard("cube", 0)


def test_json_round_trip():
    P = polar_pair_polytope()
    data = json.loads(P.dumps())
    assert data["n"] == 3 and data["facets"] == 7
    assert data["vertices"][0]["name"] == "A"
    Q = IncidencePolytope.from_json(data)
    assert (Q.incidence == P.incidence).all()


def test_json_rejects_bad_facet_index():
    with pytest.raises(InvalidPolytope):
        IncidencePolytope.from_json({"n": 1, "facets": 2, "vertices": [{"on": [0]}, {"on": [2]}]})


def test_dual_of_cube_is_cross():
    assert is_isomorphic(polar_dual(make_standard("cube", 3)), make_standard("cross", 3))
    assert polar_dual(polar_dual(square_pyramid())).incidence.tolist() == square_pyramid().incidence.tolist()


def test_pyramid_is_self_dual():
    P = square_pyramid()
    assert is_isomorphic(P, polar_dual(P))


def test_polar_pair_not_isomorphic():
    P = polar_pair_polytope()
    assert P.lattice.f_vector() == [7, 12, 7, 1]
    assert polar_dual(P).lattice.f_vector() == [7, 12, 7, 1]
    assert not is_isomorphic(P, polar_dual(P))


def test_isomorphism_under_relabeling():
    rng = np.random.default_rng(7)
    P = product(make_standard("polygon", 5), make_standard("simplex", 2))
    M = P.incidence[rng.permutation(P.v)][:, rng.permutation(P.m)]
    assert is_isomorphic(P, IncidencePolytope(M, P.n))


def test_product_and_pyramid_shapes():
    prism = product(make_standard("simplex", 2), make_standard("simplex", 1))
    assert (prism.n, prism.m, prism.v) == (3, 5, 6)
    assert prism.lattice.f_vector() == [6, 9, 5, 1]
    assert is_isomorphic(product(make_standard("simplex", 1), make_standard("simplex", 1)), make_standard("cube", 2))
    assert is_isomorphic(pyramid(make_standard("simplex", 2)), make_standard("simplex", 3))
