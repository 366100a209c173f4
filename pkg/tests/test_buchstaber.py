import pytest

from polynerve.buchstaber import (
    SubtorusLattice,
    block_diagonal,
    coloring,
    gamma,
    integer_kernel,
    s_bounds,
    s_bounds_product,
    s_search,
    subtorus_free_check,
    _find_quotient,
)
from polynerve.complex import SimplicialComplex, nerve_complex
from polynerve.errors import InvalidLattice, TimeBudgetExceeded
from polynerve.polytope import make_standard, product, pyramid


def cycle(k):
    return SimplicialComplex(k, [[i, (i + 1) % k] for i in range(k)])


def nerve(kind, size):
    return nerve_complex(make_standard(kind, size))


def test_gamma_examples():
    assert gamma(nerve_complex(pyramid(make_standard("polygon", 4)))) == 5
    assert gamma(cycle(4)) == 2
    assert gamma(cycle(5)) == 3
    assert gamma(nerve("cube", 3)) == 3


def test_coloring_is_proper():
    K = nerve_complex(product(make_standard("polygon", 5), make_standard("polygon", 7)))
    col = coloring(K)
    assert all(col[a] != col[b] for a, b in K.edges_graph())
    assert max(col.values()) + 1 == 6


def test_gamma_budget_exceeded_carries_bounds():
    # Mycielski-style graph where greedy and clique bounds disagree
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 6), (1, 5), (1, 7), (2, 6), (2, 8),
             (3, 7), (3, 9), (4, 8), (4, 5), (0, 9), (5, 10), (6, 10), (7, 10), (8, 10), (9, 10)]
    K = SimplicialComplex(11, edges)
    assert gamma(K) == 4
    try:
        gamma(K, budget_ms=0)
    except TimeBudgetExceeded as exc:
        lo, hi, _ = exc.best
        assert lo <= 4 <= hi


def test_lattice_validation():
    with pytest.raises(InvalidLattice):
        SubtorusLattice(((2, 0, 0),))
    with pytest.raises(InvalidLattice):
        SubtorusLattice(((1, 1), (2, 2)))
    with pytest.raises(InvalidLattice):
        SubtorusLattice(())
    S = SubtorusLattice(((1, 0, 1, 0), (0, 1, 0, 1)))
    assert (S.r, S.m) == (2, 4)


def test_free_check_examples():
    S = SubtorusLattice(((1, 0, 1, 0), (0, 1, 0, 1)))
    assert subtorus_free_check(cycle(4), S)
    diag = SubtorusLattice(((1,) * 5,))
    assert subtorus_free_check(nerve_complex(pyramid(make_standard("polygon", 4))), diag)
    # a maximal simplex larger than m - r forces a rank deficiency
    K = SimplicialComplex(4, [[0, 1, 2], [3]])
    assert not subtorus_free_check(K, S)
    with pytest.raises(InvalidLattice):
        subtorus_free_check(cycle(5), S)


def test_bounds_examples():
    res = s_bounds(nerve_complex(pyramid(make_standard("polygon", 4))))
    assert (res.lower, res.upper, res.exact) == (1, 1, 1)
    res = s_bounds(cycle(4))
    assert (res.lower, res.upper, res.exact) == (2, 2, 2)
    for n in range(1, 7):
        assert s_bounds(nerve("simplex", n)).exact == 1


def test_certificates_are_free():
    for K in [cycle(6), nerve("cube", 3), nerve("cross", 3), nerve_complex(pyramid(make_standard("cube", 2)))]:
        res = s_bounds(K)
        assert res.certificate.r == res.lower
        assert subtorus_free_check(K, res.certificate)


def test_search_raises_odd_polygon():
    K = nerve("polygon", 5)
    assert s_bounds(K).lower == 2
    res = s_search(K)
    assert (res.lower, res.upper, res.exact) == (3, 3, 3)
    assert subtorus_free_check(K, res.certificate)


def test_search_finds_nothing_above_pyramid_bound():
    K = nerve_complex(pyramid(make_standard("polygon", 4)))
    found, exhausted = _find_quotient(K, K.m - 2, 2, float("inf"), None)
    assert found is None and exhausted


def test_search_is_deterministic():
    K = nerve("polygon", 7)
    a, b = s_search(K, seed=1), s_search(K, seed=1)
    assert a.certificate == b.certificate and a.exact == 5


def test_integer_kernel():
    ker = integer_kernel([[1, 2, 3], [0, 1, 4]], 3)
    assert ker == [(5, -4, 1)]
    ker = integer_kernel([[2, 4]], 2)
    assert len(ker) == 1 and 2 * ker[0][0] + 4 * ker[0][1] == 0
    SubtorusLattice(tuple(ker))


def test_product_bounds():
    KP = nerve_complex(pyramid(make_standard("polygon", 4)))
    KQ = nerve("simplex", 1)
    P, Q = s_bounds(KP), s_bounds(KQ)
    res = s_bounds_product(P, KP, Q, KQ)
    assert res.lower >= P.lower + Q.lower == 2
    assert res.upper <= min(P.upper + KQ.m - KQ.dim, Q.upper + KP.m - KP.dim)
    assert res.lower <= res.upper


def test_block_diagonal():
    A = SubtorusLattice(((1, 1),))
    B = SubtorusLattice(((1, 1, 1),))
    assert block_diagonal(A, B).basis == ((1, 1, 0, 0, 0), (0, 0, 1, 1, 1))


def test_non_simple_upper_below_m_minus_n():
    P = pyramid(make_standard("cube", 3))
    assert s_bounds(nerve_complex(P)).upper < P.m - P.n


def test_result_text_and_json():
    res = s_search(nerve("polygon", 5))
    assert res.text().startswith("s = 3 (certificate: 3x5 matrix)")
    assert res.to_json()["exact"] == 3
    wide = s_bounds(nerve_complex(product(make_standard("polygon", 5), make_standard("polygon", 5))))
    if wide.exact is None:
        assert wide.text() == f"s in [{wide.lower}, {wide.upper}]"
