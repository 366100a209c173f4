"""Combinatorial and topological invariants of convex polytopes.

Polytopes are given by vertex-facet incidence. From that the package builds
the face lattice, the nerve complex of the facet cover, face polynomials,
bigraded Betti numbers of the moment-angle complex and Buchstaber number
bounds.
"""

from .betti import BettiTable, betti_of_polytope, bigraded_betti, poincare_vector, product_table
from .buchstaber import (
    BuchstaberResult,
    SubtorusLattice,
    gamma,
    s_bounds,
    s_bounds_product,
    s_search,
    subtorus_free_check,
)
from .complex import (
    Hypergraph,
    SimplicialComplex,
    f_polynomial,
    face_simplices,
    full_subcomplex,
    hat_complex,
    join,
    link,
    nerve_complex,
    polytopic_check,
    simplicial_closure,
)
from .errors import PolynerveError
from .expr import evaluate, parse_expression
from .homology import HomologyProfile, reduced_homology, smith_normal_form
from .invariants import (
    bayer_billera_check,
    check_corollary_fofKP,
    ds_inequality,
    euler_poincare_check,
    face_polynomial_2d,
    link_derivative_check,
    theorem_fofK_check,
)
from .poly import BivariatePolynomial, Poly
from .polytope import (
    FaceLattice,
    IncidencePolytope,
    face_lattice,
    flag_number,
    is_isomorphic,
    make_standard,
    polar_dual,
    product,
    pyramid,
)
from .report import ReportOptions, run_report

__version__ = "0.1.0"
