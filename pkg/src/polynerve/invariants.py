"""Face polynomials of polytopes and the identities relating them to ``K_P``."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import List, Union

from .complex import (
    SimplicialComplex,
    f_polynomial,
    f_polynomial_of_links,
    face_simplices,
    nerve_complex,
)
from .errors import NotGradedFacePoset
from .poly import BivariatePolynomial, Poly
from .polytope import FaceLattice, IncidencePolytope, euler_poincare_sum, flag_number, popcount


def _lattice(P: Union[IncidencePolytope, FaceLattice]) -> FaceLattice:
    return P.lattice if isinstance(P, IncidencePolytope) else P


def face_polynomial_2d(P: Union[IncidencePolytope, FaceLattice]) -> BivariatePolynomial:
    """``sum over faces F (including P) of a**dim(F) * t**m(F)``."""
    out = BivariatePolynomial()
    for face in _lattice(P):
        out.add_term(face.dim, popcount(face.facets))
    return out


def dual_side(F: BivariatePolynomial) -> Poly:
    """``F(-1, t + 1)`` expanded."""
    return F.specialize_alpha(-1).shift_by_one()


@dataclass
class ComparisonReport:
    """Coefficientwise comparison of two univariate polynomials."""

    lhs: Poly
    rhs: Poly
    verdicts: List[str] = field(default_factory=list)
    violations: List[int] = field(default_factory=list)

    @classmethod
    def compare(cls, lhs: Poly, rhs: Poly, must_equal=()) -> "ComparisonReport":
        n = max(len(lhs), len(rhs))
        rep = cls(lhs, rhs)
        must = set(must_equal)
        for k in range(n):
            a, b = lhs[k], rhs[k]
            if a == b:
                rep.verdicts.append("=")
            elif a < b:
                rep.verdicts.append("<")
                if k in must:
                    rep.violations.append(k)
            else:
                rep.verdicts.append(">")
                rep.violations.append(k)
        return rep

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def all_equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "lhs": list(self.lhs),
            "rhs": list(self.rhs),
            "verdicts": self.verdicts,
            "violations": self.violations,
        }


def check_corollary_fofKP(P: IncidencePolytope) -> ComparisonReport:
    """Compare ``f_{K_P}(t)`` with ``F_P(-1, t + 1)``; every degree must agree."""
    lhs = f_polynomial(nerve_complex(P))
    rhs = dual_side(face_polynomial_2d(P))
    return ComparisonReport.compare(lhs, rhs, must_equal=range(max(len(lhs), len(rhs))))


def ds_inequality(P: IncidencePolytope) -> ComparisonReport:
    """``F_P(1, t) <= F_P(-1, t + 1)`` coefficientwise, with equality in degrees 0 and 1.

    For simple polytopes this is the Dehn-Sommerville system and holds with
    equality throughout.
    """
    F = face_polynomial_2d(P)
    return ComparisonReport.compare(F.specialize_alpha(1), dual_side(F), must_equal=(0, 1))


@dataclass
class IdentityCheck:
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "equal": self.equal}


def bayer_billera_check(P: Union[IncidencePolytope, FaceLattice]) -> IdentityCheck:
    """``f_{n-1} (1 + (-1)**n)`` against ``sum_{i <= n-2} (-1)**i f_{i, n-1}``."""
    L = _lattice(P)
    n = L.n
    if n < 1:
        raise ValueError("the flag relation needs n >= 1")
    lhs = flag_number(L, [n - 1]) * (1 + (-1) ** n)
    rhs = sum((-1) ** i * flag_number(L, [i, n - 1]) for i in range(n - 1))
    return IdentityCheck(lhs, rhs)


def euler_poincare_check(P: Union[IncidencePolytope, FaceLattice]) -> IdentityCheck:
    """Alternating face count including the polytope itself equals 1."""
    return IdentityCheck(euler_poincare_sum(_lattice(P)), 1)


@dataclass
class TheoremCheck:
    lhs: Poly
    rhs: Poly
    rank: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"lhs": list(self.lhs), "rhs": list(self.rhs), "rank": self.rank, "equal": self.equal}


def face_simplex_expansion(K: SimplicialComplex) -> Poly:
    """``sum over face simplices s of (-1)**(n - rk s) * (t + 1)**|s|``."""
    FP = face_simplices(K)
    if not (FP.has_empty and FP.graded):
        raise NotGradedFacePoset("face simplices must form a graded poset containing the empty set")
    n = FP.rank_value
    total = Poly()
    for s in FP.elements:
        total = total + Poly.binomial(popcount(s)) * (-1) ** (n - FP.rank[s])
    return total


def theorem_fofK_check(K: SimplicialComplex) -> TheoremCheck:
    rhs = face_simplex_expansion(K)
    return TheoremCheck(f_polynomial(K), rhs, face_simplices(K).rank_value)


def link_derivative_check(K: SimplicialComplex, order: int = 1) -> TheoremCheck:
    """``(d/dt)**s f_K`` against ``s! * sum over |sigma| = s of f_{link sigma}``."""
    if order < 1:
        raise ValueError("derivative order must be positive")
    lhs = f_polynomial(K).derivative(order)
    rhs = f_polynomial_of_links(K, order) * factorial(order)
    return TheoremCheck(lhs, rhs, order)
