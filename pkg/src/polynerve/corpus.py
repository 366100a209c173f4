"""Generated corpus of polytopes and a batch property checker."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Tuple

from .buchstaber import s_bounds, s_search
from .complex import f_polynomial, nerve_complex, polytopic_check
from .invariants import (
    bayer_billera_check,
    check_corollary_fofKP,
    ds_inequality,
    euler_poincare_check,
    link_derivative_check,
    theorem_fofK_check,
)
from .polytope import IncidencePolytope, is_isomorphic, make_standard, polar_dual, popcount, product, pyramid

DEFAULT_MAX_M = 12


@dataclass
class CorpusEntry:
    expression: str
    polytope: IncidencePolytope
    depth: int


def _key(P: IncidencePolytope) -> tuple:
    return (
        P.n,
        P.m,
        P.v,
        tuple(P.lattice.f_vector()),
        tuple(sorted(popcount(r) for r in P.vertex_facets)),
        tuple(sorted(popcount(c) for c in P.facet_vertices)),
    )


class _Pool:
    """Polytopes deduplicated up to combinatorial isomorphism."""

    def __init__(self):
        self.entries: List[CorpusEntry] = []
        self.buckets: Dict[tuple, List[CorpusEntry]] = {}

    def add(self, expr: str, P: IncidencePolytope, depth: int) -> bool:
        bucket = self.buckets.setdefault(_key(P), [])
        if any(is_isomorphic(P, e.polytope) for e in bucket):
            return False
        entry = CorpusEntry(expr, P, depth)
        bucket.append(entry)
        self.entries.append(entry)
        return True


def standard_polytopes(max_m: int = DEFAULT_MAX_M) -> Iterator[Tuple[str, IncidencePolytope]]:
    for n in range(1, max_m):
        yield f"simplex({n})", make_standard("simplex", n)
    for n in range(1, max_m // 2 + 1):
        yield f"cube({n})", make_standard("cube", n)
    n = 1
    while 2**n <= max_m:
        yield f"cross({n})", make_standard("cross", n)
        n += 1
    for k in range(3, max_m + 1):
        yield f"polygon({k})", make_standard("polygon", k)


def generate_corpus(max_m: int = DEFAULT_MAX_M, depth: int = 2) -> List[CorpusEntry]:
    """Standard polytopes with ``m <= max_m`` closed under pyr, dual and prod.

    Every generation applies the three operations to the entries found so
    far; results with more than ``max_m`` facets are dropped, and so are
    duplicates up to isomorphism.
    """
    pool = _Pool()
    for expr, P in standard_polytopes(max_m):
        pool.add(expr, P, 0)
    for level in range(1, depth + 1):
        current = list(pool.entries)
        for e in current:
            P = e.polytope
            if P.m + 1 <= max_m:
                pool.add(f"pyr({e.expression})", pyramid(P), level)
            if P.v <= max_m:
                pool.add(f"dual({e.expression})", polar_dual(P), level)
        for i, a in enumerate(current):
            for b in current[i:]:
                if a.polytope.m + b.polytope.m <= max_m:
                    pool.add(f"prod({a.expression},{b.expression})", product(a.polytope, b.polytope), level)
    return pool.entries


def is_pyramid(P: IncidencePolytope) -> bool:
    """Some facet misses exactly one vertex, and that vertex lies on every other facet."""
    full = (1 << P.v) - 1
    for i, fv in enumerate(P.facet_vertices):
        rest = full & ~fv
        if popcount(rest) == 1:
            apex = rest.bit_length() - 1
            if popcount(P.vertex_facets[apex]) == P.m - 1:
                return True
    return False


@dataclass
class CorpusResult:
    expression: str
    m: int
    verdicts: Dict[str, bool]
    s_lower: int
    s_upper: int
    single_torus_non_pyramid: bool = False

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())


@dataclass
class CorpusRun:
    results: List[CorpusResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def failures(self) -> List[CorpusResult]:
        return [r for r in self.results if not r.ok]

    def to_json(self) -> dict:
        return {
            "count": len(self.results),
            "failures": [r.expression for r in self.failures],
            "single_torus_non_pyramids": [r.expression for r in self.results if r.single_torus_non_pyramid],
            "seconds": round(self.seconds, 3),
            "results": [
                {"expression": r.expression, "m": r.m, "verdicts": r.verdicts, "s": [r.s_lower, r.s_upper]}
                for r in self.results
            ],
        }


def check_entry(P: IncidencePolytope, expression: str = "", search: bool = False,
                polytopic: bool = True, budget_ms: int = 2000) -> CorpusResult:
    K = nerve_complex(P)
    verdicts = {
        "corollary_fofKP": check_corollary_fofKP(P).all_equal,
        "ds_inequality": ds_inequality(P).ok,
        "bayer_billera": bayer_billera_check(P).equal,
        "euler_poincare": euler_poincare_check(P).equal,
        "face_simplex_expansion": theorem_fofK_check(K).equal,
        "f_polynomial_methods": f_polynomial(K) == f_polynomial(K, method="enumerate"),
    }
    for s in (1, 2, 3):
        verdicts[f"link_derivative_{s}"] = link_derivative_check(K, s).equal
    if polytopic:
        verdicts["polytopic"] = polytopic_check(K, check_nonface=False).is_polytopic
    res = s_search(K, budget_ms=budget_ms) if search else s_bounds(K)
    # the open question: are pyramids the only polytopes with s = 1?
    flag = res.exact == 1 and not is_pyramid(P)
    return CorpusResult(expression, P.m, verdicts, res.lower, res.upper, flag)


def run_corpus(max_m: int = DEFAULT_MAX_M, depth: int = 2, **kw) -> CorpusRun:
    t0 = time.perf_counter()
    run = CorpusRun()
    for e in generate_corpus(max_m, depth):
        run.results.append(check_entry(e.polytope, e.expression, **kw))
    run.seconds = time.perf_counter() - t0
    return run
