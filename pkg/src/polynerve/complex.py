"""Simplicial complexes and hypergraphs on the ground set ``{0, ..., m-1}``.

Complexes are stored by their maximal simplices (an antichain of bit
masks). Simplices are only enumerated on demand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import CapExceeded, NotASimplex
from .poly import Poly
from .polytope import FaceLattice, IncidencePolytope, bits, mask_of, popcount

ENUMERATION_CAP = 62


def antichain(masks: Iterable[int]) -> Tuple[int, ...]:
    """Inclusion-maximal elements of ``masks``, sorted ascending."""
    uniq = sorted(set(masks), key=lambda x: -popcount(x))
    kept: List[int] = []
    for s in uniq:
        if not any(s & k == s for k in kept):
            kept.append(s)
    return tuple(sorted(kept))


def submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class Hypergraph:
    m: int
    edges: FrozenSet[int]

    def __init__(self, m: int, edges: Iterable[int]):
        edges = frozenset(int(e) for e in edges)
        full = (1 << m) - 1
        for e in edges:
            if e & ~full:
                raise ValueError(f"hyperedge {bits(e)} is not a subset of [{m}]")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "edges", edges)


class SimplicialComplex:
    """A finite simplicial complex given by its maximal simplices.

    Vertices need not all be present: a ground-set element that lies in no
    simplex is a ghost vertex. ``SimplicialComplex(m, [0])`` is the complex
    whose only simplex is the empty one.
    """

    def __init__(self, m: int, maximal: Iterable[Union[int, Iterable[int]]]):
        masks = [x if isinstance(x, int) else mask_of(x) for x in maximal]
        full = (1 << m) - 1
        for s in masks:
            if s < 0 or s & ~full:
                raise ValueError(f"simplex {bits(s)} is not a subset of [{m}]")
        self.m = m
        self.maximal: Tuple[int, ...] = antichain(masks)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.m == other.m and self.maximal == other.maximal

    def __hash__(self):
        return hash((self.m, self.maximal))

    def __repr__(self):
        return f"SimplicialComplex(m={self.m}, maximal={[bits(s) for s in self.maximal]})"

    def __contains__(self, sigma: int) -> bool:
        return any(sigma & M == sigma for M in self.maximal)

    @property
    def is_void(self) -> bool:
        return not self.maximal

    @cached_property
    def vertex_mask(self) -> int:
        out = 0
        for M in self.maximal:
            out |= M
        return out

    @property
    def vertices(self) -> List[int]:
        return bits(self.vertex_mask)

    @property
    def dim(self) -> int:
        return max((popcount(M) for M in self.maximal), default=0) - 1

    def simplices(self, size: Optional[int] = None) -> List[int]:
        """All simplices (optionally of one cardinality), ascending by mask."""
        if self.m > ENUMERATION_CAP:
            raise CapExceeded(f"enumeration limited to m <= {ENUMERATION_CAP}")
        out = set()
        for M in self.maximal:
            if size is None:
                out.update(submasks(M))
            elif popcount(M) >= size:
                out.update(s for s in submasks(M) if popcount(s) == size)
        return sorted(out)

    def edges_graph(self) -> List[Tuple[int, int]]:
        """The 1-skeleton as a list of vertex pairs."""
        pairs = set()
        for M in self.maximal:
            vs = bits(M)
            for a in range(len(vs)):
                for b in range(a + 1, len(vs)):
                    pairs.add((vs[a], vs[b]))
        return sorted(pairs)

    def to_json(self) -> dict:
        return {"m": self.m, "maximal": [bits(s) for s in self.maximal]}

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        return cls(int(data["m"]), [mask_of(s) for s in data["maximal"]])

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def relabel(self, perm: Sequence[int]) -> "SimplicialComplex":
        """Image under the vertex map ``i -> perm[i]``."""
        return SimplicialComplex(self.m, [mask_of(perm[i] for i in bits(M)) for M in self.maximal])

    def is_cone(self) -> bool:
        """True when some vertex lies in every maximal simplex' star.

        A cone over any subcomplex is contractible, so its reduced homology
        vanishes.
        """
        return cone_apex(self) is not None

    @cached_property
    def face_poset(self) -> "FacePoset":
        return face_simplices(self)


def cone_apex(K: SimplicialComplex, within: Optional[SimplicialComplex] = None) -> Optional[int]:
    """A vertex ``v`` of ``K`` such that ``sigma + v`` is in ``within`` for every maximal ``sigma`` of ``K``.

    ``within`` defaults to ``K``; passing the ambient complex lets this test a
    full subcomplex without materializing anything.
    """
    amb = within if within is not None else K
    if not K.maximal:
        return None
    common = K.vertex_mask
    for M in K.maximal:
        common &= M
    if common:
        return bits(common)[0]
    for v in bits(K.vertex_mask):
        bit = 1 << v
        if all((M | bit) in amb for M in K.maximal):
            return v
    return None


def simplicial_closure(G: Hypergraph) -> SimplicialComplex:
    return SimplicialComplex(G.m, G.edges)


def hypergraph_of(P: Union[IncidencePolytope, FaceLattice]) -> Hypergraph:
    """``G_P``: the facet sets of all faces."""
    L = P.lattice if isinstance(P, IncidencePolytope) else P
    return Hypergraph(L.m, L.hypergraph_edges())


def nerve_complex(P: Union[IncidencePolytope, FaceLattice]) -> SimplicialComplex:
    """The nerve of the cover of the boundary by facets.

    Its maximal simplices are the facet sets of the vertices.
    """
    L = P.lattice if isinstance(P, IncidencePolytope) else P
    return SimplicialComplex(L.m, [f.facets for f in L.faces_of_dim(0)])


def hat_complex(P: IncidencePolytope) -> SimplicialComplex:
    """Complex on the vertices of ``P``: a vertex set is a simplex iff it lies in one facet."""
    return SimplicialComplex(P.v, P.facet_vertices)


def link(K: SimplicialComplex, sigma: int) -> SimplicialComplex:
    if sigma not in K:
        raise NotASimplex(f"{bits(sigma)} is not a simplex of the complex")
    return SimplicialComplex(K.m, [M & ~sigma for M in K.maximal if M & sigma == sigma])


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Join, with the ground set of ``L`` shifted past that of ``K``."""
    return SimplicialComplex(K.m + L.m, [a | (b << K.m) for a in K.maximal for b in L.maximal])


def full_subcomplex(K: SimplicialComplex, omega: int) -> SimplicialComplex:
    return SimplicialComplex(K.m, [M & omega for M in K.maximal])


def simplex_complex(m: int, sigma: int) -> SimplicialComplex:
    """The full simplex on ``sigma`` (all its faces)."""
    return SimplicialComplex(m, [sigma])


# ---------------------------------------------------------------- face poset


@dataclass
class FacePoset:
    """The face simplices ``F(K)``: all intersections of maximal simplices."""

    elements: Tuple[int, ...]
    bottom: Optional[int]
    graded: bool
    rank_value: Optional[int]
    rank: Dict[int, int] = field(repr=False)
    lower_covers: Dict[int, Tuple[int, ...]] = field(repr=False)

    def __contains__(self, sigma: int) -> bool:
        return sigma in self.rank

    def __len__(self):
        return len(self.elements)

    @property
    def has_empty(self) -> bool:
        return 0 in self.rank


def face_simplices(K: SimplicialComplex) -> FacePoset:
    maximal = K.maximal
    seen = set(maximal)
    frontier = list(maximal)
    while frontier:
        nxt = []
        for F in frontier:
            for M in maximal:
                x = F & M
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    if not seen:
        return FacePoset((), None, False, None, {}, {})

    bottom = (1 << K.m) - 1
    for M in maximal:
        bottom &= M

    covers: Dict[int, Tuple[int, ...]] = {}
    for F in seen:
        cands = {F & M for M in maximal if F & M != F}
        covers[F] = tuple(sorted(c for c in cands if not any(c != d and c & d == c for d in cands)))

    rank: Dict[int, int] = {}
    for F in sorted(seen, key=popcount):
        lc = covers[F]
        rank[F] = 1 + max(rank[g] for g in lc) if lc else 0
    graded = all(rank[g] == rank[F] - 1 for F, lc in covers.items() for g in lc)
    top_ranks = {rank[M] for M in maximal}
    graded = graded and len(top_ranks) == 1
    return FacePoset(
        elements=tuple(sorted(seen)),
        bottom=bottom,
        graded=graded,
        rank_value=top_ranks.pop() if graded else None,
        rank=rank,
        lower_covers=covers,
    )


def minimal_face_simplex(K: SimplicialComplex, tau: int) -> int:
    """Smallest face simplex containing ``tau``."""
    out = None
    for M in K.maximal:
        if M & tau == tau:
            out = M if out is None else out & M
    if out is None:
        raise NotASimplex(f"{bits(tau)} is not a simplex of the complex")
    return out


# ------------------------------------------------------------- f-polynomials


def f_polynomial(K: SimplicialComplex, method: str = "fast") -> Poly:
    """``sum over simplices of t**|sigma|``.

    ``method="fast"`` counts the union of the maximal simplices' face sets
    by recursive inclusion-exclusion; ``method="enumerate"`` lists every
    simplex.
    """
    if method == "enumerate":
        counts = [0] * (K.dim + 2 if K.maximal else 0)
        for s in K.simplices():
            counts[popcount(s)] += 1
        return Poly(counts)
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    return _union_fpoly(_compress(K.maximal))


def _compress(masks: Tuple[int, ...]) -> Tuple[int, ...]:
    """Relabel the used vertices to 0..k-1 so equal shapes share cache entries."""
    used = 0
    for M in masks:
        used |= M
    pos = {v: i for i, v in enumerate(bits(used))}
    return tuple(sorted(mask_of(pos[v] for v in bits(M)) for M in masks))


@lru_cache(maxsize=1 << 16)
def _union_fpoly(masks: Tuple[int, ...]) -> Poly:
    total = Poly()
    done: List[int] = []
    for M in masks:
        total = total + Poly.binomial(popcount(M))
        if done:
            # faces of M already counted: the complex generated by M & earlier
            total = total - _union_fpoly(_compress(antichain(M & P for P in done)))
        done.append(M)
    return total


# ------------------------------------------------------------- polytopic check


@dataclass
class FaceSimplexVerdict:
    simplex: int
    rank: int
    sphere_dim: int
    homology: Dict[int, int]
    torsion: Dict[int, Tuple[int, ...]]
    ok: bool


@dataclass
class PolytopicReport:
    """Outcome of :func:`polytopic_check`.

    ``condition3`` is the homology-level test: the link of every face simplex
    has the integral reduced homology of a sphere of the expected dimension.
    That is necessary, not sufficient, for the link to retract onto a sphere.
    """

    condition1: bool
    condition2: bool
    rank: Optional[int]
    condition3: bool
    reduced: bool
    nonface_links_acyclic: Optional[bool]
    face_verdicts: List[FaceSimplexVerdict]

    @property
    def is_polytopic(self) -> bool:
        return self.condition1 and self.condition2 and self.condition3

    def to_json(self) -> dict:
        return {
            "condition1": self.condition1,
            "condition2": self.condition2,
            "rank": self.rank,
            "condition3": self.condition3,
            "reduced": self.reduced,
            "nonface_links_acyclic": self.nonface_links_acyclic,
            "face_simplices": [
                {
                    "simplex": bits(v.simplex),
                    "rank": v.rank,
                    "sphere_dim": v.sphere_dim,
                    "homology": {str(d): r for d, r in sorted(v.homology.items())},
                    "ok": v.ok,
                }
                for v in self.face_verdicts
            ],
        }

    def text(self, one_based: bool = True) -> str:
        off = 1 if one_based else 0
        lines = [
            f"condition 1 (empty face simplex): {'pass' if self.condition1 else 'FAIL'}",
            f"condition 2 (graded face poset):  {'pass, rank ' + str(self.rank) if self.condition2 else 'FAIL'}",
            f"condition 3 (sphere homology of links, necessary condition): {'pass' if self.condition3 else 'FAIL'}",
            f"reduced: {'yes' if self.reduced else 'no'}",
        ]
        if self.nonface_links_acyclic is not None:
            lines.append(f"links of non-face simplices acyclic: {'yes' if self.nonface_links_acyclic else 'NO'}")
        for v in self.face_verdicts:
            label = "{" + ",".join(str(i + off) for i in bits(v.simplex)) + "}"
            hom = ", ".join(f"H{d}={r}" for d, r in sorted(v.homology.items()) if r) or "acyclic"
            lines.append(f"  {label:<24} rank {v.rank}  expect S^{v.sphere_dim}  got {hom}  {'ok' if v.ok else 'FAIL'}")
        return "\n".join(lines)


def polytopic_check(K: SimplicialComplex, check_nonface: bool = True) -> PolytopicReport:
    from .homology import reduced_homology

    FP = face_simplices(K)
    cond1 = FP.has_empty
    cond2 = cond1 and FP.graded
    n = FP.rank_value if cond2 else None
    verdicts = []
    cond3 = cond2
    if cond2:
        for sigma in sorted(FP.elements, key=lambda s: (FP.rank[s], s)):
            lk = link(K, sigma)
            d = n - FP.rank[sigma] - 1
            prof = reduced_homology(lk, torsion=True)
            ok = prof.is_sphere(d)
            verdicts.append(FaceSimplexVerdict(sigma, FP.rank[sigma], d, prof.nonzero_ranks(), prof.torsion_nonempty(), ok))
            cond3 = cond3 and ok
    reduced = all((1 << v) in FP for v in range(K.m)) and cond1

    nonface_ok = None
    if check_nonface and cond2:
        nonface_ok = True
        for tau in K.simplices():
            if tau in FP:
                continue
            lk = link(K, tau)
            if cone_apex(lk) is not None:
                continue
            if not reduced_homology(lk, torsion=True).is_acyclic():
                nonface_ok = False
                break
    return PolytopicReport(cond1, cond2, n, cond3, reduced, nonface_ok, verdicts)


def is_cycle_graph(K: SimplicialComplex) -> bool:
    """True when ``K`` is the boundary of a polygon on its vertex set."""
    if any(popcount(M) != 2 for M in K.maximal):
        return False
    verts = K.vertices
    if len(verts) < 3 or len(K.maximal) != len(verts):
        return False
    adj = {v: [] for v in verts}
    for a, b in K.edges_graph():
        adj[a].append(b)
        adj[b].append(a)
    if any(len(x) != 2 for x in adj.values()):
        return False
    start = verts[0]
    prev, cur, steps = None, start, 0
    while True:
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        prev, cur = cur, nxt
        steps += 1
        if cur == start:
            break
    return steps == len(verts)


def f_polynomial_of_links(K: SimplicialComplex, size: int) -> Poly:
    """``sum over simplices sigma with |sigma| = size of f_{link sigma}``."""
    total = Poly()
    for s in K.simplices(size):
        total = total + f_polynomial(link(K, s))
    return total


__all__ = [
    "Hypergraph",
    "SimplicialComplex",
    "FacePoset",
    "PolytopicReport",
    "antichain",
    "cone_apex",
    "f_polynomial",
    "f_polynomial_of_links",
    "face_simplices",
    "full_subcomplex",
    "hat_complex",
    "hypergraph_of",
    "is_cycle_graph",
    "join",
    "link",
    "minimal_face_simplex",
    "nerve_complex",
    "polytopic_check",
    "simplicial_closure",
    "simplex_complex",
]
