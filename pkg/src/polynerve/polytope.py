"""Abstract convex polytopes given by vertex-facet incidence.

A polytope is stored purely combinatorially: for every vertex, the set of
facets it lies on. Vertex and facet sets are Python ints used as bit masks
(bit ``j`` of a vertex mask is vertex ``j``, bit ``i`` of a facet mask is
facet ``i``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    DimensionOutOfRange,
    DuplicateRowOrColumn,
    InvalidPolytope,
    NotGraded,
    RankMismatch,
    SizeOutOfRange,
    UnknownFace,
)


def bits(mask: int) -> List[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


@dataclass(frozen=True)
class Face:
    """A nonempty face, recorded by its vertices and the facets containing it."""

    vertices: int
    facets: int
    dim: int

    @property
    def m(self) -> int:
        """Number of facets containing the face."""
        return popcount(self.facets)


def popcount(x: int) -> int:
    return bin(x).count("1")


class FaceLattice:
    """All nonempty faces of a polytope, graded by dimension.

    The top face (the polytope itself) is included; the empty face is not.
    Built by :func:`face_lattice`.
    """

    def __init__(self, n: int, m: int, v: int, faces: Sequence[Face], lower_covers: Dict[int, Tuple[int, ...]]):
        self.n = n
        self.m = m
        self.v = v
        self.faces: Tuple[Face, ...] = tuple(sorted(faces, key=lambda f: (f.dim, f.vertices)))
        self._by_vertices = {f.vertices: f for f in self.faces}
        self._lower_covers = lower_covers

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def __contains__(self, face):
        if isinstance(face, Face):
            return self._by_vertices.get(face.vertices) == face
        return face in self._by_vertices

    def face(self, vertices: int) -> Face:
        try:
            return self._by_vertices[vertices]
        except KeyError:
            raise UnknownFace(f"no face with vertex set {bits(vertices)}") from None

    @property
    def top(self) -> Face:
        return self._by_vertices[(1 << self.v) - 1]

    def faces_of_dim(self, d: int) -> List[Face]:
        return [f for f in self.faces if f.dim == d]

    def lower_covers(self, face: Face) -> List[Face]:
        return [self._by_vertices[g] for g in self._lower_covers[face.vertices]]

    def f_vector(self) -> List[int]:
        """Face counts ``f_0, ..., f_n`` (``f_n = 1`` is the polytope)."""
        out = [0] * (self.n + 1)
        for f in self.faces:
            out[f.dim] += 1
        return out

    def hypergraph_edges(self) -> List[int]:
        """The image of ``sigma_tilde``: one facet mask per face."""
        return [f.facets for f in self.faces]


def sigma_tilde(lattice: FaceLattice, face) -> int:
    """Facet mask of all facets containing ``face``.

    ``face`` may be a :class:`Face` or a vertex mask.
    """
    key = face.vertices if isinstance(face, Face) else face
    if isinstance(face, Face) and face not in lattice:
        raise UnknownFace(f"face {bits(key)} does not belong to this lattice")
    return lattice.face(key).facets


def face_lattice(P: "IncidencePolytope") -> FaceLattice:
    return P.lattice


def _build_lattice(n: int, m: int, v: int, vertex_facets: Sequence[int], facet_vertices: Sequence[int]) -> FaceLattice:
    full = (1 << v) - 1
    # every face is an intersection of facets; close the facets under
    # intersection one facet at a time
    seen = {full}
    frontier = [fv for fv in facet_vertices if fv]
    seen.update(frontier)
    while frontier:
        nxt = []
        for F in frontier:
            for G in facet_vertices:
                inter = F & G
                if inter and inter not in seen:
                    seen.add(inter)
                    nxt.append(inter)
        frontier = nxt

    def facets_containing(vm: int) -> int:
        out = 0
        for i, fv in enumerate(facet_vertices):
            if vm & fv == vm:
                out |= 1 << i
        return out

    for j in range(v):
        if (1 << j) not in seen:
            raise NotGraded(f"vertex {j} is not a face on its own (its facets also contain other vertices)")

    covers: Dict[int, Tuple[int, ...]] = {}
    for F in seen:
        if popcount(F) == 1:
            covers[F] = ()
            continue
        cands = {F & G for G in facet_vertices if F & G != F and F & G}
        maximal = [c for c in cands if not any(c != d and c & d == c for d in cands)]
        covers[F] = tuple(sorted(maximal))

    dims: Dict[int, int] = {}
    for F in sorted(seen, key=popcount):
        lc = covers[F]
        if not lc:
            if popcount(F) != 1:
                raise NotGraded(f"minimal face {bits(F)} has more than one vertex")
            dims[F] = 0
        else:
            dims[F] = 1 + max(dims[g] for g in lc)
    for F, lc in covers.items():
        for g in lc:
            if dims[g] != dims[F] - 1:
                raise NotGraded(
                    f"face {bits(F)} (dim {dims[F]}) covers face {bits(g)} (dim {dims[g]})"
                )
    if dims[full] != n:
        raise RankMismatch(f"face lattice has rank {dims[full] + 1}, expected {n + 1}")

    faces = [Face(F, facets_containing(F) if F != full else 0, dims[F]) for F in seen]
    return FaceLattice(n, m, v, faces, covers)


class IncidencePolytope:
    """Combinatorial polytope of dimension ``n`` with ``v`` vertices and ``m`` facets.

    Args:
        incidence: ``v x m`` boolean matrix, entry ``(j, i)`` true iff vertex
            ``j`` lies on facet ``i``.
        n: the dimension.
        vertex_names: optional labels, one per vertex.
        facet_names: optional labels, one per facet.

    Raises:
        DuplicateRowOrColumn, NotGraded, RankMismatch, InvalidPolytope
    """

    def __init__(self, incidence, n: int, vertex_names: Optional[Sequence[str]] = None,
                 facet_names: Optional[Sequence[str]] = None):
        mat = np.array(incidence, dtype=bool)
        if mat.ndim != 2 or mat.shape[0] == 0:
            raise InvalidPolytope("incidence matrix must be a nonempty 2-d array")
        if n < 0:
            raise InvalidPolytope("dimension must be nonnegative")
        self.n = int(n)
        self.v, self.m = mat.shape
        self.incidence = mat
        self.incidence.setflags(write=False)
        self.vertex_facets: Tuple[int, ...] = tuple(
            mask_of(np.flatnonzero(row)) for row in mat
        )
        self.facet_vertices: Tuple[int, ...] = tuple(
            mask_of(np.flatnonzero(col)) for col in mat.T
        )
        self.vertex_names = tuple(vertex_names) if vertex_names is not None else None
        self.facet_names = tuple(facet_names) if facet_names is not None else None
        if self.vertex_names is not None and len(self.vertex_names) != self.v:
            raise InvalidPolytope("vertex_names length does not match the vertex count")
        if self.facet_names is not None and len(self.facet_names) != self.m:
            raise InvalidPolytope("facet_names length does not match the facet count")
        self._validate()

    def _validate(self):
        if len(set(self.vertex_facets)) != self.v:
            raise DuplicateRowOrColumn("two vertices have identical facet incidences")
        if len(set(self.facet_vertices)) != self.m:
            raise DuplicateRowOrColumn("two facets have identical vertex incidences")
        for j, row in enumerate(self.vertex_facets):
            if popcount(row) < self.n:
                raise InvalidPolytope(f"vertex {j} lies on fewer than n={self.n} facets")
        if self.n >= 1:
            for i, col in enumerate(self.facet_vertices):
                if popcount(col) < self.n:
                    raise InvalidPolytope(f"facet {i} has fewer than n={self.n} vertices")
        elif self.v != 1:
            raise RankMismatch("a 0-dimensional polytope has exactly one vertex")
        # building the lattice validates gradedness and rank
        _ = self.lattice

    @cached_property
    def lattice(self) -> FaceLattice:
        return _build_lattice(self.n, self.m, self.v, self.vertex_facets, self.facet_vertices)

    @property
    def is_simple(self) -> bool:
        return all(popcount(r) == self.n for r in self.vertex_facets)

    def __repr__(self):
        return f"IncidencePolytope(n={self.n}, v={self.v}, m={self.m})"

    def to_json(self) -> dict:
        verts = []
        for j, row in enumerate(self.vertex_facets):
            entry = {}
            if self.vertex_names is not None:
                entry["name"] = self.vertex_names[j]
            entry["on"] = bits(row)
            verts.append(entry)
        return {"n": self.n, "facets": self.m, "vertices": verts}

    @classmethod
    def from_json(cls, data: dict) -> "IncidencePolytope":
        m = int(data["facets"])
        rows = []
        names = []
        for entry in data["vertices"]:
            row = [False] * m
            for i in entry["on"]:
                if not 0 <= i < m:
                    raise InvalidPolytope(f"facet index {i} out of range 0..{m - 1}")
                row[i] = True
            rows.append(row)
            names.append(entry.get("name"))
        vnames = names if all(x is not None for x in names) else None
        return cls(np.array(rows, dtype=bool).reshape(len(rows), m), int(data["n"]), vertex_names=vnames)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def load(cls, path) -> "IncidencePolytope":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def from_incidence(matrix, n: int) -> IncidencePolytope:
    return IncidencePolytope(matrix, n)


def _from_rows(rows: Sequence[Iterable[int]], m: int, n: int, **kw) -> IncidencePolytope:
    mat = np.zeros((len(rows), m), dtype=bool)
    for j, row in enumerate(rows):
        for i in row:
            mat[j, i] = True
    return IncidencePolytope(mat, n, **kw)


def make_standard(kind: str, size: int) -> IncidencePolytope:
    """Standard combinatorial types: ``simplex``, ``cube``, ``cross``, ``polygon``.

    ``size`` is the dimension, except for ``polygon`` where it is the number
    of sides. Polygon vertex ``j`` lies on edges ``j`` and ``j + 1 (mod k)``.
    """
    if kind == "polygon":
        if size < 3:
            raise SizeOutOfRange("polygon needs at least 3 sides")
        return _from_rows([(j, (j + 1) % size) for j in range(size)], size, 2)
    if kind not in ("simplex", "cube", "cross"):
        raise SizeOutOfRange(f"unknown standard polytope {kind!r}")
    if size < 1:
        raise SizeOutOfRange(f"{kind} needs dimension at least 1")
    n = size
    if kind == "simplex":
        return _from_rows([[i for i in range(n + 1) if i != j] for j in range(n + 1)], n + 1, n)
    if kind == "cube":
        # facet 2k is x_k = 0, facet 2k+1 is x_k = 1
        rows = [[2 * k + x[k] for k in range(n)] for x in iproduct((0, 1), repeat=n)]
        return _from_rows(rows, 2 * n, n)
    # cross: vertex 2k is +e_k, 2k+1 is -e_k; facets are sign vectors
    signs = list(iproduct((0, 1), repeat=n))
    rows = []
    for k in range(n):
        for s in (0, 1):
            rows.append([i for i, eps in enumerate(signs) if eps[k] == s])
    return _from_rows(rows, 2**n, n)


def polar_dual(P: IncidencePolytope) -> IncidencePolytope:
    return IncidencePolytope(P.incidence.T.copy(), P.n, vertex_names=P.facet_names, facet_names=P.vertex_names)


def product(P: IncidencePolytope, Q: IncidencePolytope) -> IncidencePolytope:
    """Cartesian product; facets of ``P`` come first, then facets of ``Q``."""
    mat = np.zeros((P.v * Q.v, P.m + Q.m), dtype=bool)
    for p in range(P.v):
        for q in range(Q.v):
            mat[p * Q.v + q, : P.m] = P.incidence[p]
            mat[p * Q.v + q, P.m:] = Q.incidence[q]
    return IncidencePolytope(mat, P.n + Q.n)


def pyramid(Q: IncidencePolytope) -> IncidencePolytope:
    """Pyramid over ``Q``.

    Facet ``i < m`` is the pyramid over facet ``i`` of ``Q``; facet ``m`` is
    the base. The apex is the last vertex.
    """
    mat = np.zeros((Q.v + 1, Q.m + 1), dtype=bool)
    mat[: Q.v, : Q.m] = Q.incidence
    mat[: Q.v, Q.m] = True
    mat[Q.v, : Q.m] = True
    return IncidencePolytope(mat, Q.n + 1)


def flag_number(lattice: FaceLattice, dims: Iterable[int]) -> int:
    """Number of chains of proper faces whose dimensions are exactly ``dims``."""
    S = sorted(set(dims))
    for d in S:
        if not 0 <= d <= lattice.n - 1:
            raise DimensionOutOfRange(f"dimension {d} outside 0..{lattice.n - 1}")
    if not S:
        return 1
    layer = {f.vertices: 1 for f in lattice.faces_of_dim(S[0])}
    for d in S[1:]:
        nxt = {}
        for g in lattice.faces_of_dim(d):
            nxt[g.vertices] = sum(c for f, c in layer.items() if f & g.vertices == f)
        layer = nxt
    return sum(layer.values())


def _incidence_adjacency(P: IncidencePolytope) -> List[List[int]]:
    # vertices are nodes 0..v-1, facets are nodes v..v+m-1
    adj: List[List[int]] = [[] for _ in range(P.v + P.m)]
    for j, row in enumerate(P.vertex_facets):
        for i in bits(row):
            adj[j].append(P.v + i)
            adj[P.v + i].append(j)
    return adj


def _refine(adjs, colors):
    """Joint colour refinement of two graphs; None once their histograms differ."""
    while True:
        sigs = [
            [(c[x], tuple(sorted(c[y] for y in adj[x]))) for x in range(len(adj))]
            for adj, c in zip(adjs, colors)
        ]
        table = {sig: k for k, sig in enumerate(sorted(set(sigs[0]) | set(sigs[1])))}
        new = [[table[sig] for sig in s] for s in sigs]
        if sorted(new[0]) != sorted(new[1]):
            return None
        if len(table) == len(set(colors[0]) | set(colors[1])):
            return new
        colors = new


def _match(adjs, colors) -> bool:
    colors = _refine(adjs, colors)
    if colors is None:
        return False
    cG, cH = colors
    counts: Dict[int, int] = {}
    for c in cG:
        counts[c] = counts.get(c, 0) + 1
    open_cells = [c for c, k in counts.items() if k > 1]
    if not open_cells:
        where = {c: y for y, c in enumerate(cH)}
        phi = [where[c] for c in cG]
        return all(
            sorted(phi[y] for y in adjs[0][x]) == sorted(adjs[1][phi[x]]) for x in range(len(cG))
        )
    cell = min(open_cells, key=lambda c: (counts[c], c))
    x = cG.index(cell)
    fresh = max(max(cG), max(cH)) + 1
    for y in (y for y, c in enumerate(cH) if c == cell):
        nG, nH = list(cG), list(cH)
        nG[x] = nH[y] = fresh
        if _match(adjs, [nG, nH]):
            return True
    return False


def is_isomorphic(P: IncidencePolytope, Q: IncidencePolytope) -> bool:
    """Combinatorial equivalence (face lattices isomorphic).

    The lattice is determined by the incidence of its atoms and coatoms, so
    this compares vertex-facet incidence graphs up to relabeling, using
    colour refinement with individualization.
    """
    if (P.n, P.v, P.m) != (Q.n, Q.v, Q.m):
        return False
    if sorted(map(popcount, P.vertex_facets)) != sorted(map(popcount, Q.vertex_facets)):
        return False
    if sorted(map(popcount, P.facet_vertices)) != sorted(map(popcount, Q.facet_vertices)):
        return False
    kinds = [0] * P.v + [1] * P.m
    return _match([_incidence_adjacency(P), _incidence_adjacency(Q)], [list(kinds), list(kinds)])


def euler_poincare_sum(lattice: FaceLattice) -> int:
    """Alternating sum of face counts over all faces including the polytope."""
    return sum((-1) ** d * c for d, c in enumerate(lattice.f_vector()))
