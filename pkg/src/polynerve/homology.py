"""Exact reduced simplicial homology over the integers.

The chain complex is augmented: the empty simplex is the single generator
in degree -1, so the complex ``{empty}`` has reduced homology of rank 1 in
degree -1.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Set, TextIO, Tuple

from .complex import SimplicialComplex, f_polynomial
from .errors import CapExceeded
from .polytope import bits, popcount

DEBUG = os.environ.get("POLYNERVE_DEBUG", "") not in ("", "0")

# ------------------------------------------------------------ Smith normal form


def smith_normal_form(M: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], int]:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` and the rank ``r`` of ``M``."""
    rows = [{j: int(x) for j, x in enumerate(row) if x} for row in M]
    diag = _diagonalize([r for r in rows if r])
    factors = invariant_factors(diag)
    return factors, len(factors)


def invariant_factors(diagonal: Iterable[int]) -> Tuple[int, ...]:
    """Turn the nonzero entries of a diagonal matrix into a divisibility chain."""
    vals = [abs(d) for d in diagonal if d]
    ones = sum(1 for d in vals if d == 1)
    rest = [d for d in vals if d != 1]
    # diag(a, b) is equivalent to diag(gcd, lcm)
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            g = gcd(a, b)
            rest[i], rest[j] = g, a // g * b
    rest.sort()
    return (1,) * ones + tuple(rest)


def _diagonalize(rows: List[Dict[int, int]]) -> List[int]:
    """Nonzero diagonal entries of some diagonal form of the sparse matrix.

    Rows are mutated. Unit pivots are eliminated first while the matrix is
    sparse; whatever is left goes through a min-modulus pivoting loop.
    """
    diag: List[int] = []
    col_rows: Dict[int, Set[int]] = {}
    live: Dict[int, Dict[int, int]] = {}
    for r, row in enumerate(rows):
        live[r] = row
        for c in row:
            col_rows.setdefault(c, set()).add(r)

    def eliminate_with_unit(r: int, c: int):
        prow = live.pop(r)
        u = prow[c]  # +-1
        for c2 in prow:
            col_rows[c2].discard(r)
        for r2 in list(col_rows.get(c, ())):
            row2 = live[r2]
            q = row2[c] * u
            for c2, x in prow.items():
                v = row2.get(c2, 0) - q * x
                if v:
                    if c2 not in row2:
                        col_rows[c2].add(r2)
                    row2[c2] = v
                elif c2 in row2:
                    del row2[c2]
                    col_rows[c2].discard(r2)
            if not row2:
                del live[r2]
        diag.append(1)

    progress = True
    while progress:
        progress = False
        for r in list(live):
            row = live.get(r)
            if row is None:
                continue
            for c, x in row.items():
                if x == 1 or x == -1:
                    eliminate_with_unit(r, c)
                    progress = True
                    break

    rest = [row for row in live.values() if row]
    if rest:
        diag.extend(_diagonalize_dense(rest))
    return diag


def _diagonalize_dense(sparse_rows: List[Dict[int, int]]) -> List[int]:
    cols = sorted({c for row in sparse_rows for c in row})
    idx = {c: i for i, c in enumerate(cols)}
    A = [[0] * len(cols) for _ in sparse_rows]
    for i, row in enumerate(sparse_rows):
        for c, x in row.items():
            A[i][idx[c]] = x
    diag = []
    while A and A[0]:
        # pivot on an entry of minimal modulus
        best = None
        for i, row in enumerate(A):
            for j, x in enumerate(row):
                if x and (best is None or abs(x) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        pi, pj = best
        while True:
            p = A[pi][pj]
            moved = False
            for i, row in enumerate(A):
                if i != pi and row[pj]:
                    q = row[pj] // p
                    prow = A[pi]
                    for j in range(len(row)):
                        if prow[j]:
                            row[j] -= q * prow[j]
                    if row[pj]:
                        pi, moved = i, True
                        break
            if moved:
                continue
            prow = A[pi]
            for j in range(len(prow)):
                if j != pj and prow[j]:
                    q = prow[j] // p
                    # column pj is zero outside row pi, so the column
                    # operation only touches row pi
                    prow[j] -= q * p
                    if prow[j]:
                        pj, moved = j, True
                        break
            if not moved:
                break
        diag.append(abs(A[pi][pj]))
        del A[pi]
        for row in A:
            del row[pj]
        A = [row for row in A if any(row)]
    return diag


def rational_rank(columns: Iterable[Dict[int, int]]) -> int:
    """Rank over the rationals of a matrix given as sparse integer columns."""
    rank, _ = _reduce_columns(columns, ())
    return rank


def _reduce_columns(columns: Iterable[Dict[int, int]], skip) -> Tuple[int, Set[int]]:
    """Fraction-free column reduction; returns (rank, pivot rows).

    Columns whose position is in ``skip`` are known to reduce to zero and are
    not processed.
    """
    pivots: Dict[int, Dict[int, int]] = {}
    for pos, col in enumerate(columns):
        if pos in skip or not col:
            continue
        c = dict(col)
        while c:
            low = max(c)
            p = pivots.get(low)
            if p is None:
                pivots[low] = c
                break
            a, b = c[low], p[low]
            if b == 1 or b == -1:
                q = a * b
                for k, x in p.items():
                    v = c.get(k, 0) - q * x
                    if v:
                        c[k] = v
                    else:
                        c.pop(k, None)
            else:
                g = gcd(a, b)
                fa, fb = b // g, a // g
                new = {}
                for k in set(c) | set(p):
                    v = fa * c.get(k, 0) - fb * p.get(k, 0)
                    if v:
                        new[k] = v
                if new:
                    cg = 0
                    for v in new.values():
                        cg = gcd(cg, v)
                        if cg == 1:
                            break
                    if cg > 1:
                        new = {k: v // cg for k, v in new.items()}
                c = new
    return len(pivots), set(pivots)


# -------------------------------------------------------------- chain complex


@dataclass
class ChainBoundary:
    """Augmented chain complex of a simplicial complex.

    ``bases[d]`` lists the simplices of dimension ``d`` (cardinality
    ``d + 1``) as ascending bit masks; ``bases[-1] == [0]``.
    """

    bases: Dict[int, List[int]]
    index: Dict[int, Dict[int, int]] = field(repr=False)

    @property
    def top(self) -> int:
        return max(self.bases)

    def columns(self, d: int) -> List[Dict[int, int]]:
        """Sparse columns of the boundary map from degree ``d`` to ``d - 1``."""
        if d not in self.bases or d - 1 not in self.bases:
            return []
        lower = self.index[d - 1]
        out = []
        for s in self.bases[d]:
            col = {}
            sign = 1
            rest = s
            while rest:
                low = rest & -rest
                col[lower[s ^ low]] = sign
                sign = -sign
                rest ^= low
            out.append(col)
        return out

    def matrix(self, d: int) -> List[List[int]]:
        rows = len(self.bases.get(d - 1, ()))
        cols = self.columns(d)
        M = [[0] * len(cols) for _ in range(rows)]
        for j, col in enumerate(cols):
            for i, x in col.items():
                M[i][j] = x
        return M

    def check_square_zero(self) -> bool:
        for d in range(1, self.top + 1):
            upper = self.columns(d)
            lower = self.columns(d - 1)
            for col in upper:
                acc: Dict[int, int] = {}
                for i, x in col.items():
                    for k, y in lower[i].items():
                        acc[k] = acc.get(k, 0) + x * y
                if any(acc.values()):
                    return False
        return True


def chain_complex(K: SimplicialComplex) -> ChainBoundary:
    if K.m > 62:
        raise CapExceeded("homology is limited to complexes on at most 62 vertices")
    bases: Dict[int, List[int]] = {}
    for s in K.simplices():
        bases.setdefault(popcount(s) - 1, []).append(s)
    index = {d: {s: i for i, s in enumerate(b)} for d, b in bases.items()}
    cb = ChainBoundary(bases, index)
    if DEBUG and not cb.check_square_zero():
        raise AssertionError("boundary of boundary is not zero")
    return cb


@dataclass
class HomologyProfile:
    """Reduced homology: free rank and torsion coefficients per degree."""

    ranks: Dict[int, int]
    torsion: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    torsion_computed: bool = True

    def rank(self, d: int) -> int:
        return self.ranks.get(d, 0)

    def nonzero_ranks(self) -> Dict[int, int]:
        return {d: r for d, r in sorted(self.ranks.items()) if r}

    def torsion_nonempty(self) -> Dict[int, Tuple[int, ...]]:
        return {d: t for d, t in sorted(self.torsion.items()) if t}

    @property
    def has_torsion(self) -> bool:
        return any(self.torsion.values())

    def is_acyclic(self) -> bool:
        return not self.nonzero_ranks() and not self.has_torsion

    def is_sphere(self, d: int) -> bool:
        return self.nonzero_ranks() == {d: 1} and not self.has_torsion

    def alternating_sum(self) -> int:
        return sum((-1) ** (d % 2) * r for d, r in self.ranks.items())


def reduced_homology(K: SimplicialComplex, torsion: bool = True) -> HomologyProfile:
    """Reduced integral homology of ``K``.

    With ``torsion=False`` only ranks are computed, by exact elimination over
    the rationals; torsion is then left empty and ``torsion_computed`` is
    False.
    """
    if K.is_void:
        return HomologyProfile({}, {}, torsion)
    cb = chain_complex(K)
    top = cb.top
    sizes = {d: len(cb.bases.get(d, ())) for d in range(-1, top + 1)}
    bd_rank = {d: 0 for d in range(-1, top + 2)}
    tors: Dict[int, Tuple[int, ...]] = {}
    if sizes.get(0, 0):
        bd_rank[0] = 1
    if torsion:
        for d in range(1, top + 1):
            factors, r = smith_normal_form(cb.matrix(d)) if sizes[d] else ((), 0)
            bd_rank[d] = r
            tors[d - 1] = tuple(f for f in factors if f > 1)
    else:
        cleared: Set[int] = set()
        for d in range(top, 0, -1):
            r, lows = _reduce_columns(cb.columns(d), cleared)
            bd_rank[d] = r
            cleared = lows
    ranks = {d: sizes[d] - bd_rank[d] - bd_rank[d + 1] for d in range(-1, top + 1)}
    return HomologyProfile(ranks, tors, torsion)


def euler_characteristic(K: SimplicialComplex) -> int:
    """Euler characteristic over the nonempty simplices, ``1 - f_K(-1)``."""
    return 1 - f_polynomial(K)(-1)


def is_sphere_homology(K: SimplicialComplex, d: int) -> bool:
    if d < -1:
        raise ValueError("sphere dimension must be at least -1")
    if d == -1:
        return K.maximal == (0,)
    return reduced_homology(K, torsion=True).is_sphere(d)


def dump_boundary(K: SimplicialComplex, stream: TextIO) -> None:
    """Write every boundary matrix in MatrixMarket coordinate format."""
    cb = chain_complex(K)
    for d in range(0, cb.top + 1):
        cols = cb.columns(d)
        nnz = sum(len(c) for c in cols)
        stream.write("%%MatrixMarket matrix coordinate integer general\n")
        stream.write(f"% boundary degree {d} -> {d - 1}\n")
        stream.write(f"{len(cb.bases[d - 1])} {len(cols)} {nnz}\n")
        for j, col in enumerate(cols):
            for i, x in sorted(col.items()):
                stream.write(f"{i + 1} {j + 1} {x}\n")
