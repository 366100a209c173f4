"""Bigraded Betti numbers of moment-angle complexes via Hochster's formula.

``beta^{-i,2j}(K)`` is the sum, over vertex sets ``omega`` of size ``j``, of
the rank of the reduced homology of the full subcomplex ``K_omega`` in
degree ``j - i - 1``. Table keys are ``(i, j)`` with ``i >= 0``.
"""

from __future__ import annotations

import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .complex import SimplicialComplex, _compress, antichain, nerve_complex
from .errors import CapExceeded
from .homology import reduced_homology
from .polytope import IncidencePolytope, bits, popcount

DEFAULT_MAX_M = 20
PARALLEL_MIN_M = 12


@dataclass
class BettiStats:
    subsets: int = 0
    pruned: int = 0
    computed: int = 0
    rank_total: int = 0
    seconds: float = 0.0
    workers: int = 1

    @property
    def pruned_fraction(self) -> float:
        return self.pruned / self.subsets if self.subsets else 0.0

    def to_json(self) -> dict:
        return {
            "subsets": self.subsets,
            "pruned": self.pruned,
            "computed": self.computed,
            "pruned_fraction": round(self.pruned_fraction, 4),
            "seconds": round(self.seconds, 3),
            "workers": self.workers,
        }


@dataclass
class BettiTable:
    """Sparse table of bigraded Betti numbers, keyed by ``(i, j)``."""

    m: int
    entries: Dict[Tuple[int, int], int]
    torsion_omegas: List[int] = field(default_factory=list)
    provenance: Optional[Dict[Tuple[int, int], List[Tuple[int, int]]]] = None
    stats: BettiStats = field(default_factory=BettiStats)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.entries == other.entries

    def total(self) -> int:
        return sum(self.entries.values())

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        """Entries keyed by the bidegree ``(-i, 2j)`` as usually written."""
        return {(-i, 2 * j): v for (i, j), v in sorted(self.entries.items())}

    def to_json(self) -> dict:
        return {
            "betti": [{"i": i, "j": j, "value": v} for (i, j), v in sorted(self.entries.items())],
            "torsion_omegas": [bits(w) for w in self.torsion_omegas],
        }

    @classmethod
    def from_json(cls, data: dict, m: int = 0) -> "BettiTable":
        entries = {(d["i"], d["j"]): d["value"] for d in data["betti"]}
        from .polytope import mask_of

        return cls(m, entries, [mask_of(w) for w in data.get("torsion_omegas", [])])

    def text(self) -> str:
        """Aligned grid: rows ``-i``, columns ``2j``."""
        if not self.entries:
            return "(empty)"
        max_i = max(i for i, _ in self.entries)
        max_j = max(j for _, j in self.entries)
        cols = list(range(0, max_j + 1))
        width = max(4, max(len(str(v)) for v in self.entries.values()) + 1)
        head = "     " + "".join(f"{2 * j:>{width}}" for j in cols)
        lines = [head]
        for i in range(max_i + 1):
            cells = "".join(
                f"{self.entries.get((i, j), 0) or '.':>{width}}" for j in cols
            )
            lines.append(f"{-i:>4} {cells}")
        return "\n".join(lines)


def _threads(workers: Optional[int]) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("POLYNERVE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


@lru_cache(maxsize=1 << 15)
def _profile(shape: Tuple[int, ...], strict: bool) -> Tuple[Tuple[Tuple[int, int], ...], bool]:
    width = max(shape).bit_length() if shape else 0
    prof = reduced_homology(SimplicialComplex(max(width, 1), shape), torsion=strict)
    return tuple(prof.nonzero_ranks().items()), prof.has_torsion


def _is_cone(gen: Tuple[int, ...]) -> bool:
    common = -1
    for s in gen:
        common &= s
        if not common:
            return False
    return bool(common)


def _chunk(maximal: Tuple[int, ...], start: int, stop: int, prune: bool, strict: bool, prov: bool):
    table: Counter = Counter()
    torsion: List[int] = []
    provenance: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    pruned = computed = rank_total = 0
    for omega in range(start, stop):
        gen = antichain(M & omega for M in maximal)
        j = popcount(omega)
        if prune and _is_cone(gen):
            pruned += 1
            continue
        computed += 1
        ranks, tors = _profile(_compress(gen), strict)
        if tors:
            torsion.append(omega)
        for d, r in ranks:
            i = j - d - 1
            table[(i, j)] += r
            rank_total += r
            if prov:
                provenance.setdefault((i, j), []).append((omega, r))
    return table, torsion, provenance, pruned, computed, rank_total


def bigraded_betti(
    K: SimplicialComplex,
    *,
    prune: bool = True,
    strict_torsion: bool = False,
    provenance: bool = False,
    max_m: int = DEFAULT_MAX_M,
    workers: Optional[int] = None,
) -> BettiTable:
    """Hochster's formula summed over all ``2**m`` full subcomplexes.

    Args:
        K: the complex; its ground set size ``m`` must not exceed ``max_m``.
        prune: skip vertex sets whose full subcomplex is a cone (acyclic).
        strict_torsion: compute integral homology and record every vertex set
            whose full subcomplex has torsion. Ranks are the same either way.
        provenance: keep, per table entry, the contributing vertex sets.
        workers: process count; defaults to ``POLYNERVE_THREADS`` or the CPU
            count. Small complexes always run in-process.
    """
    m = K.m
    if m > max_m:
        raise CapExceeded(f"Betti computation limited to m <= {max_m} (got {m})")
    t0 = time.perf_counter()
    n = 1 << m
    nw = _threads(workers)
    if m < PARALLEL_MIN_M:
        nw = 1
    args = (K.maximal, prune, strict_torsion, provenance)
    if nw == 1:
        parts = [_chunk(K.maximal, 0, n, prune, strict_torsion, provenance)]
    else:
        step = max(1, n // (nw * 8))
        bounds = [(a, min(n, a + step)) for a in range(0, n, step)]
        with ProcessPoolExecutor(max_workers=nw) as ex:
            futs = [ex.submit(_chunk, K.maximal, a, b, *args[1:]) for a, b in bounds]
            parts = [f.result() for f in futs]

    table: Counter = Counter()
    torsion: List[int] = []
    prov: Dict[Tuple[int, int], List[Tuple[int, int]]] = {} if provenance else None
    stats = BettiStats(subsets=n, workers=nw)
    for t, tor, pv, pr, co, rt in parts:
        table.update(t)
        torsion.extend(tor)
        if provenance:
            for k, v in pv.items():
                prov.setdefault(k, []).extend(v)
        stats.pruned += pr
        stats.computed += co
        stats.rank_total += rt
    stats.seconds = time.perf_counter() - t0
    entries = {k: v for k, v in sorted(table.items()) if v}
    if prov is not None:
        prov = {k: sorted(v) for k, v in sorted(prov.items())}
    return BettiTable(m, entries, sorted(torsion), prov, stats)


def betti_of_polytope(P: IncidencePolytope, **config) -> BettiTable:
    return bigraded_betti(nerve_complex(P), **config)


def poincare_vector(T: BettiTable) -> List[int]:
    """Total Betti numbers indexed by degree ``p = -i + 2j``."""
    if not T.entries:
        return []
    top = max(2 * j - i for i, j in T.entries)
    out = [0] * (top + 1)
    for (i, j), v in T.entries.items():
        out[2 * j - i] += v
    return out


def product_table(A: BettiTable, B: BettiTable) -> BettiTable:
    """Convolution of two tables (the Betti table of a join)."""
    out: Counter = Counter()
    for (i1, j1), a in A.entries.items():
        for (i2, j2), b in B.entries.items():
            out[(i1 + i2, j1 + j2)] += a * b
    return BettiTable(A.m + B.m, dict(sorted(out.items())))
