"""Bounds, certificates and search for the Buchstaber number of a complex.

A rank-``r`` subtorus of ``T^m`` is encoded by a rank-``r`` direct-summand
sublattice ``L`` of ``Z^m``. It acts freely on the moment-angle complex of
``K`` when, for every maximal simplex ``sigma``, the projection of ``L`` onto
the coordinates outside ``sigma`` is split injective.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .complex import SimplicialComplex
from .errors import InvalidLattice, TimeBudgetExceeded
from .homology import smith_normal_form
from .polytope import bits, popcount

DEFAULT_BUDGET_MS = 5000
EXHAUSTIVE_LIMIT = 2_000_000

Matrix = Tuple[Tuple[int, ...], ...]


def _unimodular(M: Sequence[Sequence[int]], rank: int) -> bool:
    """True iff ``M`` has rank ``rank`` and all its invariant factors are 1."""
    factors, r = smith_normal_form(M)
    return r == rank and all(f == 1 for f in factors)


@dataclass(frozen=True)
class SubtorusLattice:
    """Row basis of a direct-summand sublattice of ``Z^m``."""

    basis: Matrix

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.basis)
        object.__setattr__(self, "basis", rows)
        if not rows:
            raise InvalidLattice("a subtorus lattice needs at least one basis row")
        if len({len(row) for row in rows}) != 1:
            raise InvalidLattice("basis rows have different lengths")
        if not _unimodular(rows, len(rows)):
            raise InvalidLattice("basis rows do not span a rank-r direct summand")

    @property
    def r(self) -> int:
        return len(self.basis)

    @property
    def m(self) -> int:
        return len(self.basis[0])

    def columns(self, cols: Sequence[int]) -> List[List[int]]:
        return [[row[c] for c in cols] for row in self.basis]

    def to_json(self) -> dict:
        return {"r": self.r, "basis": [list(row) for row in self.basis]}

    def text(self) -> str:
        return "\n".join(" ".join(f"{x:>2}" for x in row) for row in self.basis)


def block_diagonal(A: SubtorusLattice, B: SubtorusLattice) -> SubtorusLattice:
    rows = [row + (0,) * B.m for row in A.basis] + [(0,) * A.m + row for row in B.basis]
    return SubtorusLattice(tuple(rows))


@dataclass
class BuchstaberResult:
    lower: int
    upper: int
    gamma: int
    certificate: Optional[SubtorusLattice] = None
    search_status: str = "not run"

    @property
    def exact(self) -> Optional[int]:
        return self.lower if self.lower == self.upper else None

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "gamma": self.gamma,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "search": self.search_status,
        }

    def text(self) -> str:
        if self.exact is None:
            return f"s in [{self.lower}, {self.upper}]"
        if self.certificate is None:
            return f"s = {self.exact}"
        c = self.certificate
        return f"s = {self.exact} (certificate: {c.r}x{c.m} matrix)\n{c.text()}"


# ------------------------------------------------------------------ coloring


def _adjacency(K: SimplicialComplex) -> List[int]:
    adj = [0] * K.m
    for a, b in K.edges_graph():
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def _greedy(adj: List[int], order: Sequence[int]) -> Dict[int, int]:
    color: Dict[int, int] = {}
    for v in order:
        used = {color[u] for u in bits(adj[v]) if u in color}
        color[v] = next(c for c in itertools.count() if c not in used)
    return color


def _clique_lower(adj: List[int], verts: Sequence[int]) -> int:
    best = 1 if verts else 0
    for v in sorted(verts, key=lambda u: -popcount(adj[u])):
        clique = 1 << v
        cand = adj[v]
        while cand:
            u = max(bits(cand), key=lambda w: popcount(adj[w] & cand))
            clique |= 1 << u
            cand &= adj[u]
        best = max(best, popcount(clique))
    return best


def coloring(K: SimplicialComplex, budget_ms: Optional[int] = None) -> Dict[int, int]:
    """An optimal proper coloring of the 1-skeleton of ``K``.

    Branch and bound in DSATUR order, seeded with a greedy upper bound and a
    greedy clique lower bound. Raises TimeBudgetExceeded, carrying the best
    coloring found, when ``budget_ms`` runs out.
    """
    adj = _adjacency(K)
    verts = list(range(K.m))
    if not verts:
        return {}
    best = _greedy(adj, sorted(verts, key=lambda v: -popcount(adj[v])))
    best_k = max(best.values()) + 1
    lower = _clique_lower(adj, verts)
    if best_k == lower:
        return best
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000
    color: Dict[int, int] = {}
    nodes = 0

    def pick() -> int:
        # most distinct neighbour colours, ties by degree
        return max(
            (v for v in verts if v not in color),
            key=lambda v: (len({color[u] for u in bits(adj[v]) if u in color}), popcount(adj[v])),
        )

    def search(used: int) -> bool:
        nonlocal best, best_k, nodes
        nodes += 1
        if deadline is not None and nodes % 256 == 0 and time.monotonic() > deadline:
            raise TimeBudgetExceeded("coloring search timed out", best=(lower, best_k, dict(best)))
        if len(color) == len(verts):
            best, best_k = dict(color), used
            return best_k == lower
        v = pick()
        taken = {color[u] for u in bits(adj[v]) if u in color}
        for c in range(min(used + 1, best_k - 1)):
            if c in taken:
                continue
            color[v] = c
            if search(max(used, c + 1)):
                return True
            del color[v]
        return False

    search(0)
    return best


def gamma(K: SimplicialComplex, budget_ms: Optional[int] = None) -> int:
    """Chromatic number of the 1-skeleton of ``K``."""
    col = coloring(K, budget_ms)
    return max(col.values()) + 1 if col else 0


# ---------------------------------------------------------------- freeness


def subtorus_free_check(K: SimplicialComplex, S: SubtorusLattice) -> bool:
    """Whether the subtorus given by ``S`` acts freely.

    Checked on maximal simplices only: the coordinate stabilizers grow along
    faces, so the maximal ones dominate.
    """
    if S.m != K.m:
        raise InvalidLattice(f"lattice lives in Z^{S.m}, complex has m = {K.m}")
    full = (1 << K.m) - 1
    for sigma in K.maximal:
        rest = bits(full & ~sigma)
        if len(rest) < S.r:
            return False
        if not _unimodular(S.columns(rest), S.r):
            return False
    return True


def _color_certificate(col: Dict[int, int], m: int) -> Optional[SubtorusLattice]:
    """Kernel of ``e_i -> e_{color(i)}``: differences within each colour class."""
    classes: Dict[int, List[int]] = {}
    for v in range(m):
        classes.setdefault(col.get(v, 0), []).append(v)
    rows = []
    for members in classes.values():
        base = members[0]
        for v in members[1:]:
            row = [0] * m
            row[v], row[base] = 1, -1
            rows.append(tuple(row))
    return SubtorusLattice(tuple(rows)) if rows else None


def _diagonal(m: int) -> SubtorusLattice:
    return SubtorusLattice(((1,) * m,))


def s_bounds(K: SimplicialComplex, gamma_budget_ms: Optional[int] = None) -> BuchstaberResult:
    """Lower and upper bounds from colorings and coordinate stabilizers.

    ``lower = max(1, m - gamma)`` and
    ``upper = min(m - dim K - 1, m - ceil(log2(gamma + 1)))``. The lower
    bound always comes with a certificate.
    """
    m = K.m
    if K.is_void or m == 0:
        raise ValueError("bounds need a nonempty complex on a nonempty ground set")
    col = coloring(K, gamma_budget_ms)
    g = max(col.values()) + 1
    upper = min(m - K.dim - 1, m - math.ceil(math.log2(g + 1)))
    if upper <= 0:
        return BuchstaberResult(0, 0, g, None, "bounds")
    cert = _color_certificate(col, m) if m - g >= 1 else None
    if cert is None:
        cert = _diagonal(m)
    if not subtorus_free_check(K, cert):
        raise AssertionError("bound certificate failed the freeness check")
    return BuchstaberResult(cert.r, upper, g, cert, "bounds")


# ------------------------------------------------------------------ search


def integer_kernel(M: Sequence[Sequence[int]], m: int) -> List[Tuple[int, ...]]:
    """Basis of the integer kernel of the ``k x m`` matrix ``M``.

    Column operations reduce ``M`` to ``[H | 0]`` while tracking the
    unimodular transform; its columns past the rank span the kernel, which
    is automatically saturated.
    """
    A = [list(row) for row in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def colop(i: int, j: int, a: int, b: int, c: int, d: int):
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
        for T in (A, U):
            for row in T:
                x, y = row[i], row[j]
                row[i], row[j] = a * x + b * y, c * x + d * y

    piv = 0
    for r in range(len(A)):
        if piv >= m:
            break
        for j in range(piv + 1, m):
            x, y = A[r][piv], A[r][j]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            colop(piv, j, s, t, -y // g, x // g)
        if A[r][piv] != 0:
            piv += 1
    return [tuple(U[i][j] for i in range(m)) for j in range(piv, m)]


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, s, t = _xgcd(b, a % b)
    return g, t, s - (a // b) * t


def _column_pool(k: int, bound: int) -> List[Tuple[int, ...]]:
    pool = []
    for v in itertools.product(range(-bound, bound + 1), repeat=k):
        nz = [x for x in v if x]
        if not nz or nz[0] < 0:
            continue
        if math.gcd(*nz) != 1:
            continue
        pool.append(v)
    pool.sort(key=lambda v: (sum(map(abs, v)), [-abs(x) for x in v], v))
    return pool


def _find_quotient(
    K: SimplicialComplex, k: int, bound: int, deadline: float, rng: random.Random
) -> Tuple[Optional[List[Tuple[int, ...]]], bool]:
    """Look for a ``k x m`` matrix whose kernel is a free rank-(m-k) subtorus.

    Works with columns: every maximal simplex must map to split-injective
    column sets, and the whole matrix must be onto ``Z^k``. Small spaces are
    walked in a fixed order, larger ones in a random order drawn from
    ``rng``. Returns ``(columns, exhausted)``.
    """
    m = K.m
    anchor = max(K.maximal, key=popcount)
    if popcount(anchor) > k:
        return None, True
    order = bits(anchor)
    adj = _adjacency(K)
    rest = set(range(m)) - set(order)
    while rest:
        placed = sum(1 << v for v in order)
        nxt = max(sorted(rest), key=lambda v: (popcount(adj[v] & placed), popcount(adj[v])))
        order.append(nxt)
        rest.discard(nxt)
    position = {v: i for i, v in enumerate(order)}
    # for each position, the distinct partial simplices ending there
    checks: List[List[List[int]]] = [[] for _ in range(m)]
    for sigma in K.maximal:
        pos = sorted(position[v] for v in bits(sigma))
        for end in range(1, len(pos)):
            part = pos[: end + 1]
            if part not in checks[pos[end]]:
                checks[pos[end]].append(part)

    fixed = [tuple(int(i == j) for i in range(k)) for j in range(popcount(anchor))]
    pool = _column_pool(k, bound)
    free_cols = m - len(fixed)
    if len(pool) ** free_cols <= EXHAUSTIVE_LIMIT:
        rng = None
    cols: List[Tuple[int, ...]] = list(fixed)
    nodes = 0

    def ok(depth: int) -> bool:
        for part in checks[depth]:
            sub = [[cols[p][row] for p in part] for row in range(k)]
            if not _unimodular(sub, len(part)):
                return False
        return True

    def dfs(depth: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes % 128 == 0 and time.monotonic() > deadline:
            raise TimeoutError
        if depth == m:
            return _unimodular([list(c) for c in zip(*cols)], k)
        cand = pool if rng is None else rng.sample(pool, len(pool))
        for c in cand:
            cols.append(c)
            if ok(depth) and dfs(depth + 1):
                return True
            cols.pop()
        return False

    for depth in range(len(fixed)):
        if not ok(depth):
            return None, True
    try:
        found = dfs(len(fixed))
    except TimeoutError:
        return None, False
    if not found:
        return None, True
    inverse = [None] * m
    for i, v in enumerate(order):
        inverse[v] = cols[i]
    return inverse, True


def s_search(
    K: SimplicialComplex,
    max_entry: int = 2,
    budget_ms: int = DEFAULT_BUDGET_MS,
    seed: int = 0,
    start: Optional[BuchstaberResult] = None,
    raise_on_timeout: bool = False,
) -> BuchstaberResult:
    """Raise the lower bound by finding explicit free subtori.

    Starting at rank ``lower + 1``, searches quotient matrices with entries in
    ``[-max_entry, max_entry]``: deterministically when the space is small,
    otherwise in a seeded random order. Every certificate is re-verified.
    Exactness is claimed only when the lower bound meets the upper bound.
    """
    res = start or s_bounds(K)
    if res.upper <= 0:
        return res
    deadline = time.monotonic() + budget_ms / 1000
    rng = random.Random(seed)
    status = "complete"
    r = res.lower + 1
    while r <= res.upper:
        k = K.m - r
        found, exhausted = _find_quotient(K, k, max_entry, deadline, rng)
        if found is None:
            status = "no certificate" if exhausted else "timeout"
            break
        kernel = integer_kernel([list(row) for row in zip(*found)], K.m)
        cert = SubtorusLattice(tuple(kernel))
        if cert.r != r or not subtorus_free_check(K, cert):
            raise AssertionError("search produced an invalid certificate")
        res = BuchstaberResult(r, res.upper, res.gamma, cert, status)
        r += 1
    res.search_status = status
    if status == "timeout" and raise_on_timeout:
        raise TimeBudgetExceeded("certificate search timed out", best=res)
    return res


def s_bounds_product(
    P: BuchstaberResult, KP: SimplicialComplex, Q: BuchstaberResult, KQ: SimplicialComplex
) -> BuchstaberResult:
    """Bounds for a product from bounds of the factors.

    The lower bound concatenates the certificates block-diagonally; the upper
    bound is ``min(upper_P + m_Q - dim K_Q, upper_Q + m_P - dim K_P)``,
    intersected with the direct bounds of the product's nerve.
    """
    from .complex import join

    K = join(KP, KQ)
    direct = s_bounds(K)
    upper = min(direct.upper, P.upper + KQ.m - KQ.dim, Q.upper + KP.m - KP.dim)
    if P.certificate and Q.certificate and P.lower + Q.lower > direct.lower:
        cert = block_diagonal(P.certificate, Q.certificate)
        if not subtorus_free_check(K, cert):
            raise AssertionError("block certificate failed the freeness check")
        return BuchstaberResult(cert.r, upper, direct.gamma, cert, "product")
    return BuchstaberResult(direct.lower, upper, direct.gamma, direct.certificate, "product")


__all__ = [
    "SubtorusLattice",
    "BuchstaberResult",
    "block_diagonal",
    "coloring",
    "gamma",
    "subtorus_free_check",
    "s_bounds",
    "s_search",
    "s_bounds_product",
    "integer_kernel",
]
