"""Explicit 2-rankings for the graph families with known optimal bounds.

Every function here returns something :mod:`kranking.verify` can check;
the test suite verifies all of them rather than trusting the arithmetic.
Matrix constructions return 0-based :class:`~kranking.verify.RankMatrix`
objects; graph constructions return 1-based :class:`~kranking.verify.Ranking`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .graph import (
    Graph,
    GraphError,
    GraphSizeError,
    MAX_HYPERCUBE_DIM,
    cycle,
    distance_power,
    product_of,
)
from .verify import Ranking, RankMatrix, RankingError

MAX_FACTORIAL_M = 8


class ConstructionError(RuntimeError):
    """A construction could not produce a ranking (signals a bug)."""


# ----------------------------------------------------------------------
# hypercube


@dataclass(frozen=True)
class GF2Matrix:
    """``k x d`` matrix over GF(2), stored column-wise as ``k``-bit integers.

    For the hypercube split ``d = t + 2**k`` the first ``t`` columns must be
    distinct and nonzero, and the last ``2**k`` a permutation of GF(2)^k.
    """

    k: int
    columns: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.columns)

    @property
    def t(self) -> int:
        return self.d - (1 << self.k)

    def bits(self) -> list[list[int]]:
        """Row-major 0/1 entries (row 0 is the most significant bit)."""
        return [[(c >> (self.k - 1 - i)) & 1 for c in self.columns] for i in range(self.k)]

    def apply(self, low: int, high: int) -> int:
        """``A u`` for ``u = (u-, u+)`` packed as integers, MSB = first coordinate."""
        acc = 0
        t = self.t
        for j in range(t):
            if (low >> (t - 1 - j)) & 1:
                acc ^= self.columns[j]
        width = 1 << self.k
        for j in range(width):
            if (high >> (width - 1 - j)) & 1:
                acc ^= self.columns[t + j]
        return acc

    def validate(self) -> None:
        t = self.t
        if t < 0 or t > (1 << self.k) - 1:
            raise RankingError(f"d={self.d} is not t + 2^{self.k} with 0 <= t < 2^{self.k}")
        low = self.columns[:t]
        if 0 in low or len(set(low)) != t:
            raise RankingError("first t columns must be distinct and nonzero")
        if sorted(self.columns[t:]) != list(range(1 << self.k)):
            raise RankingError("last 2^k columns must permute GF(2)^k")


def split_dimension(d: int) -> tuple[int, int]:
    """``(k, t)`` with ``d = t + 2**k``, ``k >= 1``, ``0 <= t < 2**k``."""
    if d < 2:
        raise ValueError(f"split needs d >= 2, got {d}")
    k = d.bit_length() - 1
    return k, d - (1 << k)


def canonical_matrix(d: int, high_order: Sequence[int] | None = None) -> GF2Matrix:
    """Binary encodings of ``1..t`` then of ``0..2**k - 1`` (or ``high_order``)."""
    k, t = split_dimension(d)
    high = tuple(range(1 << k)) if high_order is None else tuple(high_order)
    mat = GF2Matrix(k, tuple(range(1, t + 1)) + high)
    mat.validate()
    return mat


def hypercube_ranks(d: int, matrix: GF2Matrix | None = None) -> list[int]:
    """0-based ranks in ``[0, d]`` for ``Q_d``, indexed by vertex id.

    ``matrix`` overrides the top-level GF(2) matrix; lower levels of the
    recursion always use :func:`canonical_matrix`.
    """
    if d < 0 or d > MAX_HYPERCUBE_DIM:
        raise GraphSizeError(f"hypercube dimension must be in [0, {MAX_HYPERCUBE_DIM}], got {d}")
    if d <= 1:
        return list(range(1 << d))
    a = matrix if matrix is not None else canonical_matrix(d)
    if a.d != d:
        raise RankingError(f"matrix has {a.d} columns, expected {d}")
    a.validate()
    k, t = a.k, a.t
    width = 1 << k
    inner = hypercube_ranks(t)
    mask = (1 << width) - 1
    out = [0] * (1 << d)
    for u in range(1 << d):
        low, high = u >> width, u & mask
        if high.bit_count() & 1:
            out[u] = t + 1 + a.apply(low, high)
        else:
            out[u] = inner[low]
    return out


def rank_hypercube(d: int, matrix: GF2Matrix | None = None) -> Ranking:
    """2-ranking of ``Q_d`` with exactly ``d + 1`` ranks."""
    return Ranking.from_zero_based(hypercube_ranks(d, matrix))


# ----------------------------------------------------------------------
# products of cycles

_GRAY2 = (0b00, 0b01, 0b11, 0b10)  # C4 position -> Q2 vertex


def cycle_product_graph(lengths: Sequence[int]) -> Graph:
    return product_of([cycle(m) for m in lengths], name="x".join(f"C{m}" for m in lengths))


def rank_cycle_product(lengths: Sequence[int]) -> Ranking:
    """2-ranking of ``C_{m1} □ ... □ C_{md}`` (each ``m_i`` divisible by 4) with ``2d + 1`` ranks.

    Coordinates are reduced mod 4 and each ``Z_4`` coordinate mapped onto a
    pair of cube bits by the Gray code, which carries ``C_4`` onto ``Q_2``.
    Vertex ids follow :func:`cycle_product_graph` (row-major).
    """
    lengths = list(lengths)
    if not lengths:
        raise GraphError("need at least one cycle")
    for m in lengths:
        if m < 4 or m % 4:
            raise GraphError(f"cycle length {m} is not a positive multiple of 4")
    d = len(lengths)
    cube = hypercube_ranks(2 * d)
    total = math.prod(lengths)
    ranks = []
    for vid in range(total):
        coords = []
        rest = vid
        for m in reversed(lengths):
            coords.append(rest % m)
            rest //= m
        coords.reverse()
        q = 0
        for x in coords:
            q = (q << 2) | _GRAY2[x % 4]
        ranks.append(cube[q])
    return Ranking.from_zero_based(ranks)


# ----------------------------------------------------------------------
# K_m □ K_n


def _as_matrix(x) -> RankMatrix:
    return x if isinstance(x, RankMatrix) else RankMatrix(tuple(map(tuple, x)))


def block_product(a, b, ell: int | None = None) -> RankMatrix:
    """Replace each ``a[i][j]`` by the block ``ell * a[i][j] + b``.

    ``a`` must use ranks ``0..k-1`` and ``b`` ranks ``0..ell-1``; the result
    uses ranks in ``0..k*ell-1``.
    """
    a, b = _as_matrix(a), _as_matrix(b)
    if ell is None:
        ell = b.max_entry() + 1
    if a.min_entry() < 0:
        raise RankingError("outer matrix has negative ranks")
    if b.min_entry() < 0 or b.max_entry() >= ell:
        raise RankingError(f"inner matrix ranks must lie in [0, {ell - 1}]")
    rows = []
    for arow in a.rows:
        for brow in b.rows:
            rows.append(tuple(ell * x + y for x in arow for y in brow))
    return RankMatrix(tuple(rows))


SEED_2X2 = RankMatrix(((1, 0), (0, 2)))


def _is_pow2(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0


def rank_km_kn_pow2(m: int, n: int) -> RankMatrix:
    """``m x n`` matrix with ``n * 3**log2(m) / m`` ranks, ``m <= n`` powers of two."""
    if not (_is_pow2(m) and _is_pow2(n)):
        raise GraphError(f"m and n must be powers of two, got m={m}, n={n}")
    if m > n:
        raise GraphError(f"need m <= n, got m={m}, n={n}")
    if m == 1:
        return RankMatrix((tuple(range(n)),))
    return block_product(rank_km_kn_pow2(m // 2, n // 2), SEED_2X2, 3)


def pow2_rank_count(m: int, n: int) -> int:
    """Exact ``n * m**(log2(3) - 1)`` for powers of two."""
    return n * 3 ** (m.bit_length() - 1) // m


def rank_km_factorial(m: int) -> RankMatrix:
    """``m x m!`` matrix using exactly ``m! * H_m`` ranks.

    Column block ``i`` holds the identity run of low ranks
    ``0..(m-1)!-1`` in row ``i``; the remaining rows are a shifted copy of
    the ``m - 1`` solution, each block on its own high-rank interval.
    """
    if m < 1:
        raise GraphError(f"m must be >= 1, got {m}")
    if m > MAX_FACTORIAL_M:
        raise GraphSizeError(f"m! columns too many for m={m} (limit {MAX_FACTORIAL_M})")
    if m == 1:
        return RankMatrix(((0,),))
    prev = rank_km_factorial(m - 1)
    low = math.factorial(m - 1)
    width = prev.rank_count
    rows: list[list[int]] = [[] for _ in range(m)]
    for i in range(m):
        offset = low + i * width
        shifted = iter(prev.rows)
        for r in range(m):
            if r == i:
                rows[r].extend(range(low))
            else:
                rows[r].extend(x + offset for x in next(shifted))
    return RankMatrix(tuple(map(tuple, rows)))


def rank_km_kn(m: int, n: int) -> RankMatrix:
    """``m x n`` matrix with ``n * H_m`` ranks, requires ``m! | n``."""
    if m < 1 or m > MAX_FACTORIAL_M:
        raise GraphSizeError(f"m must be in [1, {MAX_FACTORIAL_M}], got {m}")
    f = math.factorial(m)
    if n < 1 or n % f:
        raise GraphError(f"{m}! = {f} does not divide n={n}")
    base = rank_km_factorial(m)
    t = n // f
    return block_product(base, RankMatrix((tuple(range(t)),)), t)


# ----------------------------------------------------------------------
# C_3 □ C_n

# five-rank blocks (append in any order)
C3_FIVE_4 = ((0, 1, 0, 2), (3, 2, 4, 1), (4, 0, 3, 0))
C3_FIVE_6 = ((0, 1, 3, 0, 4, 2), (3, 0, 4, 2, 0, 1), (4, 2, 0, 1, 3, 0))
# six-rank blocks; they share their first two and last two columns
C3_SIX_9 = (
    (2, 4, 0, 3, 1, 0, 4, 0, 5),
    (0, 5, 1, 0, 5, 2, 0, 1, 3),
    (1, 3, 2, 4, 0, 3, 5, 2, 4),
)
C3_SIX_4 = ((2, 4, 0, 5), (0, 5, 1, 3), (1, 3, 2, 4))

C3_ODD_MIN = 24


def c3_cn_graph(n: int) -> Graph:
    return product_of([cycle(3), cycle(n)], name=f"C3xC{n}")


def _concat(blocks) -> list[list[int]]:
    rows = [[], [], []]
    for blk in blocks:
        for i in range(3):
            rows[i].extend(blk[i])
    return rows


def c3_cn_blocks(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Block sequence for ``C_3 □ C_n`` (see :func:`rank_c3_cn`)."""
    if n >= 4 and n % 2 == 0:
        sixes = 1 if n % 4 else 0
        return [C3_FIVE_6] * sixes + [C3_FIVE_4] * ((n - 6 * sixes) // 4)
    if n >= C3_ODD_MIN:
        nines = n % 4
        fours = (n - 9 * nines) // 4
        return [C3_SIX_9] * nines + [C3_SIX_4] * fours
    raise GraphError(
        f"no explicit construction for C3 x C{n}; use the exact solver "
        f"(solve_chi2) for odd n < {C3_ODD_MIN}"
    )


def c3_cn_array(n: int) -> RankMatrix:
    """``3 x n`` array; entry ``(i, j)`` ranks ``(u_i, v_j)``, 0-based."""
    return RankMatrix(tuple(map(tuple, _concat(c3_cn_blocks(n)))))


def rank_c3_cn(n: int) -> Ranking:
    """2-ranking of ``C_3 □ C_n``: 5 ranks for even ``n >= 4``, 6 for ``n >= 24``."""
    return Ranking.from_zero_based(c3_cn_array(n).entries())


# ----------------------------------------------------------------------
# subcubic graphs

SUBCUBIC_MAX_RANKS = 7
_RESTARTS = 100
_GREEDY_RETRIES = 10


def greedy_mis(g: Graph, vertices: Sequence[int] | None = None, order: Sequence[int] | None = None) -> list[int]:
    """Maximal independent set, scanning ``order`` (default: degree, then id)."""
    verts = list(range(g.n)) if vertices is None else list(vertices)
    if order is None:
        order = sorted(verts, key=lambda v: (g.degree(v), v))
    chosen: set[int] = set()
    blocked: set[int] = set()
    for v in order:
        if v not in blocked:
            chosen.add(v)
            blocked.add(v)
            blocked.update(g.neighbors(v))
    return sorted(chosen)


def smallest_last_order(g: Graph) -> list[int]:
    """Vertices in reverse peeling order (min degree removed first)."""
    deg = [g.degree(v) for v in range(g.n)]
    alive = [True] * g.n
    removed = []
    for _ in range(g.n):
        v = min((u for u in range(g.n) if alive[u]), key=lambda u: (deg[u], u))
        alive[v] = False
        removed.append(v)
        for w in g.neighbors(v):
            if alive[w]:
                deg[w] -= 1
    return removed[::-1]


def greedy_coloring(g: Graph, order: Sequence[int]) -> list[int]:
    """First-fit colors ``0, 1, ...`` in ``order``."""
    color = [-1] * g.n
    for v in order:
        used = {color[w] for w in g.neighbors(v)}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def _is_k7(h: Graph) -> bool:
    return h.n == 7 and h.m == 21


def _color_at_most(h: Graph, limit: int, rng: random.Random) -> list[int] | None:
    col = greedy_coloring(h, smallest_last_order(h))
    if max(col, default=-1) < limit:
        return col
    verts = list(range(h.n))
    for _ in range(_GREEDY_RETRIES):
        rng.shuffle(verts)
        col = greedy_coloring(h, verts)
        if max(col, default=-1) < limit:
            return col
    # Brooks guarantees a 6-coloring unless h is K7; find it exactly
    from .solver import exact_coloring

    return exact_coloring(h, limit)


def _petersen_like(g: Graph) -> bool:
    return g.n == 10 and g.is_regular(3) and g.girth() == 5


def _heawood_like(g: Graph) -> bool:
    return g.n == 14 and g.is_regular(3) and g.girth() == 6


def _special_mis(g: Graph) -> list[int] | None:
    """Independent set that avoids the K7 case on Petersen / Heawood."""
    if _petersen_like(g):
        # smallest maximal independent set of size 4, in lexicographic order
        from itertools import combinations

        for cand in combinations(range(g.n), 4):
            s = set(cand)
            if any(w in s for v in cand for w in g.neighbors(v)):
                continue
            if all(v in s or any(w in s for w in g.neighbors(v)) for v in range(g.n)):
                return list(cand)
    if _heawood_like(g):
        dist = g.bfs_distances(0)
        far = max(dist)
        return [0] + [v for v in range(g.n) if dist[v] == far]
    return None


def _rank_component(g: Graph, rng: random.Random) -> list[int]:
    """0-based ranks for a connected subcubic graph."""
    if g.n == 1:
        return [0]
    square = distance_power(g, 2)
    candidates = []
    special = _special_mis(g)
    if special is not None:
        candidates.append(special)
    candidates.append(greedy_mis(g))
    attempt = 0
    while True:
        for s in candidates:
            sset = set(s)
            rest = [v for v in range(g.n) if v not in sset]
            h, back = square.induced_subgraph(rest)
            ranks = [0] * g.n
            ok = True
            for comp in h.components():
                sub, back2 = h.induced_subgraph(comp)
                if _is_k7(sub):
                    ok = False
                    break
                col = _color_at_most(sub, SUBCUBIC_MAX_RANKS - 1, rng)
                if col is None:
                    ok = False
                    break
                for i, c in enumerate(col):
                    ranks[back[back2[i]]] = c + 1
            if ok:
                return ranks
        attempt += len(candidates)
        if attempt >= _RESTARTS:
            raise ConstructionError(
                f"no usable maximal independent set after {_RESTARTS} attempts on {g!r}"
            )
        order = list(range(g.n))
        rng.shuffle(order)
        candidates = [greedy_mis(g, order=order)]


def rank_subcubic(g: Graph, seed: int = 0) -> Ranking:
    """2-ranking with at most 7 ranks for a graph of maximum degree <= 3.

    Rank 1 goes to a maximal independent set ``S``; the rest is a proper
    coloring of the square of ``G`` restricted to ``V - S``.
    """
    if g.max_degree() > 3:
        raise GraphError(f"graph is not subcubic (max degree {g.max_degree()})")
    rng = random.Random(seed)
    ranks = [0] * g.n
    for comp in g.components():
        sub, back = g.induced_subgraph(comp)
        for i, r in enumerate(_rank_component(sub, rng)):
            ranks[back[i]] = r
    return Ranking.from_zero_based(ranks)
