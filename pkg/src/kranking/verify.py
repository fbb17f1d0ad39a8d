"""Rankings, rank matrices, and validity checks.

A path is well-ranked when its endpoints differ in rank or some interior
vertex outranks both.  A ``k``-ranking makes every path of length
``1..k`` well-ranked.  Public ranks are integers ``>= 1``; constructions
that naturally produce 0-based ranks go through :meth:`Ranking.from_zero_based`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _backend
from .graph import Graph, cartesian_product, complete


class RankingError(ValueError):
    """Malformed ranking, coloring, or rank matrix."""


@dataclass(frozen=True)
class Ranking:
    """Total map vertex id -> rank (``ranks[v] >= 1``)."""

    ranks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        bad = [v for v, r in enumerate(self.ranks) if r < 1]
        if bad:
            raise RankingError(f"ranks must be >= 1; vertex {bad[0]} has {self.ranks[bad[0]]}")

    @classmethod
    def from_zero_based(cls, ranks: Iterable[int]) -> "Ranking":
        return cls(tuple(r + 1 for r in ranks))

    @property
    def n(self) -> int:
        return len(self.ranks)

    @property
    def rank_count(self) -> int:
        return len(set(self.ranks))

    @property
    def max_rank(self) -> int:
        return max(self.ranks, default=0)

    def __getitem__(self, v: int) -> int:
        return self.ranks[v]

    def __len__(self) -> int:
        return len(self.ranks)

    def compressed(self) -> "Ranking":
        """Order-preserving relabel onto ``1..rank_count``."""
        values = {r: i + 1 for i, r in enumerate(sorted(set(self.ranks)))}
        return Ranking(tuple(values[r] for r in self.ranks))

    def to_text(self) -> str:
        return "".join(f"{v} {r}\n" for v, r in enumerate(self.ranks))

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "Ranking":
        """Parse ``"vertex rank"`` lines (any order, each vertex exactly once)."""
        found: dict[int, int] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise RankingError(f"line {lineno}: expected 'vertex rank', got {line!r}")
            try:
                v, r = int(parts[0]), int(parts[1])
            except ValueError:
                raise RankingError(f"line {lineno}: non-integer entry in {line!r}") from None
            if v in found:
                raise RankingError(f"line {lineno}: vertex {v} ranked twice")
            found[v] = r
        size = n if n is not None else len(found)
        missing = [v for v in range(size) if v not in found]
        if missing or len(found) != size:
            raise RankingError(f"partial ranking: {size - len(missing)} of {size} vertices ranked")
        return cls(tuple(found[v] for v in range(size)))


@dataclass(frozen=True)
class Violation:
    """A path (or, for star colorings, an edge or ``P4``) breaking the rule."""

    path: tuple[int, ...]
    kind: str

    def __str__(self) -> str:
        return f"{self.kind}: {'-'.join(map(str, self.path))}"


EQUAL_ENDPOINTS = "equal-endpoints-no-higher-interior"
IMPROPER_EDGE = "improper-edge"
BICOLORED_P4 = "bicolored-P4"


def _check_total(g: Graph, ranks: Sequence[int]) -> None:
    if len(ranks) != g.n:
        raise RankingError(f"partial assignment: {len(ranks)} values for {g.n} vertices")


def _as_ranks(r) -> tuple[int, ...]:
    return r.ranks if isinstance(r, Ranking) else tuple(r)


def is_well_ranked(ranks: Sequence[int], path: Sequence[int]) -> bool:
    """Definition check for a single nontrivial path."""
    a, b = ranks[path[0]], ranks[path[-1]]
    if a != b:
        return True
    return any(ranks[x] > a for x in path[1:-1])


def _shortest_violation(g: Graph, ranks: Sequence[int], k: int) -> Violation | None:
    # A shortest violating path has all interior ranks strictly below the
    # shared endpoint rank, so BFS through lower-ranked vertices finds it.
    best = None
    adj = g.adjacency
    for a in range(g.n):
        ra = ranks[a]
        parent = {a: -1}
        dist = {a: 0}
        queue = deque([a])
        hit = None
        while queue and hit is None:
            x = queue.popleft()
            dx = dist[x]
            if dx >= k:
                continue
            for y in adj[x]:
                if y in dist:
                    continue
                ry = ranks[y]
                if ry == ra:
                    parent[y] = x
                    dist[y] = dx + 1
                    hit = y
                    break
                if ry < ra:
                    parent[y] = x
                    dist[y] = dx + 1
                    queue.append(y)
        if hit is None:
            continue
        key = (dist[hit], min(a, hit), max(a, hit))
        if best is None or key < best[0]:
            walk = [hit]
            while parent[walk[-1]] >= 0:
                walk.append(parent[walk[-1]])
            walk.reverse()
            if walk[0] > walk[-1]:
                walk.reverse()
            best = (key, tuple(walk))
    if best is None:
        return None
    return Violation(best[1], EQUAL_ENDPOINTS)


def verify_k_ranking(g: Graph, r, k: int | float = 2) -> Violation | None:
    """Return ``None`` if ``r`` is a ``k``-ranking of ``g``, else a shortest violation.

    ``k`` may be ``math.inf`` for a full ranking.  Ties between shortest
    violations resolve to the smallest endpoint pair, so output is
    deterministic.  Runs in ``O(n (n + m))`` for any ``k``; ``k <= 2``
    first screens with the hot kernel in ``O(sum deg^2)``.
    """
    ranks = _as_ranks(r)
    _check_total(g, ranks)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k <= 2:
        if not _backend.first_violation_k2(g.adjacency, ranks, int(k)):
            return None
    limit = g.n if math.isinf(k) else int(k)
    return _shortest_violation(g, ranks, limit)


def is_k_ranking(g: Graph, r, k: int | float = 2) -> bool:
    return verify_k_ranking(g, r, k) is None


def verify_star_coloring(g: Graph, c) -> Violation | None:
    """``None`` iff ``c`` is proper and no ``P4`` uses only two colors."""
    colors = _as_ranks(c)
    _check_total(g, colors)
    for u, v in g.edges():
        if colors[u] == colors[v]:
            return Violation((u, v), IMPROPER_EDGE)
    adj = g.adjacency
    for b, c_ in g.edges():
        for x, y in ((b, c_), (c_, b)):
            cx, cy = colors[x], colors[y]
            ends_a = [a for a in adj[x] if a != y and colors[a] == cy]
            if not ends_a:
                continue
            for d in adj[y]:
                if d != x and colors[d] == cx:
                    for a in ends_a:
                        if a != d:
                            return Violation((a, x, y, d), BICOLORED_P4)
    return None


def is_star_coloring(g: Graph, c) -> bool:
    return verify_star_coloring(g, c) is None


# ----------------------------------------------------------------------
# rank matrices: rankings of K_m □ K_n


@dataclass(frozen=True)
class RankMatrix:
    """``m x n`` integer matrix; entry ``(i, j)`` ranks vertex ``(u_i, v_j)``.

    Constructions produce 0-based entries, matching the block arithmetic
    they use.  Convert with :func:`ranking_from_matrix`.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        if not rows or not rows[0]:
            raise RankingError("rank matrix must be nonempty")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise RankingError("rank matrix rows have unequal length")
        object.__setattr__(self, "rows", rows)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def entries(self) -> list[int]:
        return [x for row in self.rows for x in row]

    @property
    def rank_count(self) -> int:
        return len(set(self.entries()))

    def min_entry(self) -> int:
        return min(self.entries())

    def max_entry(self) -> int:
        return max(self.entries())

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def to_text(self) -> str:
        return "".join(" ".join(map(str, row)) + "\n" for row in self.rows)

    @classmethod
    def from_text(cls, text: str) -> "RankMatrix":
        rows = []
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                rows.append(tuple(int(x) for x in line.split()))
            except ValueError:
                raise RankingError(f"line {lineno}: non-integer entry") from None
        return cls(tuple(rows))


def ranking_from_matrix(mat, zero_based: bool | None = None) -> Ranking:
    """Ranking of ``K_m □ K_n`` with row-major vertex ids.

    ``zero_based=None`` shifts by one exactly when the smallest entry is 0.
    """
    if not isinstance(mat, RankMatrix):
        mat = RankMatrix(tuple(map(tuple, mat)))
    lo = mat.min_entry()
    if zero_based is None:
        zero_based = lo == 0
    shift = 1 if zero_based else 0
    if lo + shift < 1:
        raise RankingError(f"matrix entry {lo} is not a valid rank")
    return Ranking(tuple(x + shift for x in mat.entries()))


def km_kn_graph(m: int, n: int) -> Graph:
    return cartesian_product(complete(m), complete(n))


def matrix_violation(mat) -> tuple[tuple[int, int], ...] | None:
    """Matrix-level 2-ranking check, independent of the graph verifier.

    Rows and columns must be duplicate-free, and equal entries at
    ``(i, j)``, ``(i2, j2)`` need both opposite corners strictly larger.
    Returns the offending cells, or ``None``.
    """
    if not isinstance(mat, RankMatrix):
        mat = RankMatrix(tuple(map(tuple, mat)))
    a = mat.rows
    m, n = mat.shape
    for i in range(m):
        seen: dict[int, int] = {}
        for j in range(n):
            if a[i][j] in seen:
                return ((i, seen[a[i][j]]), (i, j))
            seen[a[i][j]] = j
    for j in range(n):
        seen = {}
        for i in range(m):
            if a[i][j] in seen:
                return ((seen[a[i][j]], j), (i, j))
            seen[a[i][j]] = i
    cells: dict[int, list[tuple[int, int]]] = {}
    for i in range(m):
        for j in range(n):
            cells.setdefault(a[i][j], []).append((i, j))
    for value, where in cells.items():
        for p in range(len(where)):
            i, j = where[p]
            for q in range(p + 1, len(where)):
                i2, j2 = where[q]
                if a[i][j2] <= value or a[i2][j] <= value:
                    return ((i, j), (i2, j2))
    return None


def is_valid_matrix(mat) -> bool:
    return matrix_violation(mat) is None
