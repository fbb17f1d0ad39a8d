"""Exact k-ranking numbers by branch and bound.

``solve_chi2`` runs the compiled (or fallback) kernel with bitmask
forward checking.  ``solve_chi_k`` for ``k >= 2`` uses a separate
pure-Python engine that re-checks paths by bounded BFS, so the two agree
only if both are right; tests compare them.
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from . import _backend
from .bounds import degeneracy, harmonic_lower_bound
from .graph import Graph, distance_power
from .verify import Ranking, is_k_ranking, is_star_coloring


@dataclass
class Budget:
    """Search limits; ``0`` means unlimited."""

    nodes: int = 0
    seconds: float = 0.0


@dataclass
class SolveResult:
    """Outcome of an exact search.

    ``chi`` is ``None`` when the budget ran out; ``lower``/``upper`` then
    bracket the true value and ``witness`` attains ``upper``.
    """

    chi: int | None
    witness: Ranking | None
    lower: int
    upper: int
    nodes_explored: int = 0
    time: float = 0.0
    k: float = 2
    levels: list[tuple[int, str, int]] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.chi is not None


def vertex_order(g: Graph) -> list[int]:
    """BFS from a maximum-degree vertex (lowest id on ties), per component."""
    seen = [False] * g.n
    order: list[int] = []
    by_degree = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for s in by_degree:
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def _greedy_distance_coloring(g: Graph, k: int) -> list[int]:
    from .constructions import greedy_coloring, smallest_last_order

    power = distance_power(g, k) if k >= 1 else g
    return greedy_coloring(power, smallest_last_order(power))


def chi2_lower_bound(g: Graph, use_structure: bool = True) -> int:
    """Degeneracy + 1, raised to ``ceil(n H_m)`` for tagged ``K_m □ K_n``."""
    if g.n == 0:
        return 0
    lo = degeneracy(g)[0] + 1
    if use_structure and "km_kn" in g.meta:
        m, n = g.meta["km_kn"]
        lo = max(lo, harmonic_lower_bound(min(m, n), max(m, n))[1])
    return lo


class _Clock:
    def __init__(self, budget: Budget | None):
        self.budget = budget or Budget()
        self.start = time.perf_counter()
        self.nodes = 0

    def remaining_nodes(self) -> int:
        if not self.budget.nodes:
            return 0
        return max(1, self.budget.nodes - self.nodes)

    def remaining_seconds(self) -> float:
        if not self.budget.seconds:
            return 0.0
        return max(1e-3, self.budget.seconds - (time.perf_counter() - self.start))

    def exhausted(self) -> bool:
        b = self.budget
        if b.nodes and self.nodes >= b.nodes:
            return True
        return bool(b.seconds) and time.perf_counter() - self.start >= b.seconds

    def elapsed(self) -> float:
        return time.perf_counter() - self.start


def _deepen(g, lower, upper, upper_witness, clock, level_search, k) -> SolveResult:
    levels = []
    t = lower
    while t < upper:
        if clock.exhausted():
            break
        status, ranks, nodes = level_search(t)
        clock.nodes += nodes
        if status == _backend.STATUS_FOUND:
            levels.append((t, "found", nodes))
            w = Ranking.from_zero_based(ranks)
            return SolveResult(t, w, t, t, clock.nodes, clock.elapsed(), k, levels)
        if status == _backend.STATUS_INFEASIBLE:
            levels.append((t, "infeasible", nodes))
            t += 1
            lower = t
            continue
        levels.append((t, "budget", nodes))
        break
    if lower >= upper:
        return SolveResult(upper, upper_witness, upper, upper, clock.nodes, clock.elapsed(), k, levels)
    return SolveResult(None, upper_witness, lower, upper, clock.nodes, clock.elapsed(), k, levels)


def solve_chi2(
    g: Graph,
    budget: Budget | None = None,
    upper_hint: Ranking | None = None,
    use_structure: bool = True,
    lower_hint: int | None = None,
) -> SolveResult:
    """Exact ``chi_2(G)`` with a witness, or a bracket if the budget runs out.

    Iterative deepening on the rank count from the degeneracy bound.
    ``upper_hint`` (any valid 2-ranking) and ``lower_hint`` (a proven lower
    bound) may tighten the range.  With ``use_structure`` the harmonic
    bound seeds ``K_m □ K_n`` graphs built by :func:`~kranking.graph.cartesian_product`.
    """
    clock = _Clock(budget)
    if g.n == 0:
        return SolveResult(0, Ranking(()), 0, 0)
    greedy = _greedy_distance_coloring(g, 2)
    witness = Ranking.from_zero_based(greedy)
    upper = witness.rank_count
    if upper_hint is not None and is_k_ranking(g, upper_hint, 2) and upper_hint.rank_count < upper:
        witness = upper_hint.compressed()
        upper = witness.rank_count
    lower = chi2_lower_bound(g, use_structure)
    if lower_hint is not None:
        lower = max(lower, lower_hint)
    order = vertex_order(g)
    adj = g.adjacency

    def level(t):
        status, ranks, nodes, _ = _backend.search(
            adj, order, t, k=2,
            node_limit=clock.remaining_nodes(),
            time_limit=clock.remaining_seconds(),
        )
        return status, ranks, nodes

    return _deepen(g, lower, upper, witness, clock, level, 2)


def exact_coloring(g: Graph, colors: int, budget: Budget | None = None) -> list[int] | None:
    """Proper coloring with ``colors`` colors (0-based), or ``None`` if none exists."""
    if g.n == 0:
        return []
    b = budget or Budget()
    status, ranks, _, _ = _backend.search(
        g.adjacency, vertex_order(g), colors, k=1, value_symmetry=True,
        node_limit=b.nodes, time_limit=b.seconds,
    )
    if status == _backend.STATUS_BUDGET:
        raise TimeoutError("coloring budget exceeded")
    return ranks if status == _backend.STATUS_FOUND else None


# ----------------------------------------------------------------------
# generic k (Python engine)


class _Stop(Exception):
    pass


def _generic_search(g: Graph, order, t: int, k: int, clock: _Clock, node_limit: int, deadline: float):
    """DFS over ranks ``0..t-1`` with bounded-BFS incremental path checks."""
    n = g.n
    adj = g.adjacency
    rank = [-1] * n
    dist_cap = k
    near = [set(v for v, d in enumerate(g.bfs_distances(u, limit=k)) if 0 < d <= k) for u in range(n)]
    nodes = 0

    def bad_from(a: int) -> bool:
        # shortest route to an equal rank through strictly lower ranks
        ra = rank[a]
        dist = {a: 0}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            if dist[x] >= dist_cap:
                continue
            for y in adj[x]:
                if y in dist:
                    continue
                ry = rank[y]
                if ry < 0:
                    continue
                if ry == ra:
                    return True
                if ry < ra:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return False

    def consistent(v: int) -> bool:
        if bad_from(v):
            return False
        r = rank[v]
        return not any(rank[a] > r and bad_from(a) for a in near[v])

    def rec(i: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        v = order[i]
        for r in range(t):
            nodes += 1
            if node_limit and nodes > node_limit:
                raise _Stop
            if deadline and not (nodes & 255) and time.perf_counter() > deadline:
                raise _Stop
            rank[v] = r
            if consistent(v) and rec(i + 1):
                return True
            rank[v] = -1
        return False

    try:
        found = rec(0)
    except _Stop:
        return _backend.STATUS_BUDGET, None, nodes
    if found:
        return _backend.STATUS_FOUND, rank[:], nodes
    return _backend.STATUS_INFEASIBLE, None, nodes


def solve_chi_k(g: Graph, k: float, budget: Budget | None = None) -> SolveResult:
    """Exact ``chi_k(G)``; ``k = 1`` is the chromatic number, ``k = inf`` the ranking number."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    clock = _Clock(budget)
    if g.n == 0:
        return SolveResult(0, Ranking(()), 0, 0, k=k)
    order = vertex_order(g)
    path_cap = max(1, g.n - 1) if math.isinf(k) else int(min(k, max(1, g.n - 1)))
    if k == 1:
        greedy = _greedy_distance_coloring(g, 1)
        lower = 2 if g.m else 1

        def level(t):
            status, ranks, nodes, _ = _backend.search(
                g.adjacency, order, t, k=1, value_symmetry=True,
                node_limit=clock.remaining_nodes(), time_limit=clock.remaining_seconds(),
            )
            return status, ranks, nodes
    else:
        if math.isinf(k) or path_cap >= g.n - 1:
            greedy = list(range(g.n))
        else:
            greedy = _greedy_distance_coloring(g, path_cap)
        lower = degeneracy(g)[0] + 1

        def level(t):
            deadline = time.perf_counter() + clock.remaining_seconds() if clock.budget.seconds else 0.0
            return _generic_search(g, order, t, path_cap, clock, clock.remaining_nodes(), deadline)

    witness = Ranking.from_zero_based(greedy)
    upper = witness.rank_count
    return _deepen(g, min(lower, upper), upper, witness, clock, level, k)


# ----------------------------------------------------------------------
# star colorings


def _star_search(g: Graph, order, t: int, node_limit: int, deadline: float):
    n = g.n
    adj = g.adjacency
    col = [-1] * n
    nodes = 0

    def creates_bicolored_p4(v: int) -> bool:
        # walks of length 3 through v with alternating colors, all assigned
        c = col[v]
        for b in adj[v]:
            cb = col[b]
            if cb < 0:
                continue
            # v at an end: v-b-x-y with col[x] == c, col[y] == cb
            for x in adj[b]:
                if x == v or col[x] != c:
                    continue
                for y in adj[x]:
                    if y != b and y != v and col[y] == cb:
                        return True
            # v second: a-v-b-y with col[a] == cb, col[y] == c
            for a in adj[v]:
                if a == b or col[a] != cb:
                    continue
                for y in adj[b]:
                    if y != v and y != a and col[y] == c:
                        return True
        return False

    def rec(i: int, maxused: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        v = order[i]
        banned = {col[w] for w in adj[v]}
        for c in range(min(t, maxused + 2)):
            if c in banned:
                continue
            nodes += 1
            if node_limit and nodes > node_limit:
                raise _Stop
            if deadline and not (nodes & 255) and time.perf_counter() > deadline:
                raise _Stop
            col[v] = c
            if not creates_bicolored_p4(v) and rec(i + 1, max(maxused, c)):
                return True
            col[v] = -1
        return False

    try:
        found = rec(0, -1)
    except _Stop:
        return _backend.STATUS_BUDGET, None, nodes
    if found:
        return _backend.STATUS_FOUND, col[:], nodes
    return _backend.STATUS_INFEASIBLE, None, nodes


def solve_star_chromatic(g: Graph, budget: Budget | None = None) -> SolveResult:
    """Exact star chromatic number (colors are interchangeable, so value symmetry applies)."""
    clock = _Clock(budget)
    if g.n == 0:
        return SolveResult(0, Ranking(()), 0, 0, k=0)
    order = vertex_order(g)
    greedy = _greedy_distance_coloring(g, 2)
    witness = Ranking.from_zero_based(greedy)
    upper = witness.rank_count
    lower = 2 if g.m else 1

    def level(t):
        deadline = time.perf_counter() + clock.remaining_seconds() if clock.budget.seconds else 0.0
        return _star_search(g, order, t, clock.remaining_nodes(), deadline)

    res = _deepen(g, min(lower, upper), upper, witness, clock, level, 0)
    if res.witness is not None:
        assert is_star_coloring(g, res.witness)
    return res


# ----------------------------------------------------------------------
# optimal 2-rankings up to automorphism


def automorphisms(g: Graph, limit: int = 100_000) -> list[tuple[int, ...]]:
    """All automorphisms by backtracking along a BFS order (small graphs only)."""
    n = g.n
    order = vertex_order(g)
    pos_adj = [set(a) for a in g.adjacency]
    deg = [g.degree(v) for v in range(n)]
    # neighbours of order[i] that appear earlier in the order
    earlier = []
    placed_at = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        earlier.append([u for u in g.neighbors(v) if placed_at[u] < i])
    image = [-1] * n
    used = [False] * n
    out: list[tuple[int, ...]] = []

    def rec(i: int):
        if len(out) >= limit:
            return
        if i == n:
            out.append(tuple(image))
            return
        v = order[i]
        if earlier[i]:
            anchor = image[earlier[i][0]]
            cands = sorted(pos_adj[anchor])
        else:
            cands = range(n)
        for x in cands:
            if used[x] or deg[x] != deg[v]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if (u in pos_adj[v]) != (image[u] in pos_adj[x]):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = x
            used[x] = True
            rec(i + 1)
            used[x] = False
            image[v] = -1

    rec(0)
    return out


@dataclass
class Enumeration:
    """Optimal 2-rankings grouped into automorphism classes."""

    chi: int | None
    representatives: list[Ranking]
    class_sizes: list[int]
    total: int
    complete: bool
    automorphism_count: int
    nodes_explored: int

    @property
    def classes(self) -> int:
        return len(self.representatives)


def enumerate_optimal_chi2(
    g: Graph,
    budget: Budget | None = None,
    max_solutions: int = 0,
    automorphism_group: Sequence[Sequence[int]] | None = None,
) -> Enumeration:
    """Every ``chi_2``-rank 2-ranking of ``g``, up to graph automorphism.

    Two rankings are identified when one is the other composed with an
    automorphism of ``g``.  With exactly ``chi_2`` ranks every rank value
    occurs, so order-preserving relabeling adds nothing.  ``complete`` is
    false when the budget or ``max_solutions`` cut the search short.
    """
    if g.n > 16:
        raise ValueError("enumeration is limited to graphs with at most 16 vertices")
    res = solve_chi2(g, budget)
    if res.chi is None:
        return Enumeration(None, [], [], 0, False, 0, res.nodes_explored)
    clock = _Clock(budget)
    status, _, nodes, sols = _backend.search(
        g.adjacency, vertex_order(g), res.chi, k=2, enumerate_all=True,
        max_solutions=max_solutions,
        node_limit=clock.remaining_nodes(), time_limit=clock.remaining_seconds(),
    )
    autos = list(automorphism_group) if automorphism_group is not None else automorphisms(g)
    seen: set[tuple[int, ...]] = set()
    reps: list[Ranking] = []
    sizes: list[int] = []
    for s in sols:
        key = tuple(s)
        if key in seen:
            continue
        orbit = {tuple(s[p[v]] for v in range(g.n)) for p in autos}
        seen |= orbit
        reps.append(Ranking.from_zero_based(s))
        sizes.append(len(orbit))
    complete = status == _backend.STATUS_INFEASIBLE
    return Enumeration(res.chi, reps, sizes, len(sols), complete, len(autos), res.nodes_explored + nodes)
