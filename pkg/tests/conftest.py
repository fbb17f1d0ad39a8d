"""Shared oracles for the test suite.

Everything here is deliberately naive and independent of the package's
search and verification code paths.
"""

import itertools
import math
import random

import networkx as nx
import numpy as np
import pytest

from kranking.graph import Graph


def all_simple_paths_upto(g: Graph, k):
    """Every simple path with 1..k edges, each listed once per direction."""
    limit = g.n - 1 if math.isinf(k) else int(k)
    out = []

    def extend(p):
        if len(p) - 1 >= 1:
            out.append(tuple(p))
        if len(p) - 1 == limit:
            return
        for w in g.neighbors(p[-1]):
            if w not in p:
                p.append(w)
                extend(p)
                p.pop()

    for v in range(g.n):
        extend([v])
    return out


def naive_is_k_ranking(g: Graph, ranks, k) -> bool:
    for p in all_simple_paths_upto(g, k):
        a, b = ranks[p[0]], ranks[p[-1]]
        if a == b and not any(ranks[x] > a for x in p[1:-1]):
            return False
    return True


def naive_is_star_coloring(g: Graph, colors) -> bool:
    for u, v in g.edges():
        if colors[u] == colors[v]:
            return False
    for p in all_simple_paths_upto(g, 3):
        if len(p) == 4 and len({colors[x] for x in p}) == 2:
            return False
    return True


def _length2_paths(g: Graph):
    return [(u, w, v) for w in range(g.n) for u in g.neighbors(w) for v in g.neighbors(w) if u < v]


def brute_force_chi2(g: Graph, max_t: int = 9, chunk: int = 1 << 20) -> int:
    """Smallest t admitting a 2-ranking, by exhaustive numpy enumeration."""
    n = g.n
    if n == 0:
        return 0
    edges = np.array(list(g.edges()), dtype=np.int64).reshape(-1, 2)
    p2 = np.array(_length2_paths(g) or [], dtype=np.int64).reshape(-1, 3)
    for t in range(1, max_t + 1):
        total = t ** n
        powers = t ** np.arange(n, dtype=np.int64)
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            r = (idx[:, None] // powers[None, :]) % t
            ok = np.ones(len(idx), dtype=bool)
            if len(edges):
                ok &= (r[:, edges[:, 0]] != r[:, edges[:, 1]]).all(axis=1)
            if len(p2):
                ru, rw, rv = r[:, p2[:, 0]], r[:, p2[:, 1]], r[:, p2[:, 2]]
                ok &= ((ru != rv) | (rw > ru)).all(axis=1)
            if ok.any():
                return t
    raise AssertionError(f"chi2 exceeds {max_t}")


def brute_force_chi_k(g: Graph, k) -> int:
    """Smallest t admitting a k-ranking, enumerating assignments with the naive checker."""
    for t in range(1, g.n + 1):
        for ranks in itertools.product(range(1, t + 1), repeat=g.n):
            if naive_is_k_ranking(g, ranks, k):
                return t
    return g.n


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def connected_cubic_graphs(n: int) -> list[Graph]:
    """All connected cubic graphs on ``n`` vertices up to isomorphism.

    Fills degrees vertex by vertex; untouched vertices are interchangeable,
    so only the first untouched one is tried.  Duplicates are removed with
    networkx isomorphism tests.
    """
    adj = [set() for _ in range(n)]
    raw = []

    def rec():
        v = next((u for u in range(n) if len(adj[u]) < 3), None)
        if v is None:
            raw.append([(u, w) for u in range(n) for w in adj[u] if u < w])
            return
        fresh_used = False
        lo = max(adj[v]) if adj[v] else v
        for w in range(max(v, lo) + 1, n):
            if len(adj[w]) >= 3:
                continue
            if not adj[w]:
                if fresh_used:
                    continue
                fresh_used = True
            adj[v].add(w)
            adj[w].add(v)
            rec()
            adj[v].discard(w)
            adj[w].discard(v)

    rec()
    buckets = {}
    out = []
    for edges in raw:
        h = nx.Graph(edges)
        if h.number_of_nodes() != n or not nx.is_connected(h):
            continue
        key = nx.weisfeiler_lehman_graph_hash(h)
        seen = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(h, x) for x in seen):
            continue
        seen.append(h)
        out.append(Graph(n, edges, name=f"cubic{n}_{len(out)}"))
    return out


@pytest.fixture(scope="session")
def cubic_corpus():
    return {n: connected_cubic_graphs(n) for n in (4, 6, 8, 10)}


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
