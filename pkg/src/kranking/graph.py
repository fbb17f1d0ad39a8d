"""Undirected simple graphs with dense integer vertex ids.

Graphs are immutable once built.  Vertex ids are ``0..n-1``; optional
per-vertex labels carry structure (coordinates in products, bit strings in
hypercubes) without affecting the flat id space the solver works on.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Sequence

MAX_HYPERCUBE_DIM = 30
MAX_VERTICES = 1 << 30


class GraphError(ValueError):
    """Invalid graph parameters or inconsistent structure."""


class GraphSizeError(GraphError):
    """Requested graph exceeds supported size."""


class ParseError(GraphError):
    """Malformed edge-list text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (int, int)
        Edge list.  Self-loops and duplicate edges raise :class:`GraphError`.
    labels : sequence, optional
        Per-vertex metadata (kept as given).
    name : str, optional
        Human-readable family name, e.g. ``"Q4"``.
    """

    __slots__ = ("_n", "_adj", "_m", "labels", "name", "meta")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Sequence | None = None,
        name: str = "",
        meta: dict | None = None,
    ):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        if n > MAX_VERTICES:
            raise GraphSizeError(f"{n} vertices exceeds limit {MAX_VERTICES}")
        sets: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in sets[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            sets[u].add(v)
            sets[v].add(u)
            m += 1
        self._n = n
        self._m = m
        self._adj = tuple(tuple(sorted(s)) for s in sets)
        if labels is not None and len(labels) != n:
            raise GraphError(f"got {len(labels)} labels for {n} vertices")
        self.labels = tuple(labels) if labels is not None else None
        self.name = name
        # structural hints (e.g. {"km_kn": (m, n)}) used to seed bounds
        self.meta = dict(meta or {})

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    def __len__(self) -> int:
        return self._n

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<Graph{tag} n={self._n} m={self._m}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        nb = self._adj[u]
        # neighbor tuples are short; linear scan beats bisect below ~16
        return v in nb

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self._adj), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(u, v)`` with ``u < v``, sorted."""
        for u, nb in enumerate(self._adj):
            for v in nb:
                if u < v:
                    yield (u, v)

    def is_regular(self, d: int | None = None) -> bool:
        degs = {len(a) for a in self._adj}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def bfs_distances(self, source: int, limit: int | None = None) -> list[int]:
        """Distances from ``source``; unreachable vertices get ``-1``."""
        dist = [-1] * self._n
        dist[source] = 0
        queue = deque([source])
        adj = self._adj
        while queue:
            u = queue.popleft()
            du = dist[u]
            if limit is not None and du >= limit:
                continue
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue.append(w)
        return dist

    def distance(self, u: int, v: int) -> int:
        return self.bfs_distances(u)[v]

    def components(self) -> list[list[int]]:
        seen = [False] * self._n
        comps = []
        for s in range(self._n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self._n <= 1 or len(self.components()) == 1

    def diameter(self) -> int:
        """Largest finite distance (``-1`` for the empty graph)."""
        best = -1
        for s in range(self._n):
            best = max(best, max(self.bfs_distances(s)))
        return best

    def girth(self) -> float:
        """Length of a shortest cycle, ``inf`` for forests."""
        best = float("inf")
        adj = self._adj
        for s in range(self._n):
            dist = [-1] * self._n
            parent = [-1] * self._n
            dist[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif parent[u] != w:
                        best = min(best, dist[u] + dist[w] + 1)
        return best

    def is_bipartite(self) -> bool:
        side = [-1] * self._n
        for s in range(self._n):
            if side[s] >= 0:
                continue
            side[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if side[w] < 0:
                        side[w] = 1 - side[u]
                        queue.append(w)
                    elif side[w] == side[u]:
                        return False
        return True

    def induced_subgraph(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Subgraph induced by ``vertices``; also returns new-id -> old-id map."""
        verts = list(vertices)
        index = {v: i for i, v in enumerate(verts)}
        edges = [
            (index[u], index[v])
            for u in verts
            for v in self._adj[u]
            if v in index and u < v
        ]
        labels = [self.labels[v] for v in verts] if self.labels else None
        return Graph(len(verts), edges, labels=labels), verts

    def relabeled(self, perm: Sequence[int]) -> "Graph":
        """Copy with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self._n, ((perm[u], perm[v]) for u, v in self.edges()))


# ----------------------------------------------------------------------
# named families


def hypercube(d: int) -> Graph:
    """The ``d``-cube; vertex id is the integer value of its bit string.

    Coordinate 1 is the most significant bit, so the string ``"10"`` is id 2.
    """
    if d < 0 or d > MAX_HYPERCUBE_DIM:
        raise GraphSizeError(f"hypercube dimension must be in [0, {MAX_HYPERCUBE_DIM}], got {d}")
    n = 1 << d
    edges = ((u, u ^ (1 << b)) for u in range(n) for b in range(d) if u < u ^ (1 << b))
    labels = [format(u, f"0{d}b") if d else "" for u in range(n)]
    return Graph(n, edges, labels=labels, name=f"Q{d}", meta={"hypercube": d})


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)), name=f"K{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)), name=f"C{n}")


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return Graph(n, ((i, i + 1) for i in range(n - 1)), name=f"P{n}")


def empty(n: int) -> Graph:
    return Graph(n, (), name=f"E{n}")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner, name="Petersen")


def heawood() -> Graph:
    # LCF notation [5, -5]^7
    ring = [(i, (i + 1) % 14) for i in range(14)]
    chords = [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return Graph(14, ring + chords, name="Heawood")


def wagner_c8_antipodal() -> Graph:
    """``C8`` plus the four chords joining vertices at distance 4."""
    ring = [(i, (i + 1) % 8) for i in range(8)]
    chords = [(i, i + 4) for i in range(4)]
    return Graph(8, ring + chords, name="Wagner")


# ----------------------------------------------------------------------
# operators


def _label(g: Graph, v: int):
    return g.labels[v] if g.labels is not None else v


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """``G □ H`` with row-major ids ``g * |V(H)| + h``.

    Labels are ``(label_G, label_H)`` pairs.  ``meta["factors"]`` lists
    the factor names so downstream code can recognise ``K_m □ K_n``.
    """
    if g.n == 0 or h.n == 0:
        raise GraphError("cartesian product of an empty graph")
    if g.n * h.n > MAX_VERTICES:
        raise GraphSizeError(f"product has {g.n * h.n} vertices")
    nh = h.n
    edges = []
    for a in range(g.n):
        for b, c in h.edges():
            edges.append((a * nh + b, a * nh + c))
    for a, c in g.edges():
        for b in range(nh):
            edges.append((a * nh + b, c * nh + b))
    labels = [(_label(g, a), _label(h, b)) for a in range(g.n) for b in range(nh)]
    meta = {}
    gk = g.name.startswith("K") and g.name[1:].isdigit()
    hk = h.name.startswith("K") and h.name[1:].isdigit()
    if gk and hk:
        meta["km_kn"] = (g.n, h.n)
    name = f"{g.name}x{h.name}" if g.name and h.name else ""
    return Graph(g.n * nh, edges, labels=labels, name=name, meta=meta)


def product_of(factors: Sequence[Graph], name: str | None = None) -> Graph:
    """Iterated cartesian product, left to right."""
    if not factors:
        raise GraphError("need at least one factor")
    out = factors[0]
    for f in factors[1:]:
        out = cartesian_product(out, f)
    if name is not None:
        out.name = name
    return out


def distance_power(g: Graph, k: int) -> Graph:
    """``G^k``: join vertices at distance ``1..k`` in ``G``."""
    if k < 1:
        raise GraphError(f"power must be >= 1, got {k}")
    edges = []
    for u in range(g.n):
        dist = g.bfs_distances(u, limit=k)
        edges.extend((u, v) for v in range(u + 1, g.n) if 1 <= dist[v] <= k)
    return Graph(g.n, edges, labels=g.labels, name=f"{g.name}^{k}" if g.name else "")


# ----------------------------------------------------------------------
# isomorphism (tests only; brute force)


def canonical_form(g: Graph, max_vertices: int = 12) -> tuple:
    """Lexicographically largest adjacency code over all vertex orderings.

    The code lists, for each position ``j``, the adjacency of the ``j``-th
    vertex to the earlier ones.  Orderings are searched exhaustively with
    prefix pruning; exponential in the worst case, hence ``max_vertices``.
    """
    n = g.n
    if n > max_vertices:
        raise GraphSizeError(f"canonical_form limited to {max_vertices} vertices")
    adj = [set(a) for a in g.adjacency]
    best: list[tuple[int, ...]] = []
    chosen: list[int] = []
    used = [False] * n
    code: list[tuple[int, ...]] = []
    # twins (equal neighbourhoods up to each other) are swapped by an
    # automorphism, so trying the first unused one of each class suffices
    twin_rep = list(range(n))
    for v in range(n):
        for u in range(v):
            if adj[u] - {v} == adj[v] - {u}:
                twin_rep[v] = twin_rep[u]
                break

    def rec(j: int) -> None:
        nonlocal best
        if j == n:
            if not best or code > best:
                best = list(code)
            return
        cands = {}
        for v in range(n):
            if not used[v] and twin_rep[v] not in cands:
                cands[twin_rep[v]] = (tuple(1 if u in adj[v] else 0 for u in chosen), v)
        for col, v in sorted(cands.values(), reverse=True):
            # best may have improved in an earlier sibling; compare afresh
            if best and code == best[:j] and col < best[j]:
                break
            used[v] = True
            chosen.append(v)
            code.append(col)
            rec(j + 1)
            code.pop()
            chosen.pop()
            used[v] = False

    rec(0)
    return (n, tuple(best))


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """A map ``phi`` with ``uv in E(g)`` iff ``phi(u)phi(v) in E(h)``, or ``None``."""
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(map(len, g.adjacency)) != sorted(map(len, h.adjacency)):
        return None
    n = g.n
    # BFS order keeps each new vertex adjacent to placed ones, which prunes early
    order: list[int] = []
    seen = [False] * n
    for s in sorted(range(n), key=lambda v: (-g.degree(v), v)):
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
    gadj = [set(a) for a in g.adjacency]
    hadj = [set(a) for a in h.adjacency]
    image = [-1] * n
    used = [False] * n

    def rec(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for x in range(n):
            if used[x] or len(hadj[x]) != len(gadj[v]):
                continue
            if any((order[j] in gadj[v]) != (image[order[j]] in hadj[x]) for j in range(i)):
                continue
            image[v] = x
            used[x] = True
            if rec(i + 1):
                return True
            used[x] = False
        image[v] = -1
        return False

    return image if rec(0) else None


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


# ----------------------------------------------------------------------
# edge-list text format


def read_graph(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``.

    Blank lines are ignored.  Errors carry the 1-based line number.
    """
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError("empty input", 1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"expected 'n m', got {header!r}", lineno)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"non-integer header {header!r}", lineno) from None
    if n < 0 or m < 0:
        raise ParseError("negative count in header", lineno)
    body = lines[1:]
    if len(body) != m:
        line = body[m][0] if len(body) > m else lineno
        raise ParseError(f"header declares {m} edges, found {len(body)}", line)
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {ln!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {ln!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


def write_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
