"""Pure-Python hot kernels.

Reference implementation of the routines in ``_kernels.pyx``.  Both must
return identical results (including node counts) for identical inputs;
``kranking._backend`` picks one at import time.

Ranks inside the kernels are 0-based.  Domains are bitmasks: bit ``r`` of
``dom[v]`` set means rank ``r`` is still allowed for vertex ``v``.
"""

from __future__ import annotations

import time
from typing import Sequence

STATUS_INFEASIBLE = 0
STATUS_FOUND = 1
STATUS_BUDGET = 2


def first_violation_k2(adj: Sequence[Sequence[int]], ranks: Sequence[int], k: int) -> bool:
    """True iff some path of length ``<= k`` (``k`` in {1, 2}) is not well-ranked."""
    for u, nb in enumerate(adj):
        ru = ranks[u]
        for v in nb:
            if ranks[v] == ru:
                return True
    if k < 2:
        return False
    for w, nb in enumerate(adj):
        rw = ranks[w]
        # endpoints of u-w-v with equal rank need rw above them
        seen = set()
        for u in nb:
            ru = ranks[u]
            if ru >= rw:
                if ru in seen:
                    return True
                seen.add(ru)
    return False


class _Budget(Exception):
    pass


def search(
    adj: Sequence[Sequence[int]],
    order: Sequence[int],
    t: int,
    k: int = 2,
    enumerate_all: bool = False,
    max_solutions: int = 0,
    node_limit: int = 0,
    time_limit: float = 0.0,
    value_symmetry: bool = False,
    init_dom: Sequence[int] | None = None,
):
    """Depth-first search for a ``k``-ranking (``k`` in {1, 2}) with ranks ``0..t-1``.

    Vertices are assigned in ``order``; each assignment forward-checks the
    domains of vertices within distance 2.  Returns
    ``(status, witness, nodes, solutions)``.  In enumeration mode the
    status is ``STATUS_INFEASIBLE`` once the tree is exhausted (``solutions``
    then holds every ranking found) and ``STATUS_BUDGET`` if cut short.
    """
    n = len(adj)
    if t <= 0:
        return (STATUS_FOUND if n == 0 else STATUS_INFEASIBLE), ([] if n == 0 else None), 0, []
    full = (1 << t) - 1
    rank = [-1] * n
    dom = list(init_dom) if init_dom is not None else [full] * n
    solutions: list[list[int]] = []
    nodes = 0
    deadline = time.perf_counter() + time_limit if time_limit > 0 else 0.0
    adj = [tuple(a) for a in adj]

    def propagate(v: int, r: int) -> bool:
        rank[v] = r
        bit = 1 << r
        nbit = ~bit
        nb = adj[v]
        for w in nb:
            rw = rank[w]
            if rw < 0:
                dw = dom[w] & nbit
                if k >= 2:
                    for u in adj[w]:
                        if u != v and rank[u] == r:
                            dw &= ~((bit << 1) - 1)
                            break
                dom[w] = dw
                if not dw:
                    return False
            elif k >= 2:
                for u in adj[w]:
                    if u == v:
                        continue
                    ru = rank[u]
                    if ru < 0:
                        if rw < r:
                            du = dom[u] & nbit
                            dom[u] = du
                            if not du:
                                return False
                    elif ru == r and rw < r:
                        return False
        if k >= 2:
            for a in nb:
                ra = rank[a]
                if ra > r:
                    mask = ~(1 << ra)
                    for b in nb:
                        if b != a and rank[b] < 0:
                            db = dom[b] & mask
                            dom[b] = db
                            if not db:
                                return False
        return True

    def rec(i: int, maxused: int) -> bool:
        nonlocal nodes
        if i == n:
            solutions.append(rank[:])
            if not enumerate_all:
                return True
            return max_solutions > 0 and len(solutions) >= max_solutions
        v = order[i]
        d = dom[v]
        if value_symmetry:
            d &= (1 << (maxused + 2)) - 1
        while d:
            low = d & -d
            r = low.bit_length() - 1
            d ^= low
            nodes += 1
            if node_limit and nodes > node_limit:
                raise _Budget
            if deadline and not (nodes & 1023) and time.perf_counter() > deadline:
                raise _Budget
            saved = dom[:]
            if propagate(v, r):
                if rec(i + 1, r if r > maxused else maxused):
                    return True
            dom[:] = saved
            rank[v] = -1
        return False

    try:
        done = rec(0, -1)
    except _Budget:
        nodes = min(nodes, node_limit) if node_limit else nodes
        return STATUS_BUDGET, None, nodes, solutions
    if enumerate_all:
        status = STATUS_BUDGET if done and max_solutions and len(solutions) >= max_solutions else STATUS_INFEASIBLE
        return status, (solutions[0] if solutions else None), nodes, solutions
    if done:
        return STATUS_FOUND, solutions[0], nodes, solutions
    return STATUS_INFEASIBLE, None, nodes, []
