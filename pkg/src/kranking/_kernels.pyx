# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled hot kernels; semantics mirror ``_pykernels`` exactly."""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libcpp.vector cimport vector
from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC

DEF MAX_RANKS = 64

STATUS_INFEASIBLE = 0
STATUS_FOUND = 1
STATUS_BUDGET = 2


cdef double _now() noexcept nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9


cdef void _csr(adj, vector[int]& off, vector[int]& nbr):
    off.push_back(0)
    for nb in adj:
        for w in nb:
            nbr.push_back(<int>w)
        off.push_back(<int>nbr.size())


def first_violation_k2(adj, ranks, int k):
    cdef vector[int] off, nbr
    _csr(adj, off, nbr)
    cdef int n = <int>off.size() - 1
    cdef vector[int64_t] rk
    for r in ranks:
        rk.push_back(<int64_t>r)
    cdef int u, w, i, j
    cdef int64_t rw
    for u in range(n):
        for i in range(off[u], off[u + 1]):
            if rk[nbr[i]] == rk[u]:
                return True
    if k < 2:
        return False
    for w in range(n):
        rw = rk[w]
        for i in range(off[w], off[w + 1]):
            if rk[nbr[i]] < rw:
                continue
            for j in range(i + 1, off[w + 1]):
                if rk[nbr[j]] == rk[nbr[i]]:
                    return True
    return False


cdef struct Trail:
    int v
    uint64_t old


cdef class _Search:
    cdef vector[int] off, nbr, order
    cdef vector[int] rank
    cdef vector[uint64_t] dom
    cdef vector[Trail] trail
    cdef int n, t, k
    cdef bint enumerate_all, value_symmetry
    cdef long long node_limit, nodes, max_solutions
    cdef double deadline
    cdef bint budget_hit
    cdef list solutions

    cdef inline bint _set(self, int v, uint64_t newdom) noexcept:
        cdef Trail e
        if newdom != self.dom[v]:
            e.v = v
            e.old = self.dom[v]
            self.trail.push_back(e)
            self.dom[v] = newdom
        return newdom != 0

    cdef bint _propagate(self, int v, int r) noexcept:
        cdef uint64_t bit = (<uint64_t>1) << r
        cdef uint64_t above = ~((bit << 1) - 1) if r < 63 else 0
        cdef int i, j, w, u, a, b, rw, ru, ra
        cdef uint64_t dw, mask
        self.rank[v] = r
        for i in range(self.off[v], self.off[v + 1]):
            w = self.nbr[i]
            rw = self.rank[w]
            if rw < 0:
                dw = self.dom[w] & ~bit
                if self.k >= 2:
                    for j in range(self.off[w], self.off[w + 1]):
                        u = self.nbr[j]
                        if u != v and self.rank[u] == r:
                            dw &= above
                            break
                if not self._set(w, dw):
                    return False
            elif self.k >= 2:
                for j in range(self.off[w], self.off[w + 1]):
                    u = self.nbr[j]
                    if u == v:
                        continue
                    ru = self.rank[u]
                    if ru < 0:
                        if rw < r:
                            if not self._set(u, self.dom[u] & ~bit):
                                return False
                    elif ru == r and rw < r:
                        return False
        if self.k >= 2:
            for i in range(self.off[v], self.off[v + 1]):
                a = self.nbr[i]
                ra = self.rank[a]
                if ra > r:
                    mask = ~((<uint64_t>1) << ra)
                    for j in range(self.off[v], self.off[v + 1]):
                        b = self.nbr[j]
                        if b != a and self.rank[b] < 0:
                            if not self._set(b, self.dom[b] & mask):
                                return False
        return True

    cdef void _undo(self, size_t mark) noexcept:
        cdef Trail e
        while self.trail.size() > mark:
            e = self.trail.back()
            self.dom[e.v] = e.old
            self.trail.pop_back()

    cdef int _rec(self, int i, int maxused):
        # returns 1 to stop (found / solution cap), 0 to continue, -1 on budget
        cdef int v, r, res
        cdef uint64_t d, low
        cdef size_t mark
        if i == self.n:
            self.solutions.append([self.rank[j] for j in range(self.n)])
            if not self.enumerate_all:
                return 1
            return 1 if (self.max_solutions > 0 and len(self.solutions) >= self.max_solutions) else 0
        v = self.order[i]
        d = self.dom[v]
        if self.value_symmetry and maxused + 2 < 64:
            d &= ((<uint64_t>1) << (maxused + 2)) - 1
        while d:
            low = d & (~d + 1)
            r = 0
            while not ((low >> r) & 1):
                r += 1
            d ^= low
            self.nodes += 1
            if self.node_limit and self.nodes > self.node_limit:
                return -1
            if self.deadline > 0 and not (self.nodes & 1023) and _now() > self.deadline:
                return -1
            mark = self.trail.size()
            if self._propagate(v, r):
                res = self._rec(i + 1, r if r > maxused else maxused)
                if res != 0:
                    return res
            self._undo(mark)
            self.rank[v] = -1
        return 0


def search(adj, order, int t, int k=2, bint enumerate_all=False, long long max_solutions=0,
           long long node_limit=0, double time_limit=0.0, bint value_symmetry=False,
           init_dom=None):
    """See ``_pykernels.search``; requires ``t <= 64``."""
    cdef _Search s = _Search()
    _csr(adj, s.off, s.nbr)
    s.n = <int>s.off.size() - 1
    if t <= 0:
        if s.n == 0:
            return STATUS_FOUND, [], 0, []
        return STATUS_INFEASIBLE, None, 0, []
    if t > MAX_RANKS:
        raise ValueError(f"compiled search supports at most {MAX_RANKS} ranks, got {t}")
    cdef uint64_t full = (~(<uint64_t>0)) if t == 64 else (((<uint64_t>1) << t) - 1)
    for v in order:
        s.order.push_back(<int>v)
    s.rank.assign(s.n, -1)
    if init_dom is None:
        s.dom.assign(s.n, full)
    else:
        for d in init_dom:
            s.dom.push_back(<uint64_t>d)
    s.t = t
    s.k = k
    s.enumerate_all = enumerate_all
    s.value_symmetry = value_symmetry
    s.max_solutions = max_solutions
    s.node_limit = node_limit
    s.nodes = 0
    s.deadline = _now() + time_limit if time_limit > 0 else 0.0
    s.solutions = []
    cdef int res = s._rec(0, -1)
    nodes = s.nodes
    if res < 0:
        if node_limit and nodes > node_limit:
            nodes = node_limit
        return STATUS_BUDGET, None, nodes, s.solutions
    if enumerate_all:
        status = STATUS_BUDGET if res == 1 else STATUS_INFEASIBLE
        return status, (s.solutions[0] if s.solutions else None), nodes, s.solutions
    if res == 1:
        return STATUS_FOUND, s.solutions[0], nodes, s.solutions
    return STATUS_INFEASIBLE, None, nodes, []
