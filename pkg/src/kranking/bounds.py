"""Lower bounds, the rank-multiplicity audit, and the random-graph experiment harness."""

from __future__ import annotations

import ast
import csv
import io
import math
import operator
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .graph import Graph


def degeneracy(g: Graph) -> tuple[int, list[int]]:
    """Smallest-last peeling; returns ``(k, removal_order)``.

    ``k`` is the largest degree seen at removal time.  Ties go to the
    lowest vertex id, so the order is deterministic.
    """
    n = g.n
    deg = [g.degree(v) for v in range(n)]
    maxdeg = max(deg, default=0)
    buckets: list[set[int]] = [set() for _ in range(maxdeg + 1)]
    for v, d in enumerate(deg):
        buckets[d].add(v)
    alive = [True] * n
    order = []
    k = 0
    low = 0
    for _ in range(n):
        low = max(0, low - 1)
        while not buckets[low]:
            low += 1
        v = min(buckets[low])
        buckets[low].discard(v)
        alive[v] = False
        order.append(v)
        k = max(k, low)
        for w in g.neighbors(v):
            if alive[w]:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets[deg[w]].add(w)
    return k, order


def harmonic_number(m: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, m + 1)), Fraction(0))


def harmonic_lower_bound(m: int, n: int) -> tuple[Fraction, int]:
    """``n * H_m`` exactly, and its ceiling (the integer lower bound on chi_2(K_m □ K_n))."""
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be positive, got m={m}, n={n}")
    value = n * harmonic_number(m)
    return value, math.ceil(value)


def multiplicity_histogram(mat) -> dict[int, int]:
    """``a_k``: how many ranks are used by exactly ``k`` vertices."""
    counts: dict[int, int] = {}
    for x in mat.entries():
        counts[x] = counts.get(x, 0) + 1
    hist: dict[int, int] = {}
    for c in counts.values():
        hist[c] = hist.get(c, 0) + 1
    return dict(sorted(hist.items()))


def audit_rank_multiplicity(mat) -> int | None:
    """Check that each column's ``k`` highest ranks occur at most ``k`` times overall.

    Holds for every valid 2-ranking of ``K_m □ K_n``; returns the first
    failing column index, or ``None``.  Raises on an invalid matrix.
    """
    from .verify import RankingError, RankMatrix, matrix_violation

    if not isinstance(mat, RankMatrix):
        mat = RankMatrix(tuple(map(tuple, mat)))
    bad = matrix_violation(mat)
    if bad is not None:
        raise RankingError(f"not a 2-ranking matrix: cells {bad}")
    counts: dict[int, int] = {}
    for x in mat.entries():
        counts[x] = counts.get(x, 0) + 1
    for j in range(mat.n):
        col = sorted(mat.column(j), reverse=True)
        for k in range(1, mat.m + 1):
            if any(counts[x] > k for x in col[:k]):
                return j
    return None


@dataclass
class BoundReport:
    """Lower and upper bounds collected for one graph."""

    graph_id: str
    degeneracy_bound: int
    harmonic_bound: Fraction | None = None
    construction_upper: int | None = None
    solver_bracket: tuple[int, int] | None = None
    multiplicities: dict[int, int] = field(default_factory=dict)

    @property
    def lower(self) -> int:
        lo = self.degeneracy_bound
        if self.harmonic_bound is not None:
            lo = max(lo, math.ceil(self.harmonic_bound))
        if self.solver_bracket is not None:
            lo = max(lo, self.solver_bracket[0])
        return lo

    @property
    def upper(self) -> int | None:
        ups = [u for u in (self.construction_upper, self.solver_bracket and self.solver_bracket[1]) if u]
        return min(ups) if ups else None

    def consistent(self) -> bool:
        return self.upper is None or self.lower <= self.upper

    def as_dict(self) -> dict:
        return {
            "graph": self.graph_id,
            "degeneracy_bound": self.degeneracy_bound,
            "harmonic_bound": None if self.harmonic_bound is None else str(self.harmonic_bound),
            "construction_upper": self.construction_upper,
            "solver_bracket": list(self.solver_bracket) if self.solver_bracket else None,
            "multiplicities": self.multiplicities,
            "lower": self.lower,
            "upper": self.upper,
        }


def bound_report(g: Graph, construction=None, solve: bool = False, budget=None) -> BoundReport:
    from .verify import RankMatrix, is_k_ranking, ranking_from_matrix

    report = BoundReport(g.name or f"n{g.n}", degeneracy(g)[0] + 1)
    if "km_kn" in g.meta:
        m, n = g.meta["km_kn"]
        report.harmonic_bound = harmonic_lower_bound(min(m, n), max(m, n))[0]
    if construction is not None:
        if isinstance(construction, RankMatrix):
            report.multiplicities = multiplicity_histogram(construction)
            construction = ranking_from_matrix(construction)
        if not is_k_ranking(g, construction, 2):
            raise ValueError("construction is not a 2-ranking of the graph")
        report.construction_upper = construction.rank_count
    if solve:
        from .solver import solve_chi2

        res = solve_chi2(g, budget)
        report.solver_bracket = (res.lower, res.upper)
    return report


# ----------------------------------------------------------------------
# random graphs


def sample_gnp(n: int, p: float, seed=0) -> Graph:
    """Erdős–Rényi ``G(n, p)``; pairs are visited in lexicographic order."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges, name=f"G({n},{p:g})")


def random_subcubic(n: int, seed=0, density: float = 1.0) -> Graph:
    """Random graph with maximum degree at most 3.

    Shuffles all pairs and keeps each (with probability ``density``) while
    both endpoints still have degree below 3.
    """
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for u, v in pairs:
        if deg[u] < 3 and deg[v] < 3 and rng.random() < density:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges, name=f"subcubic{n}")


_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_FUNCS = {"sqrt": math.sqrt, "log": math.log, "exp": math.exp, "min": min, "max": max}


def parse_p_rule(expr: str) -> Callable[[int], float]:
    """Compile an arithmetic expression in ``n`` into a probability rule.

    Only numbers, ``n``, ``+ - * / **``, and ``sqrt/log/exp/min/max`` are
    allowed, e.g. ``"min(1, 1.5*sqrt(log(n)/n))"``.
    """
    tree = ast.parse(expr, mode="eval")

    def ev(node, n):
        if isinstance(node, ast.Expression):
            return ev(node.body, n)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return node.value
        if isinstance(node, ast.Name) and node.id == "n":
            return n
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left, n), ev(node.right, n))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand, n)
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS
            and not node.keywords
        ):
            return _FUNCS[node.func.id](*(ev(a, n) for a in node.args))
        raise ValueError(f"unsupported expression element: {ast.dump(node)}")

    # fail early on bad syntax elements
    ev(tree, 2)

    def rule(n: int) -> float:
        return min(1.0, max(0.0, float(ev(tree, n))))

    return rule


CSV_HEADER = ("n", "p", "trial", "chi2_lo", "chi2_hi", "max_degree", "degeneracy")


@dataclass
class TrialRow:
    n: int
    p: float
    trial: int
    chi2_lo: int
    chi2_hi: int
    max_degree: int
    degeneracy: int

    @property
    def exact(self) -> bool:
        return self.chi2_lo == self.chi2_hi

    def as_tuple(self) -> tuple:
        return (self.n, self.p, self.trial, self.chi2_lo, self.chi2_hi, self.max_degree, self.degeneracy)


def trial_seed(seed: int, n: int, trial: int) -> str:
    return f"{seed}:{n}:{trial}"


def _run_trial(args) -> TrialRow:
    from .solver import Budget, solve_chi2

    n, p, trial, seed, nodes, seconds = args
    g = sample_gnp(n, p, trial_seed(seed, n, trial))
    res = solve_chi2(g, Budget(nodes=nodes, seconds=seconds))
    return TrialRow(n, p, trial, res.lower, res.upper, g.max_degree(), degeneracy(g)[0])


MAX_EXPERIMENT_N = 14


def random_chi2_experiment(
    n_values: Iterable[int],
    p_rule,
    trials: int,
    seed: int = 0,
    budget_nodes: int = 2_000_000,
    budget_seconds: float = 0.0,
    workers: int = 1,
) -> list[TrialRow]:
    """Solve ``chi_2`` on sampled ``G(n, p)`` graphs.

    ``p_rule`` is a float, a callable ``n -> p``, or an expression string
    for :func:`parse_p_rule`.  Trial ``i`` at size ``n`` uses its own seed
    derived from ``(seed, n, i)``, so rows do not depend on ``workers``.
    """
    if isinstance(p_rule, str):
        p_rule = parse_p_rule(p_rule)
    elif not callable(p_rule):
        fixed = float(p_rule)
        p_rule = lambda n: fixed  # noqa: E731
    jobs = []
    for n in n_values:
        if n > MAX_EXPERIMENT_N:
            raise ValueError(f"exact experiments are limited to n <= {MAX_EXPERIMENT_N}")
        p = p_rule(n)
        jobs.extend((n, p, t, seed, budget_nodes, budget_seconds) for t in range(trials))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_trial, jobs))
    return [_run_trial(j) for j in jobs]


def rows_to_csv(rows: Sequence[TrialRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.as_tuple())
    return buf.getvalue()


def summarize(rows: Sequence[TrialRow]) -> list[dict]:
    """Per-``n`` means of the chi_2 bracket and maximum degree."""
    groups: dict[int, list[TrialRow]] = {}
    for r in rows:
        groups.setdefault(r.n, []).append(r)
    out = []
    for n, rs in sorted(groups.items()):
        c = len(rs)
        out.append({
            "n": n,
            "p": rs[0].p,
            "trials": c,
            "mean_chi2_lo": sum(r.chi2_lo for r in rs) / c,
            "mean_chi2_hi": sum(r.chi2_hi for r in rs) / c,
            "mean_max_degree": sum(r.max_degree for r in rs) / c,
            "bracketed": sum(not r.exact for r in rs),
        })
    return out
