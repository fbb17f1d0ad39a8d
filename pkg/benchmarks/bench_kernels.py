"""Compare the compiled and pure-Python kernels on the solver's hot paths.

    python benchmarks/bench_kernels.py [--repeat N]

Each search row runs one level of iterative deepening (an infeasibility
proof, except for Q4 where 5 ranks succeed); the last row screens a
full 2-ranking.  Inputs are identical for both backends, and results and
node counts must agree.
"""

import argparse
import time

from kranking import _backend
from kranking import _pykernels
from kranking.constructions import c3_cn_graph, hypercube_ranks
from kranking.graph import cartesian_product, complete, heawood, hypercube, petersen
from kranking.solver import vertex_order


def _search_cases():
    yield "Petersen, 4 ranks", petersen(), 4
    yield "Heawood, 4 ranks", heawood(), 4
    yield "C3xC5, 5 ranks", c3_cn_graph(5), 5
    yield "C3xC7, 5 ranks", c3_cn_graph(7), 5
    yield "C3xC9, 5 ranks", c3_cn_graph(9), 5
    yield "Q4, 5 ranks", hypercube(4), 5
    yield "K3xK6, 8 ranks", cartesian_product(complete(3), complete(6)), 8


def _best(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    compiled = _backend.compiled_kernels
    if compiled is None:
        print("compiled extension not available; only timing pure Python")
    print(f"{'case':<22}{'nodes':>10}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for label, g, t in _search_cases():
        order = vertex_order(g)
        py_time, py_out = _best(lambda: _pykernels.search(g.adjacency, order, t), args.repeat)
        line = f"{label:<22}{py_out[2]:>10}{py_time:>12.4f}"
        if compiled is not None:
            cy_time, cy_out = _best(lambda: compiled.search(g.adjacency, order, t), args.repeat)
            assert cy_out == py_out, f"backends disagree on {label}"
            line += f"{cy_time:>12.4f}{py_time / cy_time:>9.1f}x"
        print(line)
    q = hypercube(12)
    ranks = hypercube_ranks(12)
    py_time, py_bad = _best(lambda: _pykernels.first_violation_k2(q.adjacency, ranks, 2), args.repeat)
    line = f"{'Q12 verify (k=2)':<22}{'-':>10}{py_time:>12.4f}"
    if compiled is not None:
        cy_time, cy_bad = _best(lambda: compiled.first_violation_k2(q.adjacency, ranks, 2), args.repeat)
        assert cy_bad == py_bad is False
        line += f"{cy_time:>12.4f}{py_time / cy_time:>9.1f}x"
    print(line)


if __name__ == "__main__":
    main()
