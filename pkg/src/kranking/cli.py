"""Command-line entry point: ``kranking <subcommand> ...``.

Exit status: 0 on success, 1 on a violation or a budget-limited bracket,
2 on bad arguments or inputs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import constructions as C
from . import graph as G
from .bounds import bound_report, random_chi2_experiment, rows_to_csv, sample_gnp, summarize
from .solver import (
    Budget,
    enumerate_optimal_chi2,
    solve_chi2,
    solve_chi_k,
    solve_star_chromatic,
)
from .verify import (
    Ranking,
    RankingError,
    RankMatrix,
    ranking_from_matrix,
    verify_k_ranking,
    verify_star_coloring,
)

FAMILIES = (
    "hypercube",
    "cycle-product",
    "km-kn",
    "km-kn-pow2",
    "c3-cn",
    "subcubic-file",
    "petersen",
    "heawood",
    "wagner",
    "gnp",
)
DEFAULT_MAX_K = 4


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _k_value(text: str) -> float:
    if text.lower() in ("inf", "infinity", "oo"):
        return math.inf
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"k must be a positive integer or 'inf', got {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError("k must be >= 1")
    return k


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"family {args.family!r} requires {flags}")


def load_graph(args) -> G.Graph:
    """Resolve exactly one graph source (``--graph`` file or ``--family``)."""
    fam = args.family
    if args.graph is not None and fam not in (None, "subcubic-file"):
        raise UsageError("give either --graph or --family, not both")
    if fam is None or fam == "subcubic-file":
        if args.graph is None:
            raise UsageError("a graph source is required: --graph FILE or --family NAME")
        return G.read_graph(Path(args.graph).read_text())
    if fam == "hypercube":
        _need(args, "d")
        return G.hypercube(args.d)
    if fam == "cycle-product":
        _need(args, "lengths")
        return C.cycle_product_graph(args.lengths)
    if fam in ("km-kn", "km-kn-pow2"):
        _need(args, "m", "n")
        return G.cartesian_product(G.complete(args.m), G.complete(args.n))
    if fam == "c3-cn":
        _need(args, "n")
        return C.c3_cn_graph(args.n)
    if fam == "petersen":
        return G.petersen()
    if fam == "heawood":
        return G.heawood()
    if fam == "wagner":
        return G.wagner_c8_antipodal()
    if fam == "gnp":
        _need(args, "n", "p")
        return sample_gnp(args.n, args.p, args.seed)
    raise UsageError(f"unknown family {fam!r}")


def build_construction(args, g: G.Graph) -> tuple[Ranking, RankMatrix | None]:
    fam = args.family
    if fam == "hypercube":
        return C.rank_hypercube(args.d), None
    if fam == "cycle-product":
        return C.rank_cycle_product(args.lengths), None
    if fam == "km-kn":
        mat = C.rank_km_kn(args.m, args.n)
        return ranking_from_matrix(mat), mat
    if fam == "km-kn-pow2":
        mat = C.rank_km_kn_pow2(args.m, args.n)
        return ranking_from_matrix(mat), mat
    if fam == "c3-cn":
        mat = C.c3_cn_array(args.n)
        return ranking_from_matrix(mat), mat
    if fam in ("subcubic-file", "petersen", "heawood", "wagner", "gnp", None):
        return C.rank_subcubic(g, seed=args.seed), None
    raise UsageError(f"no construction for family {fam!r}")


def _budget(args) -> Budget:
    return Budget(nodes=args.budget_nodes or 0, seconds=args.budget_seconds or 0.0)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for ln in lines:
            print(ln)


def _write(path: str | None, text: str) -> None:
    if path is None:
        return
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ----------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> int:
    if args.family is None:
        raise UsageError("construct needs --family")
    g = load_graph(args)
    ranking, mat = build_construction(args, g)
    violation = verify_k_ranking(g, ranking, 2)
    _write(args.output, ranking.to_text())
    _write(args.graph_output, G.write_graph(g))
    if mat is not None:
        _write(args.matrix_output, mat.to_text())
    payload = {
        "family": args.family,
        "vertices": g.n,
        "edges": g.m,
        "rank_count": ranking.rank_count,
        "verified": violation is None,
        "ranking": list(ranking.ranks),
    }
    lines = [f"family: {args.family}", f"vertices: {g.n}", f"edges: {g.m}"]
    if mat is not None:
        payload["matrix"] = [list(r) for r in mat.rows]
        lines.append(f"matrix: {mat.m}x{mat.n}")
        lines.extend("  " + " ".join(f"{x:>3}" for x in row) for row in mat.rows)
    lines.append(f"ranks: {ranking.rank_count}")
    lines.append("verified: " + ("ok" if violation is None else str(violation)))
    _emit(args, payload, lines)
    return 0 if violation is None else 1


def cmd_verify(args) -> int:
    g = load_graph(args)
    if (args.ranking is None) == (args.matrix is None):
        raise UsageError("give exactly one of --ranking or --matrix")
    if args.ranking is not None:
        ranking = Ranking.from_text(Path(args.ranking).read_text(), n=g.n)
    else:
        ranking = ranking_from_matrix(RankMatrix.from_text(Path(args.matrix).read_text()))
    if args.star:
        violation = verify_star_coloring(g, ranking)
        what = "star coloring"
    else:
        if args.k > args.max_k:
            raise UsageError(f"k={args.k} exceeds --max-k {args.max_k} (raise it explicitly)")
        violation = verify_k_ranking(g, ranking, args.k)
        what = f"{args.k}-ranking"
    payload = {
        "ok": violation is None,
        "check": what,
        "rank_count": ranking.rank_count,
        "violation": None if violation is None else {"kind": violation.kind, "path": list(violation.path)},
    }
    if violation is None:
        lines = [f"ok: valid {what} with {ranking.rank_count} ranks"]
    else:
        lines = [f"violation: {violation}"]
    _emit(args, payload, lines)
    return 0 if violation is None else 1


def cmd_solve(args) -> int:
    g = load_graph(args)
    budget = _budget(args)
    if args.star:
        res = solve_star_chromatic(g, budget)
        label = "chi_s"
    elif args.k == 2:
        res = solve_chi2(g, budget)
        label = "chi2"
    else:
        res = solve_chi_k(g, args.k, budget)
        label = "chi_inf" if math.isinf(args.k) else f"chi{args.k}"
    if args.witness and res.witness is not None:
        Path(args.witness).write_text(res.witness.to_text())
    payload = {
        "quantity": label,
        "value": res.chi,
        "lower": res.lower,
        "upper": res.upper,
        "exact": res.exact,
        "nodes_explored": res.nodes_explored,
        "seconds": round(res.time, 6),
        "witness": None if res.witness is None else list(res.witness.ranks),
    }
    if res.exact:
        lines = [f"{label} = {res.chi}"]
    else:
        lines = [f"{label} in [{res.lower}, {res.upper}] (budget exceeded)"]
    lines.append(f"nodes: {res.nodes_explored}  time: {res.time:.3f}s")
    _emit(args, payload, lines)
    return 0 if res.exact else 1


def cmd_bounds(args) -> int:
    g = load_graph(args)
    construction = None
    if args.family is not None:
        ranking, mat = build_construction(args, g)
        construction = mat if mat is not None else ranking
    report = bound_report(g, construction, solve=args.solve, budget=_budget(args))
    payload = report.as_dict()
    lines = [f"graph: {report.graph_id}", f"degeneracy bound: {report.degeneracy_bound}"]
    if report.harmonic_bound is not None:
        lines.append(f"harmonic bound: {report.harmonic_bound} (ceil {math.ceil(report.harmonic_bound)})")
    if report.construction_upper is not None:
        lines.append(f"construction upper: {report.construction_upper}")
    if report.solver_bracket is not None:
        lines.append(f"solver bracket: [{report.solver_bracket[0]}, {report.solver_bracket[1]}]")
    if report.multiplicities:
        lines.append("rank multiplicities: " + " ".join(f"{k}:{v}" for k, v in report.multiplicities.items()))
    up = report.upper
    lines.append(f"chi2 in [{report.lower}, {up if up is not None else '?'}]")
    _emit(args, payload, lines)
    return 0 if report.consistent() else 1


def cmd_experiment(args) -> int:
    rule = args.p
    rows = random_chi2_experiment(
        args.n_values, rule, args.trials, seed=args.seed,
        budget_nodes=args.budget_nodes or 0, budget_seconds=args.budget_seconds or 0.0,
        workers=args.workers,
    )
    text = rows_to_csv(rows)
    if args.output:
        Path(args.output).write_text(text)
    summary = summarize(rows)
    if args.json:
        print(json.dumps({"rows": [dict(zip(("n", "p", "trial", "chi2_lo", "chi2_hi", "max_degree", "degeneracy"), r.as_tuple())) for r in rows], "summary": summary}, sort_keys=True))
    else:
        if not args.output:
            sys.stdout.write(text)
        for s in summary:
            print(
                f"# n={s['n']} p={s['p']:.4g} trials={s['trials']} "
                f"chi2=[{s['mean_chi2_lo']:.3f}, {s['mean_chi2_hi']:.3f}] "
                f"maxdeg={s['mean_max_degree']:.3f} bracketed={s['bracketed']}"
            )
    return 1 if any(not r.exact for r in rows) else 0


def cmd_enumerate(args) -> int:
    g = load_graph(args)
    res = enumerate_optimal_chi2(g, _budget(args), max_solutions=args.max_solutions or 0)
    payload = {
        "chi2": res.chi,
        "solutions": res.total,
        "classes": res.classes,
        "class_sizes": res.class_sizes,
        "automorphisms": res.automorphism_count,
        "complete": res.complete,
        "representatives": [list(r.ranks) for r in res.representatives],
    }
    lines = [
        f"chi2 = {res.chi}",
        f"optimal 2-rankings: {res.total}",
        f"automorphisms: {res.automorphism_count}",
        f"classes up to automorphism: {res.classes}" + ("" if res.complete else " (incomplete)"),
    ]
    _emit(args, payload, lines)
    return 0 if res.complete else 1


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("graph source")
    src.add_argument("--graph", help="edge-list file")
    src.add_argument("--family", choices=FAMILIES)
    src.add_argument("--d", type=int, help="hypercube dimension")
    src.add_argument("--lengths", type=_int_list, help="cycle lengths, e.g. 4,8")
    src.add_argument("--m", type=int)
    src.add_argument("--n", type=int)
    src.add_argument("--p", type=float, help="edge probability for gnp")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget-nodes", type=int, default=0)
    budget.add_argument("--budget-seconds", type=float, default=0.0)

    parser = argparse.ArgumentParser(prog="kranking", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build an explicit 2-ranking")
    p.add_argument("--output", "-o", help="ranking file ('-' for stdout)")
    p.add_argument("--matrix-output", help="rank matrix file for K_m x K_n / C3 x Cn families")
    p.add_argument("--graph-output", help="write the graph as an edge list")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check a ranking or star coloring")
    p.add_argument("--ranking", help="'vertex rank' file")
    p.add_argument("--matrix", help="rank matrix file (K_m x K_n, row-major ids)")
    p.add_argument("--k", type=_k_value, default=2)
    p.add_argument("--max-k", type=_k_value, default=DEFAULT_MAX_K)
    p.add_argument("--star", action="store_true", help="check a star coloring instead")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[common, budget], help="exact chi_k by branch and bound")
    p.add_argument("--k", type=_k_value, default=2)
    p.add_argument("--star", action="store_true", help="star chromatic number instead")
    p.add_argument("--witness", help="write the optimal ranking here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bounds", parents=[common, budget], help="lower/upper bound report")
    p.add_argument("--solve", action="store_true", help="also run the exact solver")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("experiment", help="chi_2 of random G(n, p) graphs, as CSV")
    p.add_argument("--n-values", type=_int_list, required=True)
    p.add_argument("--p", default="0.5", help="probability or expression in n, e.g. 'min(1, 2*sqrt(log(n)/n))'")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget-nodes", type=int, default=2_000_000)
    p.add_argument("--budget-seconds", type=float, default=0.0)
    p.add_argument("--output", "-o", help="CSV path (default stdout)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("enumerate", parents=[common, budget], help="optimal 2-rankings up to automorphism")
    p.add_argument("--max-solutions", type=int, default=0)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, G.GraphError, RankingError, ValueError, OSError) as exc:
        print(f"kranking {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
