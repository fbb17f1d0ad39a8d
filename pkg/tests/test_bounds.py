import itertools
import math
import random
from fractions import Fraction

import pytest

from kranking.bounds import (
    CSV_HEADER,
    audit_rank_multiplicity,
    bound_report,
    degeneracy,
    harmonic_lower_bound,
    harmonic_number,
    multiplicity_histogram,
    parse_p_rule,
    random_chi2_experiment,
    random_subcubic,
    rows_to_csv,
    sample_gnp,
    summarize,
)
from kranking.constructions import SEED_2X2, block_product, rank_km_factorial, rank_km_kn, rank_km_kn_pow2
from kranking.graph import Graph, complete, cycle, hypercube, path, petersen
from kranking.solver import Budget
from kranking.verify import RankingError, RankMatrix, km_kn_graph, ranking_from_matrix

from conftest import random_graph


def _brute_degeneracy(g: Graph) -> int:
    best = 0
    for size in range(1, g.n + 1):
        for sub in itertools.combinations(range(g.n), size):
            s = set(sub)
            best = max(best, min(sum(1 for w in g.neighbors(v) if w in s) for v in sub))
    return best


def test_degeneracy_examples():
    assert degeneracy(path(5))[0] == 1
    assert degeneracy(cycle(6))[0] == 2
    assert degeneracy(complete(5))[0] == 4
    assert degeneracy(hypercube(4))[0] == 4
    assert degeneracy(Graph(3, []))[0] == 0


def test_degeneracy_matches_subset_definition():
    rng = random.Random(9)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 8), rng.random())
        k, order = degeneracy(g)
        assert k == _brute_degeneracy(g)
        assert sorted(order) == list(range(g.n))


def test_degeneracy_order_property():
    rng = random.Random(10)
    for _ in range(20):
        g = random_graph(rng, 25, 0.2)
        k, order = degeneracy(g)
        pos = {v: i for i, v in enumerate(order)}
        for v in order:
            later = sum(1 for w in g.neighbors(v) if pos[w] > pos[v])
            assert later <= k


def test_harmonic():
    assert harmonic_number(1) == 1
    assert harmonic_number(3) == Fraction(11, 6)
    assert harmonic_lower_bound(2, 2) == (Fraction(3), 3)
    assert harmonic_lower_bound(2, 4) == (Fraction(6), 6)
    assert harmonic_lower_bound(3, 6) == (Fraction(11), 11)
    assert harmonic_lower_bound(3, 4) == (Fraction(22, 3), 8)
    with pytest.raises(ValueError):
        harmonic_lower_bound(0, 3)


def test_constructions_meet_harmonic_bound():
    for m in range(1, 6):
        mat = rank_km_factorial(m)
        assert mat.rank_count == harmonic_lower_bound(m, mat.n)[1]


def test_audit_examples():
    assert audit_rank_multiplicity(RankMatrix(((1, 0), (0, 2)))) is None
    assert audit_rank_multiplicity([[0, 1, 2]]) is None
    with pytest.raises(RankingError):
        audit_rank_multiplicity(RankMatrix(((1, 2), (2, 1))))


def test_audit_on_constructed_matrices():
    mats = [rank_km_factorial(m) for m in range(1, 6)]
    mats += [rank_km_kn(2, 8), rank_km_kn(3, 12)]
    mats += [rank_km_kn_pow2(m, n) for m, n in [(2, 2), (4, 4), (4, 16), (8, 8)]]
    mats.append(block_product(rank_km_factorial(3), SEED_2X2))
    for mat in mats:
        assert audit_rank_multiplicity(mat) is None


def test_audit_on_random_valid_matrices():
    from kranking.verify import is_valid_matrix

    rng = random.Random(12)
    checked = 0
    while checked < 200:
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        mat = RankMatrix(tuple(tuple(rng.randrange(m * n) for _ in range(n)) for _ in range(m)))
        if is_valid_matrix(mat):
            assert audit_rank_multiplicity(mat) is None
            checked += 1


def test_multiplicity_histogram():
    hist = multiplicity_histogram(rank_km_factorial(3))
    assert hist == {1: 6, 2: 3, 3: 2}
    assert sum(k * a for k, a in hist.items()) == 18


def test_bound_report_km_kn():
    g = km_kn_graph(3, 6)
    rep = bound_report(g, construction=rank_km_kn(3, 6))
    assert rep.lower == 11 and rep.upper == 11 and rep.consistent()
    d = rep.as_dict()
    assert d["harmonic_bound"] == "11" and d["construction_upper"] == 11


def test_bound_report_with_solver():
    rep = bound_report(petersen(), solve=True)
    assert rep.lower == 5 == rep.upper
    assert rep.solver_bracket == (5, 5)


def test_bound_report_rejects_bad_construction():
    with pytest.raises(ValueError):
        bound_report(cycle(4), construction=ranking_from_matrix([[1, 1, 1, 1]]))


def test_gnp_extremes():
    assert sample_gnp(10, 0.0).m == 0
    assert sample_gnp(10, 1.0).m == 45
    with pytest.raises(ValueError):
        sample_gnp(5, 1.5)
    with pytest.raises(ValueError):
        sample_gnp(0, 0.5)


def test_gnp_edge_count_within_four_sigma():
    n, p = 200, 0.1
    pairs = n * (n - 1) // 2
    mean = pairs * p
    sd = math.sqrt(pairs * p * (1 - p))
    for seed in range(5):
        assert abs(sample_gnp(n, p, seed).m - mean) <= 4 * sd


def test_gnp_seeded():
    assert sample_gnp(30, 0.3, 7) == sample_gnp(30, 0.3, 7)
    assert sample_gnp(30, 0.3, 7) != sample_gnp(30, 0.3, 8)


def test_random_subcubic_degree():
    for seed in range(20):
        g = random_subcubic(25, seed)
        assert g.max_degree() <= 3


def test_parse_p_rule():
    rule = parse_p_rule("min(1, 2*sqrt(log(n)/n))")
    assert rule(100) == pytest.approx(2 * math.sqrt(math.log(100) / 100))
    assert parse_p_rule("0.3")(5) == 0.3
    assert parse_p_rule("5/n")(2) == 1.0
    assert parse_p_rule("-n")(3) == 0.0
    for bad in ["__import__('os')", "n.real", "open('x')", "[n]", "n if n else 1"]:
        with pytest.raises(ValueError):
            parse_p_rule(bad)


def test_experiment_rows_consistent():
    rows = random_chi2_experiment([6, 8], "0.4", trials=4, seed=3)
    assert len(rows) == 8
    for r in rows:
        assert r.degeneracy + 1 <= r.chi2_lo <= r.chi2_hi
        assert r.chi2_hi <= r.n
        assert r.exact
    again = random_chi2_experiment([6, 8], 0.4, trials=4, seed=3)
    assert [r.as_tuple() for r in rows] == [r.as_tuple() for r in again]


def test_experiment_parallel_matches_serial():
    serial = random_chi2_experiment([7], 0.5, trials=3, seed=1)
    parallel = random_chi2_experiment([7], 0.5, trials=3, seed=1, workers=2)
    assert [r.as_tuple() for r in serial] == [r.as_tuple() for r in parallel]


def test_experiment_budget_brackets():
    rows = random_chi2_experiment([12], 0.5, trials=2, seed=0, budget_nodes=3)
    for r in rows:
        assert r.degeneracy + 1 <= r.chi2_lo <= r.chi2_hi


def test_experiment_limits():
    with pytest.raises(ValueError):
        random_chi2_experiment([20], 0.5, trials=1)


def test_csv_and_summary():
    rows = random_chi2_experiment([5], lambda n: 0.5, trials=3)
    text = rows_to_csv(rows)
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 4
    summary = summarize(rows)
    assert summary[0]["n"] == 5 and summary[0]["trials"] == 3
    assert summary[0]["bracketed"] == 0


def test_harmonic_trivial_row():
    assert harmonic_lower_bound(1, 7) == (Fraction(7), 7)


def test_harmonic_bound_meets_constructions():
    for m in range(1, 7):
        n = math.factorial(m)
        mat = rank_km_kn(m, n)
        assert harmonic_lower_bound(m, n)[1] == mat.rank_count


def test_gnp_thirty_vertices_within_four_sigma():
    pairs = 30 * 29 // 2
    sd = math.sqrt(pairs * 0.3 * 0.7)
    for seed in range(10):
        assert abs(sample_gnp(30, 0.3, seed).m - 0.3 * pairs) <= 4 * sd


def test_experiment_edge_cases():
    assert all(r.chi2_lo == r.chi2_hi == 1 for r in random_chi2_experiment([1], 0.5, trials=3))
    assert all(r.chi2_lo == r.chi2_hi == 6 for r in random_chi2_experiment([6], 1.0, trials=3))
    for r in random_chi2_experiment([10], 0.6, trials=20, seed=5):
        assert r.chi2_lo >= r.degeneracy + 1
