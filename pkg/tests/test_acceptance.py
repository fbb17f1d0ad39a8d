"""Acceptance criteria, one test per criterion.

Each test records a ``PASS``/``FAIL`` line; the lines are printed in the
pytest terminal summary (see ``conftest.py``) and by running this file
directly.  Set ``KRANKING_SLOW=1`` to also run the unseeded K3 x K6 proof,
which takes several minutes with the compiled kernels.
"""

import contextlib
import math
import os
import random
import time

import pytest

from kranking.bounds import (
    audit_rank_multiplicity,
    degeneracy,
    harmonic_lower_bound,
    random_chi2_experiment,
    random_subcubic,
)
from kranking.constructions import (
    block_product,
    c3_cn_graph,
    cycle_product_graph,
    rank_c3_cn,
    rank_cycle_product,
    rank_hypercube,
    rank_km_factorial,
    rank_km_kn,
    rank_km_kn_pow2,
    rank_subcubic,
)
from kranking.graph import cartesian_product, cycle, distance_power, heawood, hypercube, path, petersen, wagner_c8_antipodal
from kranking.solver import Budget, solve_chi2, solve_chi_k, solve_star_chromatic
from kranking.verify import RankMatrix, is_k_ranking, is_valid_matrix, km_kn_graph, ranking_from_matrix

from conftest import naive_is_k_ranking, random_graph

RESULTS: dict[int, str] = {}

TEN_MINUTES = Budget(seconds=600)
HALF_HOUR = Budget(seconds=1800)


@contextlib.contextmanager
def criterion(number: int, title: str):
    notes: list[str] = []
    try:
        yield notes
    except BaseException as exc:
        RESULTS[number] = f"criterion {number} FAIL  {title}: {type(exc).__name__}: {exc}".rstrip()
        raise
    RESULTS[number] = f"criterion {number} PASS  {title}" + (f" ({'; '.join(notes)})" if notes else "")


def test_criterion_1_hypercube():
    with criterion(1, "hypercube chi2 = d+1") as notes:
        start = time.perf_counter()
        for d in range(13):
            r = rank_hypercube(d)
            assert r.rank_count == d + 1, f"Q{d}: {r.rank_count} ranks"
            assert is_k_ranking(hypercube(d), r), f"Q{d} construction invalid"
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"construct+verify Q0..Q12 took {elapsed:.2f}s"
        notes.append(f"Q0..Q12 built and verified in {elapsed:.2f}s")
        for d in range(5):
            res = solve_chi2(hypercube(d), TEN_MINUTES)
            if res.exact:
                assert res.chi == d + 1, f"solver gives chi2(Q{d}) = {res.chi}"
            else:
                assert res.lower == d + 1 == res.upper, f"Q{d} bracket [{res.lower}, {res.upper}]"
        notes.append("solver confirms Q0..Q4")


def test_criterion_2_cycle_products():
    with criterion(2, "cycle products chi2 = 2d+1") as notes:
        for lengths in [(4, 4), (8,), (4, 8), (8, 12)]:
            g = cycle_product_graph(lengths)
            r = rank_cycle_product(lengths)
            d = len(lengths)
            assert r.rank_count == 2 * d + 1, f"{lengths}: {r.rank_count} ranks"
            assert is_k_ranking(g, r), f"{lengths}: construction invalid"
            assert degeneracy(g)[0] + 1 == 2 * d + 1, f"{lengths}: degeneracy does not certify"
        notes.append("4 products, degeneracy-certified")


def test_criterion_3_km_kn():
    with criterion(3, "K_m x K_n chi2 = n H_m") as notes:
        for (m, n), count in zip([(2, 2), (2, 4), (3, 6)], (3, 6, 11)):
            mat = rank_km_kn(m, n)
            assert mat.rank_count == count, f"K{m}xK{n}: {mat.rank_count} ranks"
            assert mat.rank_count == harmonic_lower_bound(m, n)[1]
            assert is_k_ranking(km_kn_graph(m, n), ranking_from_matrix(mat))
        for (m, n), count in [((2, 2), 3), ((2, 4), 6)]:
            res = solve_chi2(km_kn_graph(m, n), TEN_MINUTES, use_structure=False)
            assert res.chi == count, f"solver gives chi2(K{m}xK{n}) = {res.chi}"
        g = km_kn_graph(3, 6)
        res = solve_chi2(g, HALF_HOUR, upper_hint=ranking_from_matrix(rank_km_kn(3, 6)))
        assert (res.lower, res.upper) == (11, 11), f"K3xK6 bracket [{res.lower}, {res.upper}]"
        notes.append("solver confirms 3 and 6; K3xK6 bracketed [11, 11] by harmonic bound and construction")


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get("KRANKING_SLOW"), reason="set KRANKING_SLOW=1 (several minutes)")
def test_criterion_3_k3_k6_unseeded():
    res = solve_chi2(km_kn_graph(3, 6), HALF_HOUR, use_structure=False)
    assert res.chi == 11, f"bracket [{res.lower}, {res.upper}] after {res.time:.0f}s"


def test_criterion_4_pow2():
    with criterion(4, "power-of-two K_m x K_n upper bound") as notes:
        for (m, n), count in zip([(2, 2), (2, 4), (4, 4), (4, 8)], (3, 6, 9, 18)):
            mat = rank_km_kn_pow2(m, n)
            assert mat.rank_count == count, f"K{m}xK{n}: {mat.rank_count} ranks"
            assert math.isclose(n * m ** (math.log2(3) - 1), count)
            assert is_valid_matrix(mat) and is_k_ranking(km_kn_graph(m, n), ranking_from_matrix(mat))
        notes.append("3, 6, 9, 18 ranks")


def test_criterion_5_c3_cn():
    with criterion(5, "C3 x Cn: 5 for even n, 6 for odd n") as notes:
        for n in (4, 6, 8, 10, 12):
            g = c3_cn_graph(n)
            r = rank_c3_cn(n)
            assert r.rank_count == 5 and is_k_ranking(g, r), f"C3xC{n}"
            assert degeneracy(g)[0] + 1 == 5
        res = solve_chi2(c3_cn_graph(5), TEN_MINUTES)
        assert res.lower >= 6, f"chi2(C3xC5) lower bound {res.lower}"
        r25 = rank_c3_cn(25)
        assert r25.rank_count == 6 and is_k_ranking(c3_cn_graph(25), r25)
        start = time.perf_counter()
        base = solve_chi2(cartesian_product(cycle(3), path(2)))
        elapsed = time.perf_counter() - start
        assert base.exact and base.chi >= 5 and elapsed < 1.0, f"C3xP2: {base.chi} in {elapsed:.2f}s"
        notes.append(f"chi2(C3xC5) = {res.chi}; chi2(C3xP2) = {base.chi} in {elapsed:.3f}s")


def test_criterion_6_subcubic(cubic_corpus):
    with criterion(6, "subcubic graphs have chi2 <= 7") as notes:
        graphs = [petersen(), heawood(), wagner_c8_antipodal()]
        for n, found in cubic_corpus.items():
            graphs.extend(found)
        corpus = sum(len(v) for v in cubic_corpus.values())
        rng = random.Random(2024)
        for i in range(200):
            graphs.append(random_subcubic(rng.randint(1, 30), seed=i, density=rng.uniform(0.4, 1.0)))
        worst = 0
        for g in graphs:
            r = rank_subcubic(g)
            assert r.rank_count <= 7 and is_k_ranking(g, r), f"{g.name or g.n}: {r.rank_count} ranks"
            worst = max(worst, r.rank_count)
        notes.append(f"{len(graphs)} graphs incl. {corpus} cubic on <= 10 vertices; max {worst} ranks")


def test_criterion_7_five_rank_facts():
    with criterion(7, "Petersen and Heawood need 5 ranks; Wagner chi_s = 6") as notes:
        for g in (petersen(), heawood()):
            res = solve_chi2(g, TEN_MINUTES)
            assert res.chi == 5, f"{g.name}: [{res.lower}, {res.upper}]"
            assert is_k_ranking(g, res.witness)
        star = solve_star_chromatic(wagner_c8_antipodal(), TEN_MINUTES)
        assert star.chi == 6, f"wagner chi_s = {star.chi}"
        notes.append("solver-certified")


def _random_valid_matrix(rng):
    while True:
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        mat = RankMatrix(tuple(tuple(rng.randrange(m * n) for _ in range(n)) for _ in range(m)))
        if is_valid_matrix(mat):
            order = {v: i for i, v in enumerate(sorted(set(mat.entries())))}
            return RankMatrix(tuple(tuple(order[x] for x in row) for row in mat.rows))


def test_criterion_8_property_suites():
    with criterion(8, "property suites") as notes:
        rng = random.Random(88)
        for _ in range(50):
            g = random_graph(rng, rng.randint(1, 8), rng.uniform(0.15, 0.8))
            chi = solve_chi_k(g, 1).chi
            chi_s = solve_star_chromatic(g).chi
            chi_2 = solve_chi2(g).chi
            chi_sq = solve_chi_k(distance_power(g, 2), 1).chi
            assert chi <= chi_s <= chi_2 <= chi_sq, (chi, chi_s, chi_2, chi_sq)
        mats = [rank_km_factorial(m) for m in range(1, 6)]
        mats += [rank_km_kn(m, n) for m, n in [(2, 2), (2, 4), (3, 6), (3, 12), (4, 24)]]
        mats += [rank_km_kn_pow2(m, n) for m, n in [(2, 2), (2, 4), (4, 4), (4, 8), (8, 8)]]
        for mat in mats:
            assert audit_rank_multiplicity(mat) is None
        for _ in range(100):
            n = rng.randint(1, 9)
            g = random_graph(rng, n, rng.uniform(0.1, 0.7))
            r = [rng.randint(1, rng.randint(1, n)) for _ in range(n)]
            assert is_k_ranking(g, r, 2) == naive_is_k_ranking(g, r, 2)
        for _ in range(50):
            a, b = _random_valid_matrix(rng), _random_valid_matrix(rng)
            assert is_valid_matrix(block_product(a, b))
        notes.append(f"50 sandwich chains, {len(mats)} audits, 100 verifier pairs, 50 block products")


def test_criterion_9_desk_scale_substitute():
    with criterion(9, "asymptotic growth not reproducible at desk scale; degeneracy bound holds on samples") as notes:
        rows = random_chi2_experiment([8, 10, 12], "min(1, 3/sqrt(n))", trials=5, seed=9)
        for row in rows:
            assert row.degeneracy + 1 <= row.chi2_lo <= row.chi2_hi, row
        notes.append(f"{len(rows)} sampled graphs, {sum(r.exact for r in rows)} solved exactly")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
