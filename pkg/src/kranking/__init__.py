"""Construct, verify, and exactly minimize 2-rankings (and k-rankings) of graphs."""

from ._backend import COMPILED
from .bounds import audit_rank_multiplicity, degeneracy, harmonic_lower_bound, random_chi2_experiment, sample_gnp
from .constructions import (
    block_product,
    rank_c3_cn,
    rank_cycle_product,
    rank_hypercube,
    rank_km_factorial,
    rank_km_kn,
    rank_km_kn_pow2,
    rank_subcubic,
)
from .graph import (
    Graph,
    cartesian_product,
    complete,
    cycle,
    distance_power,
    heawood,
    hypercube,
    path,
    petersen,
    read_graph,
    wagner_c8_antipodal,
    write_graph,
)
from .solver import Budget, SolveResult, enumerate_optimal_chi2, solve_chi2, solve_chi_k, solve_star_chromatic
from .verify import Ranking, RankMatrix, Violation, ranking_from_matrix, verify_k_ranking, verify_star_coloring

__version__ = "0.1.0"
