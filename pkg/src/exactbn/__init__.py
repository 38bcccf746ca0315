"""Exact score-based Bayesian network structure discovery with space-time tradeoffs.

Three solver families share one problem instance (:class:`LocalScoreTable`):

* :func:`solve_full` -- dynamic programming over all node subsets.
* :func:`solve_partitioned` / :func:`solve_dnc` -- divide and conquer over
  ordered node partitions, down to polynomial space.
* :func:`solve_pairwise` -- partial orders built from ``p`` node pairs, with
  sparse best-parent maximisation and orientation-parallel execution.
"""

from .errors import (
    InfeasibleError,
    InputError,
    ResourceLimitError,
    ScoreFileError,
)
from .scores import (
    LocalScoreTable,
    bic_from_data,
    check_downward_closed,
    gen_random_instance,
    parse_scores,
    read_data,
    write_scores,
)
from .subset_dp import DagResult, best_parents_direct, build_fhat, solve_full
from .dnc import solve_dnc, solve_partitioned, solve_subproblem_dp
from .pairwise import (
    PairedOrder,
    RestrictedLattice,
    algorithm1,
    make_pairs,
    solve_pairwise,
)

__version__ = "0.1.0"

__all__ = [
    "DagResult",
    "InfeasibleError",
    "InputError",
    "LocalScoreTable",
    "PairedOrder",
    "ResourceLimitError",
    "RestrictedLattice",
    "ScoreFileError",
    "algorithm1",
    "best_parents_direct",
    "bic_from_data",
    "build_fhat",
    "check_downward_closed",
    "gen_random_instance",
    "make_pairs",
    "parse_scores",
    "read_data",
    "solve_dnc",
    "solve_full",
    "solve_pairwise",
    "solve_partitioned",
    "solve_subproblem_dp",
    "write_scores",
]
