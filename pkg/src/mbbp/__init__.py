"""Maximum balanced biclique solver toolkit.

Find large balanced bicliques in bipartite graphs with a restart tabu search,
shrink instances by degree peeling plus exact branch-and-bound on small
components, and benchmark the whole thing over generated or downloaded
instance collections.
"""

from .bipgraph import BipartiteGraph
from .exact import ExactOutcome, exact_search
from .harness import (CampaignConfig, CampaignReport, InstanceResult,
                      InstanceSpec, run_campaign)
from .instance_io import (KONECT_DATASETS, FetchError, InstanceMeta,
                          ParseError, export_lp, fetch_konect, gen_random,
                          parse_bip, parse_konect, write_bip)
from .reduction import peel, reduce_by_exact
from .solution import (Biclique, balance_deviation, balanced_size,
                       is_biclique, make_balance)
from .solver import (ReductionVariant, RunReport, SolverParams,
                     random_init_solution, solve)
from .tabu_search import (SearchState, TabuParams, UnbalanceVariant,
                          build_candidates, delta, push, repair, tabu_improve,
                          tabu_tenure)

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph", "Biclique", "balanced_size", "balance_deviation",
    "is_biclique", "make_balance", "SearchState", "TabuParams",
    "UnbalanceVariant", "delta", "push", "build_candidates", "tabu_tenure",
    "repair", "tabu_improve", "ExactOutcome", "exact_search", "peel",
    "reduce_by_exact", "ReductionVariant", "SolverParams", "RunReport",
    "random_init_solution", "solve", "InstanceMeta", "ParseError",
    "FetchError", "gen_random", "parse_bip", "write_bip", "parse_konect",
    "export_lp", "fetch_konect", "KONECT_DATASETS", "InstanceSpec",
    "CampaignConfig", "CampaignReport", "InstanceResult", "run_campaign",
    "__version__",
]
