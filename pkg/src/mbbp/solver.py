"""Restart solver: random greedy seeds, tabu improvement, graph reduction."""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .bipgraph import BipartiteGraph
from .reduction import peel, reduce_by_exact
from .solution import Biclique, balance_deviation, balanced_size, make_balance
from .tabu_search import TabuParams, UnbalanceVariant, tabu_improve

__all__ = ["ReductionVariant", "SolverParams", "RunReport",
           "random_init_solution", "solve"]


class ReductionVariant(enum.Enum):
    NONE = "none"
    PEEL = "peel"
    PEEL_EXACT = "peel+exact"

    @classmethod
    def from_str(cls, s: str) -> "ReductionVariant":
        for m in cls:
            if m.value == s:
                return m
        raise ValueError(f"unknown reduction variant {s!r}; "
                         "use none, peel, or peel+exact")


@dataclass(frozen=True)
class SolverParams:
    """One run's knobs. dense()/sparse() give the two tuned profiles."""

    L: int = 1000
    alpha: float = 0.30
    K: int = 100
    exact_budget: float | None = 10.0
    time_limit: float = 60.0
    max_restarts: int | None = None
    unbalance: UnbalanceVariant = UnbalanceVariant.BOUND_2
    reduction: ReductionVariant = ReductionVariant.PEEL_EXACT
    seed: int = 0

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("L must be >= 1")
        if self.K < 1:
            raise ValueError("K must be >= 1")
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.max_restarts is not None and self.max_restarts < 1:
            raise ValueError("max_restarts must be >= 1 when set")

    @staticmethod
    def dense(**overrides) -> "SolverParams":
        """Profile for dense random instances: deep search, short tenures."""
        return replace(SolverParams(L=1000, alpha=0.30, K=100), **overrides)

    @staticmethod
    def sparse(**overrides) -> "SolverParams":
        """Profile for large sparse instances: shallow search, long tenures,
        bigger exactly-solvable components."""
        return replace(SolverParams(L=100, alpha=1.74, K=500), **overrides)

    def tabu_params(self) -> TabuParams:
        return TabuParams(L=self.L, alpha=self.alpha)


@dataclass
class RunReport:
    """Outcome of one solve run. best is strictly balanced."""

    best: Biclique
    omega: int
    proven_optimal: bool
    time_to_best: float
    total_time: float
    restarts: int
    removed_by_peel: int
    removed_by_exact: int

    def to_dict(self) -> dict:
        return {
            "x": sorted(self.best.x),
            "y": sorted(self.best.y),
            "omega": self.omega,
            "proven_optimal": self.proven_optimal,
            "time_to_best": self.time_to_best,
            "total_time": self.total_time,
            "restarts": self.restarts,
            "removed_by_peel": self.removed_by_peel,
            "removed_by_exact": self.removed_by_exact,
        }

    @staticmethod
    def from_dict(d: dict) -> "RunReport":
        return RunReport(best=Biclique.of(d["x"], d["y"]), omega=d["omega"],
                         proven_optimal=d["proven_optimal"],
                         time_to_best=d["time_to_best"],
                         total_time=d["total_time"], restarts=d["restarts"],
                         removed_by_peel=d["removed_by_peel"],
                         removed_by_exact=d["removed_by_exact"])

    def same_outcome(self, other: "RunReport") -> bool:
        """Equality ignoring wall-clock fields."""
        return (self.best == other.best and self.omega == other.omega
                and self.proven_optimal == other.proven_optimal
                and self.restarts == other.restarts
                and self.removed_by_peel == other.removed_by_peel
                and self.removed_by_exact == other.removed_by_exact)


def random_init_solution(g: BipartiteGraph, rng: np.random.Generator) -> Biclique:
    """Greedy random biclique: start anywhere, then alternately add a random
    common neighbor to each side until the side whose turn it is has no
    candidate left. Side sizes differ by at most 1."""
    alive = g.alive_ids()
    if alive.size == 0:
        raise ValueError("graph has no alive vertices")
    start = int(alive[rng.integers(alive.size)])
    xs: list[int] = []
    ys: list[int] = []
    cand = {True: None, False: None}  # keyed by "next pick is U-side"
    if g.is_u_side(start):
        xs.append(start)
        cand[False] = g.neighbors(start)
        turn = False
    else:
        ys.append(start)
        cand[True] = g.neighbors(start)
        turn = True
    while True:
        pool = cand[turn]
        if pool is None or pool.size == 0:
            break
        k = int(rng.integers(pool.size))
        w = int(pool[k])
        cand[turn] = np.delete(pool, k)
        (xs if turn else ys).append(w)
        other = cand[not turn]
        if other is None:
            grown = np.setdiff1d(g.neighbors(w),
                                 np.asarray(ys if turn else xs, dtype=np.int64),
                                 assume_unique=True)
        else:
            grown = np.intersect1d(other, g.neighbors(w), assume_unique=True)
        cand[not turn] = grown
        turn = not turn
    return Biclique.of(xs, ys)


def solve(g: BipartiteGraph, params: SolverParams) -> RunReport:
    """Run the restart loop on a private copy of g until the time limit,
    the restart cap, or a proof of optimality.

    Each restart seeds the tabu search with a random greedy biclique. After
    every improvement of the incumbent balanced size omega, while omega is at
    least the smallest live degree, the graph is peeled at omega and (under
    peel+exact) small components are solved exactly and deleted. Optimality
    is proven when either side of what is left has at most omega vertices.
    Deterministic given (g, params.seed) up to wall-clock stopping.
    """
    if not g.alive.any():
        raise ValueError("graph has no alive vertices")
    rng = np.random.default_rng(params.seed)
    work = g.copy()
    tp = params.tabu_params()
    t0 = time.monotonic()
    best = Biclique.empty()
    omega = 0
    time_to_best = 0.0
    restarts = 0
    removed_by_peel = 0
    removed_by_exact = 0
    proven = False

    while True:
        if params.max_restarts is not None and restarts >= params.max_restarts:
            break
        if time.monotonic() - t0 >= params.time_limit:
            break
        seeded = random_init_solution(work, rng)
        found = tabu_improve(work, seeded, tp, params.unbalance, rng)
        restarts += 1
        if balanced_size(found) > omega:
            best = found
            omega = balanced_size(found)
            time_to_best = time.monotonic() - t0
        if params.reduction is not ReductionVariant.NONE:
            while True:
                lowest = work.min_alive_degree()
                if lowest is None or omega < lowest:
                    break
                removed_by_peel += peel(work, omega)
                if params.reduction is ReductionVariant.PEEL_EXACT:
                    gone, improved = reduce_by_exact(work, omega, params.K,
                                                     params.exact_budget)
                    removed_by_exact += gone
                    if improved is not None and balanced_size(improved) > omega:
                        best = improved
                        omega = balanced_size(improved)
                        time_to_best = time.monotonic() - t0
        alive_u, alive_v = work.alive_counts()
        if alive_u <= omega or alive_v <= omega:
            proven = True
            break

    final = make_balance(best)
    return RunReport(best=final, omega=balanced_size(final),
                     proven_optimal=proven, time_to_best=time_to_best,
                     total_time=time.monotonic() - t0, restarts=restarts,
                     removed_by_peel=removed_by_peel,
                     removed_by_exact=removed_by_exact)
