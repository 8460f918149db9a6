"""Constraint-driven tabu search over near-balanced bicliques.

The search walks the space of bicliques whose side sizes differ by at most a
small bound. Its one move is push(v): v joins its side of the solution and
every non-neighbor on the opposite side is expelled. Candidates are restricted
to vertices that expel at most one opponent, split into expanding moves
(balanced size +1), plateau moves (+0), and last-resort escape moves (-1, the
only way out of a balanced solution with nothing adjacent to all of either
side); expelled or dropped vertices become tabu for a randomized tenure. When
the deviation bound is exceeded the solution is repaired by dropping random
vertices from the larger side until the sides are equal.

State is kept in flat numpy arrays indexed by vertex id, so one iteration is
a handful of vectorized passes independent of graph sparsity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .bipgraph import BipartiteGraph
from .solution import Biclique

__all__ = ["TabuParams", "UnbalanceVariant", "SearchState", "delta", "push",
           "build_candidates", "tabu_tenure", "repair", "tabu_improve"]


@dataclass(frozen=True)
class TabuParams:
    """Search depth L (iterations per call) and tenure scale alpha."""

    L: int = 1000
    alpha: float = 0.30

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("L must be >= 1")
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")


class UnbalanceVariant(enum.Enum):
    """How far apart the two sides may drift before repair triggers."""

    BOUND_2 = "2"
    BOUND_1 = "1"
    UNBOUNDED = "inf"

    @property
    def deviation_bound(self) -> float:
        if self is UnbalanceVariant.BOUND_2:
            return 2
        if self is UnbalanceVariant.BOUND_1:
            return 1
        return math.inf

    @classmethod
    def from_str(cls, s: str) -> "UnbalanceVariant":
        for m in cls:
            if m.value == s:
                return m
        raise ValueError(f"unknown unbalance variant {s!r}; use 2, 1, or inf")


class _AliveView:
    """Frozen CSR snapshot of the alive subgraph, built once per graph version."""

    def __init__(self, g: BipartiteGraph):
        self.n_u = g.n_u
        self.n = g.n
        keep = g.alive[g._indices]
        self.indices = g._indices[keep]
        # new indptr = running count of kept entries at each old row boundary
        cs = np.zeros(len(keep) + 1, dtype=np.int64)
        np.cumsum(keep, out=cs[1:])
        self.indptr = cs[g._indptr]
        self.source_version = g.version

    def nbrs(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]


def _view_for(g: BipartiteGraph) -> _AliveView:
    cached = getattr(g, "_alive_view", None)
    if cached is not None and cached.source_version == g.version:
        return cached
    view = _AliveView(g)
    g._alive_view = view
    return view


class SearchState:
    """Mutable tabu-search state for one improvement call.

    Tracks the solution as id lists plus an in-solution mask, a conn counter
    per vertex (neighbors inside the opposite solution side), tabu expiry
    iterations, and the best-so-far snapshot.
    """

    def __init__(self, g: BipartiteGraph, start: Biclique,
                 params: TabuParams = TabuParams(),
                 variant: UnbalanceVariant = UnbalanceVariant.BOUND_2):
        self.graph = g
        self.view = _view_for(g)
        self.params = params
        self.variant = variant
        self.n_u = g.n_u
        n = g.n
        self.x_list = sorted(int(v) for v in start.x)
        self.y_list = sorted(int(v) for v in start.y)
        for v in self.x_list:
            if not (0 <= v < self.n_u) or not g.alive[v]:
                raise ValueError(f"start x member {v} invalid")
        for v in self.y_list:
            if not (self.n_u <= v < n) or not g.alive[v]:
                raise ValueError(f"start y member {v} invalid")
        self.in_solution = np.zeros(n, dtype=bool)
        self.conn = np.zeros(n, dtype=np.int64)
        for v in self.x_list + self.y_list:
            self.in_solution[v] = True
            self.conn[self.view.nbrs(v)] += 1
        self.tabu = np.full(n, -1, dtype=np.int64)
        self.iteration = 0
        self.best_x = tuple(self.x_list)
        self.best_y = tuple(self.y_list)
        self.best_size = min(len(self.best_x), len(self.best_y))

    @property
    def solution(self) -> Biclique:
        return Biclique.of(self.x_list, self.y_list)

    @property
    def best(self) -> Biclique:
        return Biclique.of(self.best_x, self.best_y)

    def frontier(self) -> set:
        """Vertices outside the solution adjacent to it. Derived on demand."""
        mask = (self.conn > 0) & ~self.in_solution
        return set(int(v) for v in np.flatnonzero(mask))

    def _snapshot_if_better(self) -> None:
        size = min(len(self.x_list), len(self.y_list))
        if size > self.best_size:
            self.best_x = tuple(self.x_list)
            self.best_y = tuple(self.y_list)
            self.best_size = size


def delta(state: SearchState, v: int) -> int:
    """Change of balanced size if v were pushed, in O(1) from conn counters."""
    if state.in_solution[v]:
        raise ValueError(f"vertex {v} is already in the solution")
    x, y = len(state.x_list), len(state.y_list)
    if v < state.n_u:
        missing = y - int(state.conn[v])
        if x > y:
            return -missing
        return min(1, (y - x) - missing)
    missing = x - int(state.conn[v])
    if y > x:
        return -missing
    return min(1, (x - y) - missing)


def push(state: SearchState, v: int) -> list[int]:
    """Add v to its side, expel opposite-side non-neighbors of v.

    Mutates the state counters incrementally and returns the expelled
    vertices in solution-list order. Tenure assignment is the caller's job.
    """
    if state.in_solution[v]:
        raise ValueError(f"vertex {v} is already in the solution")
    if state.conn[v] == 0:
        raise ValueError(f"vertex {v} is not adjacent to the solution")
    nbrs = state.view.nbrs(int(v))
    own, other = (state.x_list, state.y_list) if v < state.n_u else (state.y_list, state.x_list)
    arr = np.asarray(other, dtype=np.int64)
    pos = np.searchsorted(nbrs, arr)
    pos[pos >= len(nbrs)] = len(nbrs) - 1 if len(nbrs) else 0
    adjacent = len(nbrs) > 0
    adj_mask = (nbrs[pos] == arr) if adjacent else np.zeros(len(arr), dtype=bool)
    expelled = [int(w) for w in arr[~adj_mask]]
    own.append(int(v))
    state.in_solution[v] = True
    state.conn[nbrs] += 1
    for w in expelled:
        other.remove(w)
        state.in_solution[w] = False
        state.conn[state.view.nbrs(w)] -= 1
    return expelled


def build_candidates(state: SearchState) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Expanding, plateau, and escape candidate ids, each ascending.

    A candidate is adjacent to the solution and would expel at most one
    vertex. Expanding moves need delta == +1 and are tabu-filtered unless the
    move would beat the best size seen this call; plateau moves need
    delta == 0 and are always tabu-filtered. The remaining non-tabu
    candidates (delta == -1 swaps) form the escape set, used only when the
    first two are empty: a balanced solution with no fully-adjacent outside
    vertex admits no non-worsening move at all, and the one-step dip is what
    lets the walk leave it through the slightly-unbalanced states.
    """
    n_u = state.n_u
    x, y = len(state.x_list), len(state.y_list)
    it = state.iteration
    conn_u = state.conn[:n_u]
    conn_v = state.conn[n_u:]
    free_u = ~state.in_solution[:n_u]
    free_v = ~state.in_solution[n_u:]

    cand_u = free_u & (conn_u >= max(y - 1, 1))
    cand_v = free_v & (conn_v >= max(x - 1, 1))

    miss_u = y - conn_u
    miss_v = x - conn_v
    if x > y:
        delta_u = -miss_u
    else:
        delta_u = np.minimum(1, (y - x) - miss_u)
    if y > x:
        delta_v = -miss_v
    else:
        delta_v = np.minimum(1, (x - y) - miss_v)

    open_u = state.tabu[:n_u] <= it
    open_v = state.tabu[n_u:] <= it
    aspiration = min(x, y) + 1 > state.best_size

    if aspiration:
        exp_u = cand_u & (delta_u >= 1)
        exp_v = cand_v & (delta_v >= 1)
    else:
        exp_u = cand_u & (delta_u >= 1) & open_u
        exp_v = cand_v & (delta_v >= 1) & open_v
    pla_u = cand_u & (delta_u == 0) & open_u
    pla_v = cand_v & (delta_v == 0) & open_v
    esc_u = cand_u & (delta_u <= -1) & open_u
    esc_v = cand_v & (delta_v <= -1) & open_v

    expand = np.concatenate([np.flatnonzero(exp_u), np.flatnonzero(exp_v) + n_u])
    plateau = np.concatenate([np.flatnonzero(pla_u), np.flatnonzero(pla_v) + n_u])
    escape = np.concatenate([np.flatnonzero(esc_u), np.flatnonzero(esc_v) + n_u])
    return expand, plateau, escape


def tabu_tenure(alpha: float, size: int, rng: np.random.Generator) -> int:
    """max(7, floor(alpha * r)) with r uniform on 0..size inclusive."""
    r = int(rng.integers(0, size + 1))
    return max(7, int(alpha * r))


def repair(state: SearchState, rng: np.random.Generator) -> None:
    """Drop random vertices from the larger side until the sides are equal.

    Only callable when the deviation exceeds the variant's bound; each dropped
    vertex becomes tabu with a tenure scaled by its set's post-drop size.
    """
    dev = abs(len(state.x_list) - len(state.y_list))
    if dev <= state.variant.deviation_bound:
        raise ValueError("repair called while deviation is within the bound")
    alpha = state.params.alpha
    it = state.iteration
    while len(state.x_list) > len(state.y_list):
        u = state.x_list.pop(int(rng.integers(len(state.x_list))))
        state.in_solution[u] = False
        state.conn[state.view.nbrs(u)] -= 1
        state.tabu[u] = it + tabu_tenure(alpha, len(state.x_list), rng)
    while len(state.y_list) > len(state.x_list):
        u = state.y_list.pop(int(rng.integers(len(state.y_list))))
        state.in_solution[u] = False
        state.conn[state.view.nbrs(u)] -= 1
        state.tabu[u] = it + tabu_tenure(alpha, len(state.y_list), rng)


def _step(state: SearchState, rng: np.random.Generator) -> None:
    expand, plateau, escape = build_candidates(state)
    v = None
    if len(expand):
        v = int(expand[rng.integers(len(expand))])
    elif len(plateau):
        v = int(plateau[rng.integers(len(plateau))])
    elif len(escape):
        v = int(escape[rng.integers(len(escape))])
    if v is not None:
        expelled = push(state, v)
        alpha = state.params.alpha
        for u in expelled:
            former = len(state.x_list) if u < state.n_u else len(state.y_list)
            state.tabu[u] = state.iteration + tabu_tenure(alpha, former, rng)
    if abs(len(state.x_list) - len(state.y_list)) > state.variant.deviation_bound:
        repair(state, rng)
    state._snapshot_if_better()
    state.iteration += 1


def tabu_improve(g: BipartiteGraph, start: Biclique, params: TabuParams,
                 variant: UnbalanceVariant, rng: np.random.Generator) -> Biclique:
    """Run exactly params.L tabu iterations from the given biclique.

    Returns the best solution seen, judged by balanced size; its deviation is
    at most 2 under the default variant (repair ends on strict equality, and
    snapshots are taken after repair).
    """
    state = SearchState(g, start, params, variant)
    for _ in range(params.L):
        _step(state, rng)
    return state.best
