"""Graph reduction: degree peeling and component-wise exact elimination."""

from __future__ import annotations

from collections import deque

import numpy as np

from .bipgraph import BipartiteGraph
from .exact import exact_search
from .solution import Biclique, balanced_size

__all__ = ["peel", "reduce_by_exact"]


def peel(g: BipartiteGraph, bound: int) -> int:
    """Cascade-remove every vertex whose live degree is <= bound.

    No vertex of a biclique with balanced size > bound can have degree <=
    bound, so the optimum above the bound survives. Runs to a fixed point
    (idempotent) and returns the number of vertices removed.
    """
    removed = 0
    pending = deque(int(v) for v in
                    np.flatnonzero(g.alive & (g.live_degree <= bound)))
    while pending:
        v = pending.popleft()
        if not g.alive[v]:
            continue
        nbrs = g.neighbors(v)
        g.remove_vertex(v)
        removed += 1
        for w in nbrs[g.live_degree[nbrs] <= bound]:
            pending.append(int(w))
    return removed


def reduce_by_exact(g: BipartiteGraph, bound: int, max_component: int,
                    time_budget: float | None):
    """Exactly solve and delete small components, tightening the bound as it goes.

    Components with at most max_component vertices are searched in ascending
    size order (ties by smallest id). A component whose search finishes is
    deleted whether or not it improved; a timed-out component stays. Any
    improvement is mapped back to the parent graph's ids, raises the working
    bound for later components, and the best one is returned.

    Returns (removed_vertex_count, best_improvement_or_None).
    """
    comps = g.connected_components()
    comps.sort(key=lambda c: (len(c), c[0]))
    working = int(bound)
    removed = 0
    best: Biclique | None = None
    for comp in comps:
        if len(comp) > max_component:
            continue
        sub, id_map = g.induced_subgraph(comp)
        outcome = exact_search(sub, working, time_budget)
        if outcome.improved is not None:
            mapped = Biclique.of((int(id_map[v]) for v in outcome.improved.x),
                                 (int(id_map[v]) for v in outcome.improved.y))
            if balanced_size(mapped) > working:
                working = balanced_size(mapped)
                best = mapped
        if outcome.proven_optimal:
            for v in comp:
                g.remove_vertex(v)
            removed += len(comp)
    return removed, best
