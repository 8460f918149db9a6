"""Exact maximum balanced biclique search by branch and bound.

The recursion grows the two sides alternately, always extending the side that
is not larger, so every visited pair (a, b) is a biclique with |a| <= |b| <=
|a|+1 and its balanced size is |a|. Branch vertices are taken in ascending id
order from the current candidate list; a branch is cut when even taking every
remaining candidate cannot beat the incumbent. A time budget turns the search
into an anytime procedure: the incumbent stays valid, only the optimality
proof is lost.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass

import numpy as np

from .bipgraph import BipartiteGraph
from .solution import Biclique

__all__ = ["ExactOutcome", "exact_search"]

_CLOCK_MASK = 1023  # budget checked every 1024 nodes


@dataclass
class ExactOutcome:
    improved: Biclique | None
    proven_optimal: bool
    nodes: int


class _Expired(Exception):
    pass


def exact_search(g: BipartiteGraph, lower_bound: int,
                 time_budget: float | None = None, *,
                 prune: bool = True) -> ExactOutcome:
    """Find a biclique with balanced size > lower_bound, or prove none exists.

    Requires a compact graph (no removed vertices). improved is None when the
    seed bound was not beaten; proven_optimal is False only on budget expiry.
    """
    if not g.all_alive():
        raise ValueError("exact_search requires a compact graph (no removed vertices)")
    deadline = None if time_budget is None else time.monotonic() + time_budget
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 2 * g.n + 256))

    lb = int(lower_bound)
    best: list = [None, None]
    nodes = 0

    def expand(a: list, b: list, c_a: np.ndarray, c_b: np.ndarray) -> None:
        nonlocal lb, nodes
        if deadline is not None and (nodes & _CLOCK_MASK) == 0 \
                and time.monotonic() >= deadline:
            raise _Expired
        nodes += 1
        if c_a.size == 0:
            if len(a) > lb:
                lb = len(a)
                best[0] = list(a)
                best[1] = list(b)
            return
        for k in range(c_a.size):
            if prune and len(a) + (c_a.size - k) <= lb:
                return
            i = int(c_a[k])
            rest = c_a[k + 1:]
            narrowed = np.intersect1d(c_b, g.neighbors(i), assume_unique=True)
            if len(a) < len(b):
                expand(a + [i], b, rest, narrowed)
            else:
                expand(b, a + [i], narrowed, rest)

    proven = True
    try:
        expand([], [],
               np.arange(g.n_u, dtype=np.int64),
               np.arange(g.n_u, g.n, dtype=np.int64))
    except _Expired:
        proven = False

    improved = None
    if best[0] is not None:
        members = best[0] + best[1]
        xs = [v for v in members if v < g.n_u]
        ys = [v for v in members if v >= g.n_u]
        improved = Biclique.of(xs, ys)
    return ExactOutcome(improved=improved, proven_optimal=proven, nodes=nodes)
