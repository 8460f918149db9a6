"""Biclique value type and balance helpers."""

from __future__ import annotations

from dataclasses import dataclass

from .bipgraph import BipartiteGraph

__all__ = ["Biclique", "balanced_size", "balance_deviation", "is_biclique",
           "make_balance"]


@dataclass(frozen=True)
class Biclique:
    """A candidate solution: U-side members in x, V-side members in y.

    Plain value type over global vertex ids. Hashable, comparable by set
    equality, and independent of any particular graph.
    """

    x: frozenset
    y: frozenset

    @staticmethod
    def of(xs, ys) -> "Biclique":
        return Biclique(frozenset(int(v) for v in xs), frozenset(int(v) for v in ys))

    @staticmethod
    def empty() -> "Biclique":
        return Biclique(frozenset(), frozenset())


def balanced_size(b: Biclique) -> int:
    return min(len(b.x), len(b.y))


def balance_deviation(b: Biclique) -> int:
    return abs(len(b.x) - len(b.y))


def is_biclique(g: BipartiteGraph, b: Biclique) -> bool:
    """True when every x-y pair is an edge. Members must be alive and on the
    declared sides; violations raise rather than return False."""
    for v in b.x:
        if not g.is_u_side(v):
            raise ValueError(f"id {v} in x is not a U-side vertex")
        if not g.alive[v]:
            raise ValueError(f"vertex {v} is removed")
    for v in b.y:
        if g.is_u_side(v) or v >= g.n:
            raise ValueError(f"id {v} in y is not a V-side vertex")
        if not g.alive[v]:
            raise ValueError(f"vertex {v} is removed")
    if not b.x or not b.y:
        return True
    ys = set(b.y)
    for u in b.x:
        if not ys.issubset(int(w) for w in g.neighbors(u)):
            return False
    return True


def make_balance(b: Biclique) -> Biclique:
    """Strictly balance a biclique by dropping largest ids from the larger side.

    Only defined for deviation <= 2, the worst the tabu search can return.
    """
    dev = balance_deviation(b)
    if dev > 2:
        raise ValueError(f"deviation {dev} exceeds 2; make_balance not applicable")
    if dev == 0:
        return b
    if len(b.x) > len(b.y):
        keep = sorted(b.x)[:len(b.y)]
        return Biclique(frozenset(keep), b.y)
    keep = sorted(b.y)[:len(b.x)]
    return Biclique(b.x, frozenset(keep))
