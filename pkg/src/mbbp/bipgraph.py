"""Bipartite graph with stable ids, alive flags, and induced subgraphs."""

from __future__ import annotations

import numpy as np

__all__ = ["BipartiteGraph"]


class BipartiteGraph:
    """Undirected bipartite graph over contiguous integer ids.

    Ids 0 .. n_u-1 form the U side, ids n_u .. n_u+n_v-1 the V side. The edge
    set is frozen at construction; vertex removal flips an alive flag and
    decrements live degrees, so ids never shift. Adjacency rows are sorted
    ascending and duplicate input edges are collapsed silently.

    `alive` and `live_degree` are exposed as numpy arrays for cheap bulk reads.
    Treat them as read-only; all mutation goes through remove_vertex().
    """

    def __init__(self, n_u: int, n_v: int, edges) -> None:
        if n_u < 0 or n_v < 0:
            raise ValueError("side sizes must be non-negative")
        self.n_u = int(n_u)
        self.n_v = int(n_v)
        self.n = self.n_u + self.n_v

        pairs = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                           dtype=np.int64)
        if pairs.size == 0:
            pairs = pairs.reshape(0, 2)
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise ValueError("edges must be (u, v) pairs")
        if pairs.size:
            bad = ((pairs[:, 0] < 0) | (pairs[:, 0] >= self.n_u)
                   | (pairs[:, 1] < 0) | (pairs[:, 1] >= self.n_v))
            if bad.any():
                k = int(np.flatnonzero(bad)[0])
                raise ValueError(
                    f"edge ({pairs[k, 0]}, {pairs[k, 1]}) out of range for "
                    f"sides {self.n_u} x {self.n_v}")
            # collapse duplicates via a scalar key per pair
            keys = pairs[:, 0] * max(self.n_v, 1) + pairs[:, 1]
            order = np.argsort(keys, kind="stable")
            keys = keys[order]
            keep = np.ones(len(keys), dtype=bool)
            keep[1:] = keys[1:] != keys[:-1]
            pairs = pairs[order][keep]

        gu = pairs[:, 0]
        gv = pairs[:, 1] + self.n_u
        src = np.concatenate([gu, gv])
        dst = np.concatenate([gv, gu])
        order = np.lexsort((dst, src))
        src = src[order]
        dst = dst[order]
        counts = np.bincount(src, minlength=self.n)
        self._indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(counts, out=self._indptr[1:])
        self._indices = dst.astype(np.int64)

        self.alive = np.ones(self.n, dtype=bool)
        self.live_degree = counts.astype(np.int64)
        self.version = 0

    # -- basic queries -------------------------------------------------

    @property
    def edge_count(self) -> int:
        """Number of alive-alive edges."""
        if self.n_u == 0:
            return 0
        u_alive = self.alive[:self.n_u]
        return int(self.live_degree[:self.n_u][u_alive].sum())

    def is_u_side(self, v: int) -> bool:
        return 0 <= v < self.n_u

    def _check_id(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex id {v} out of range 0..{self.n - 1}")

    def _row(self, v: int) -> np.ndarray:
        return self._indices[self._indptr[v]:self._indptr[v + 1]]

    def neighbors(self, v: int) -> np.ndarray:
        """Alive neighbors of an alive vertex, ascending."""
        self._check_id(v)
        if not self.alive[v]:
            raise ValueError(f"vertex {v} is removed")
        row = self._row(v)
        return row[self.alive[row]]

    def has_edge(self, a: int, b: int) -> bool:
        self._check_id(a)
        self._check_id(b)
        row = self._row(a)
        k = int(np.searchsorted(row, b))
        return k < len(row) and row[k] == b

    def alive_counts(self) -> tuple[int, int]:
        return (int(self.alive[:self.n_u].sum()), int(self.alive[self.n_u:].sum()))

    def alive_ids(self) -> np.ndarray:
        return np.flatnonzero(self.alive)

    def all_alive(self) -> bool:
        return bool(self.alive.all())

    def min_alive_degree(self):
        """Smallest live degree among alive vertices, or None if all removed."""
        if not self.alive.any():
            return None
        return int(self.live_degree[self.alive].min())

    # -- mutation ------------------------------------------------------

    def remove_vertex(self, v: int) -> None:
        self._check_id(v)
        if not self.alive[v]:
            raise ValueError(f"vertex {v} already removed")
        row = self._row(v)
        live = row[self.alive[row]]
        self.alive[v] = False
        self.live_degree[live] -= 1
        self.live_degree[v] = 0
        self.version += 1

    def copy(self) -> "BipartiteGraph":
        """Copy sharing the frozen edge arrays; alive state is independent."""
        g = object.__new__(BipartiteGraph)
        g.n_u = self.n_u
        g.n_v = self.n_v
        g.n = self.n
        g._indptr = self._indptr
        g._indices = self._indices
        g.alive = self.alive.copy()
        g.live_degree = self.live_degree.copy()
        g.version = 0
        return g

    # -- structure -----------------------------------------------------

    def iter_edges(self):
        """Yield alive edges as (u_id, v_id) global pairs, u ascending."""
        for u in range(self.n_u):
            if not self.alive[u]:
                continue
            for v in self.neighbors(u):
                yield u, int(v)

    def connected_components(self) -> list[list[int]]:
        """Components of the alive subgraph as ascending id lists.

        Listed in order of their smallest member, so output is deterministic.
        """
        seen = ~self.alive
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            members = [s]
            frontier = np.array([s], dtype=np.int64)
            while frontier.size:
                nxt = np.concatenate([self.neighbors(int(v)) for v in frontier])
                if nxt.size:
                    nxt = np.unique(nxt)
                    nxt = nxt[~seen[nxt]]
                seen[nxt] = True
                members.extend(int(w) for w in nxt)
                frontier = nxt
            members.sort()
            comps.append(members)
        return comps

    def induced_subgraph(self, vertices) -> tuple["BipartiteGraph", np.ndarray]:
        """Compact subgraph on the given alive vertices.

        Returns (subgraph, id_map) where id_map[new_id] = old_id. New U ids
        precede new V ids, each side in ascending old-id order.
        """
        ids = np.unique(np.asarray(list(vertices), dtype=np.int64))
        if ids.size and (ids[0] < 0 or ids[-1] >= self.n):
            raise ValueError("vertex id out of range")
        if ids.size and not self.alive[ids].all():
            dead = ids[~self.alive[ids]][0]
            raise ValueError(f"vertex {dead} is removed")
        us = ids[ids < self.n_u]
        vs = ids[ids >= self.n_u]
        mask = np.zeros(self.n, dtype=bool)
        mask[ids] = True
        eu, ev = [], []
        for new_u, old_u in enumerate(us):
            row = self.neighbors(int(old_u))
            row = row[mask[row]]
            if row.size:
                eu.append(np.full(row.size, new_u, dtype=np.int64))
                ev.append(np.searchsorted(vs, row))
        if eu:
            edges = np.column_stack([np.concatenate(eu), np.concatenate(ev)])
        else:
            edges = np.zeros((0, 2), dtype=np.int64)
        sub = BipartiteGraph(len(us), len(vs), edges)
        return sub, np.concatenate([us, vs])
