from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mbbp import BipartiteGraph

# K3,3 minus the (u3, v3) edge; degrees [3,3,2, 3,3,2], optimum balanced size 2.
T1_EDGES = [(u, v) for u in range(3) for v in range(3) if not (u == 2 and v == 2)]

# 4+4 vertices, 13 edges, written 0-based. With 1-based labels (U 1..4, V 5..8)
# it satisfies N(1) = {5,6,8}, N(5) = {1,2,3,4}, and ({1,2,3},{5,6}) is a
# maximal biclique: the common neighborhood of {1,2,3} is exactly {5,6}.
FIG1_EDGES = [(0, 0), (0, 1), (0, 3),
              (1, 0), (1, 1), (1, 2),
              (2, 0), (2, 1), (2, 2),
              (3, 0), (3, 1), (3, 2), (3, 3)]


@pytest.fixture
def t1() -> BipartiteGraph:
    return BipartiteGraph(3, 3, T1_EDGES)


@pytest.fixture
def fig1() -> BipartiteGraph:
    return BipartiteGraph(4, 4, FIG1_EDGES)


@pytest.fixture
def k33() -> BipartiteGraph:
    return BipartiteGraph(3, 3, [(u, v) for u in range(3) for v in range(3)])
