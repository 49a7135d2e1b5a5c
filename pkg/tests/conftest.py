"""Shared fixtures and independent brute-force oracles.

The oracles here are deliberately naive (itertools over subsets and
orientations, plain Python arithmetic) and share no code with the package
beyond reading ``graph.vertices`` and ``graph.edges``.
"""

from __future__ import annotations

import itertools

import pytest
from hypothesis import strategies as st

from flowext.graphcore import Multigraph


def brute_cut_size(graph: Multigraph, side) -> int:
    side = set(side)
    return sum(1 for e in graph.edges if (e.a in side) != (e.b in side))


def brute_proper_subsets(graph: Multigraph):
    vs = list(graph.vertices)
    for r in range(1, len(vs)):
        for side in itertools.combinations(vs, r):
            yield frozenset(side)


def brute_small_cuts(graph: Multigraph, k: int) -> set[frozenset]:
    """Sides containing the first vertex with d(A) <= k."""
    first = graph.vertices[0]
    return {s for s in brute_proper_subsets(graph) if first in s and brute_cut_size(graph, s) <= k}


def brute_critical_sets(graph: Multigraph, k: int) -> set[frozenset]:
    small = [s for s in brute_proper_subsets(graph) if brute_cut_size(graph, s) <= k]
    return {a for a in small if not any(b < a for b in small)}


def brute_edge_connectivity(graph: Multigraph) -> int:
    return min(brute_cut_size(graph, s) for s in brute_proper_subsets(graph))


def brute_orientations(graph: Multigraph):
    """Yield deficiency dicts together with the direction tuple (+1 = a -> b)."""
    for dirs in itertools.product((1, -1), repeat=graph.m):
        d = {v: 0 for v in graph.vertices}
        for e, s in zip(graph.edges, dirs):
            d[e.a] += s
            d[e.b] -= s
        yield dirs, d


def brute_count(graph: Multigraph, beta: dict, fixed: dict | None = None) -> int:
    fixed = fixed or {}
    pos = {e.id: j for j, e in enumerate(graph.edges)}
    count = 0
    for dirs, d in brute_orientations(graph):
        if any(dirs[pos[eid]] != s for eid, s in fixed.items()):
            continue
        if all((d[v] - beta.get(v, 0)) % 3 == 0 for v in graph.vertices):
            count += 1
    return count


def brute_z3_connected(graph: Multigraph) -> bool:
    vs = list(graph.vertices)
    realized = set()
    for _, d in brute_orientations(graph):
        realized.add(tuple(d[v] % 3 for v in vs))
    for head in itertools.product(range(3), repeat=len(vs) - 1):
        beta = head + ((-sum(head)) % 3,)
        if beta not in realized:
            return False
    return True


@st.composite
def multigraphs(draw, min_n=2, max_n=6, max_m=10, min_m=0):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(min_m, max_m)) if n >= 2 else 0
    pairs = []
    for _ in range(m):
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 2))
        if b >= a:
            b += 1
        pairs.append((a, b))
    return Multigraph.from_pairs(n, pairs)


@st.composite
def graph_and_boundary(draw, **kw):
    g = draw(multigraphs(**kw))
    head = [draw(st.integers(0, 2)) for _ in g.vertices[:-1]]
    beta = dict(zip(g.vertices, head + [(-sum(head)) % 3]))
    return g, beta


@pytest.fixture
def tmp_corpus(tmp_path):
    from flowext.corpus import write_corpus

    write_corpus(7, tmp_path / "c", count=20)
    return tmp_path / "c"
