"""Small named graphs used throughout the toolkit and its test corpus."""

from __future__ import annotations

from itertools import combinations

from .graphcore import Multigraph


def complete_graph(n: int) -> Multigraph:
    return Multigraph.from_pairs(n, combinations(range(n), 2))


def single_edge() -> Multigraph:
    return Multigraph.from_pairs(2, [(0, 1)])


def digon() -> Multigraph:
    return Multigraph.from_pairs(2, [(0, 1), (0, 1)])


def triangle() -> Multigraph:
    return Multigraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])


def cycle(n: int, multiplicity: int = 1) -> Multigraph:
    pairs = [(i, (i + 1) % n) for i in range(n) for _ in range(multiplicity)]
    return Multigraph.from_pairs(n, pairs)


def joined_cliques(size: int, join: int) -> Multigraph:
    """Two copies of K_size joined by ``join`` disjoint edges (i, size + i)."""
    if join > size:
        raise ValueError("join larger than clique size")
    pairs = list(combinations(range(size), 2))
    pairs += [(size + u, size + v) for u, v in combinations(range(size), 2)]
    pairs += [(i, size + i) for i in range(join)]
    return Multigraph.from_pairs(2 * size, pairs)


def wheel(rim: int) -> Multigraph:
    """Hub 0 joined to a rim cycle 1..rim."""
    pairs = [(i, i % rim + 1) for i in range(1, rim + 1)] + [(0, i) for i in range(1, rim + 1)]
    return Multigraph.from_pairs(rim + 1, pairs)
