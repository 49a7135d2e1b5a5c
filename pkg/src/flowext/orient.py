"""Boundary functions, orientations and the β-orientation solver.

A boundary assigns each vertex a value in Z3 = {0, 1, 2} with total sum
0 mod 3. An orientation is a β-orientation when out-degree minus in-degree
(the deficiency) at every vertex is congruent to β(v) mod 3; the special case
β ≡ 0 is a mod 3-orientation.

Directions are stored per edge identifier: ``FORWARD`` (+1) orients an edge
from its endpoint ``a`` to its endpoint ``b``, ``REVERSE`` (-1) the other way.
A partial orientation is a plain ``dict`` holding only the decided edges.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import PreconditionError, ResourceLimitError
from .graphcore import Edge, Multigraph

FORWARD = 1
REVERSE = -1

#: Edge-count cap for the exhaustive orientation oracle.
ORACLE_EDGE_LIMIT = 20

Boundary = Mapping[int, int]
PartialOrientation = Mapping[int, int]


def check_boundary(graph: Multigraph, beta: Boundary | None) -> dict[int, int]:
    """Validate ``beta`` against ``graph`` and return it total and reduced mod 3.

    Unlisted vertices default to 0. A nonzero total is rejected, never repaired.
    """
    beta = dict(beta or {})
    for v in beta:
        if v not in graph.index:
            raise PreconditionError(f"boundary names unknown vertex {v}")
    full = {v: int(beta.get(v, 0)) % 3 for v in graph.vertices}
    if sum(full.values()) % 3:
        raise PreconditionError("boundary values do not sum to 0 mod 3")
    return full


def negate_boundary(beta: Boundary) -> dict[int, int]:
    return {v: (-b) % 3 for v, b in beta.items()}


def check_partial(graph: Multigraph, fixed: PartialOrientation | None) -> dict[int, int]:
    fixed = dict(fixed or {})
    for eid, d in fixed.items():
        graph.edge(eid)
        if d not in (FORWARD, REVERSE):
            raise PreconditionError(f"edge {eid}: direction must be +1 or -1, got {d!r}")
    return fixed


def orient_edge(edge: Edge, tail: int) -> int:
    """Direction value that makes ``tail`` the tail of ``edge``."""
    if tail == edge.a:
        return FORWARD
    if tail == edge.b:
        return REVERSE
    raise PreconditionError(f"vertex {tail} is not an endpoint of edge {edge.id}")


@dataclass(frozen=True)
class Orientation:
    """A total orientation of ``graph``."""

    graph: Multigraph
    directions: Mapping[int, int] = field(repr=False)

    def __post_init__(self):
        dirs = check_partial(self.graph, self.directions)
        if len(dirs) != self.graph.m:
            missing = [e.id for e in self.graph.edges if e.id not in dirs]
            raise PreconditionError(f"orientation leaves edges undecided: {missing[:5]}")
        object.__setattr__(self, "directions", dirs)

    def __hash__(self):
        return hash((self.graph, tuple(sorted(self.directions.items()))))

    def tail(self, eid: int) -> int:
        e = self.graph.edge(eid)
        return e.a if self.directions[eid] == FORWARD else e.b

    def head(self, eid: int) -> int:
        e = self.graph.edge(eid)
        return e.b if self.directions[eid] == FORWARD else e.a

    def out_degree(self, v: int) -> int:
        self.graph.require(v)
        return sum(1 for e in self.graph.incident[v] if self.tail(e.id) == v)

    def in_degree(self, v: int) -> int:
        return self.graph.degree(v) - self.out_degree(v)

    def deficiencies(self) -> dict[int, int]:
        out = {v: 0 for v in self.graph.vertices}
        for e in self.graph.edges:
            d = self.directions[e.id]
            out[e.a] += d
            out[e.b] -= d
        return out

    def arcs(self) -> list[tuple[int, int, int]]:
        """(edge id, tail, head) for every edge in edge order."""
        return [(e.id, self.tail(e.id), self.head(e.id)) for e in self.graph.edges]

    def agrees_with(self, partial: PartialOrientation) -> bool:
        return all(self.directions[eid] == d for eid, d in partial.items())


def deficiency(orientation: Orientation, v: int) -> int:
    """Out-degree minus in-degree at ``v``."""
    return 2 * orientation.out_degree(v) - orientation.graph.degree(v)


def is_beta_orientation(orientation: Orientation, beta: Boundary, graph: Multigraph | None = None) -> bool:
    if graph is not None and graph != orientation.graph:
        raise PreconditionError("orientation belongs to a different graph")
    target = check_boundary(orientation.graph, beta)
    return all((d - target[v]) % 3 == 0 for v, d in orientation.deficiencies().items())


def is_mod3_orientation(orientation: Orientation) -> bool:
    return is_beta_orientation(orientation, {})


def reverse(orientation: Orientation) -> Orientation:
    return Orientation(orientation.graph, {e: -d for e, d in orientation.directions.items()})


def minor_edge(orientation: Orientation, x: int) -> int:
    """The edge at a 5-vertex whose direction differs from the other four."""
    g = orientation.graph
    if g.degree(x) != 5:
        raise PreconditionError(f"vertex {x} has degree {g.degree(x)}, not 5")
    outs = [e.id for e in g.incident[x] if orientation.tail(e.id) == x]
    ins = [e.id for e in g.incident[x] if orientation.tail(e.id) != x]
    if len(outs) == 4:
        return ins[0]
    if len(ins) == 4:
        return outs[0]
    raise PreconditionError(f"no minor-edge at {x}: split is {len(outs)} out / {len(ins)} in")


# -- solver --------------------------------------------------------------


def _suffix_components(n: int, ends: list[tuple[int, int]]) -> list[list[list[int]]]:
    """comps[p][v]: members of v's component in the graph of edges ends[p:].

    Built backwards with union-find; every vertex maps to a shared list object.
    """
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    out: list[list[list[int]]] = [None] * (len(ends) + 1)  # type: ignore[list-item]

    def snapshot():
        groups: dict[int, list[int]] = {}
        for v in range(n):
            groups.setdefault(find(v), []).append(v)
        return [groups[find(v)] for v in range(n)]

    out[len(ends)] = snapshot()
    for p in range(len(ends) - 1, -1, -1):
        a, b = ends[p]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            out[p] = snapshot()
        else:
            out[p] = out[p + 1]
    return out


def _feasible(delta: int, remaining: int, target: int) -> bool:
    # With r >= 2 undecided edges the reachable deficiency offsets cover all residues.
    if remaining >= 2:
        return True
    if remaining == 1:
        return (delta - target) % 3 != 0
    return (delta - target) % 3 == 0


@dataclass
class SolverStats:
    calls: int = 0
    nodes: int = 0
    memo_hits: int = 0


def find_beta_orientation(
    graph: Multigraph,
    beta: Boundary | None = None,
    fixed: PartialOrientation | None = None,
    stats: SolverStats | None = None,
) -> Orientation | None:
    """First β-orientation extending ``fixed`` in lexicographic edge order, or None.

    Depth-first over undecided edges sorted by identifier, forward before
    reverse, pruning any vertex whose remaining edges can no longer reach its
    target residue. Failed states (position plus residues of the vertices
    still open) are memoized, so the search is exact and never revisits a
    dead subproblem.
    """
    target_map = check_boundary(graph, beta)
    fixed = check_partial(graph, fixed)
    if stats is not None:
        stats.calls += 1
    n = graph.n
    idx = graph.index
    target = [target_map[v] for v in graph.vertices]
    delta = [0] * n
    rem = [0] * n
    free = sorted((e for e in graph.edges if e.id not in fixed), key=lambda e: e.id)
    for e in graph.edges:
        d = fixed.get(e.id)
        if d is not None:
            delta[idx[e.a]] += d
            delta[idx[e.b]] -= d
    ends = [(idx[e.a], idx[e.b]) for e in free]
    for a, b in ends:
        rem[a] += 1
        rem[b] += 1
    if not all(_feasible(delta[i], rem[i], target[i]) for i in range(n)):
        return None

    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for p, (a, b) in enumerate(ends):
        for v in (a, b):
            first.setdefault(v, p)
            last[v] = p
    total = len(ends)
    active = [[v for v in first if first[v] < p <= last[v]] for p in range(total + 1)]
    comps = _suffix_components(n, ends)
    for members in {id(c): c for c in comps[0]}.values():
        if sum(target[v] - delta[v] for v in members) % 3:
            return None

    choice = [0] * total
    failed: set = set()
    if sys.getrecursionlimit() < total + 200:
        sys.setrecursionlimit(total + 200)

    def dfs(p: int) -> bool:
        if p == total:
            return True
        key = (p, tuple(delta[v] % 3 for v in active[p]))
        if key in failed:
            if stats is not None:
                stats.memo_hits += 1
            return False
        if stats is not None:
            stats.nodes += 1
        a, b = ends[p]
        rem[a] -= 1
        rem[b] -= 1
        ca, cb = comps[p + 1][a], comps[p + 1][b]
        for d in (FORWARD, REVERSE):
            delta[a] += d
            delta[b] -= d
            if (
                _feasible(delta[a], rem[a], target[a])
                and _feasible(delta[b], rem[b], target[b])
                and (ca is cb or sum(target[v] - delta[v] for v in ca) % 3 == 0)
                and dfs(p + 1)
            ):
                choice[p] = d
                return True
            delta[a] -= d
            delta[b] += d
        rem[a] += 1
        rem[b] += 1
        failed.add(key)
        return False

    if not dfs(0):
        return None
    dirs = dict(fixed)
    for e, d in zip(free, choice):
        dirs[e.id] = d
    return Orientation(graph, dirs)


def is_mod3_orientable(graph: Multigraph) -> bool:
    return find_beta_orientation(graph, {}) is not None


# -- exhaustive oracle ---------------------------------------------------


def orientation_from_bits(graph: Multigraph, bits: int) -> Orientation:
    """Orientation whose j-th edge (edge order) is forward iff bit j is set."""
    return Orientation(
        graph, {e.id: (FORWARD if (bits >> j) & 1 else REVERSE) for j, e in enumerate(graph.edges)}
    )


def deficiency_blocks(graph: Multigraph, block: int = 1 << 16) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (codes, deficiencies) over all 2^m orientations in blocks.

    ``codes`` are orientation bit patterns (bit j set = edge j forward) and
    ``deficiencies`` is an array of shape (len(codes), n).
    """
    total = 1 << graph.m
    idx = graph.index
    ends = [(idx[e.a], idx[e.b]) for e in graph.edges]
    for start in range(0, total, block):
        codes = np.arange(start, min(total, start + block), dtype=np.int64)
        defs = np.zeros((len(codes), graph.n), dtype=np.int16)
        for j, (a, b) in enumerate(ends):
            s = (((codes >> j) & 1) * 2 - 1).astype(np.int16)
            defs[:, a] += s
            defs[:, b] -= s
        yield codes, defs


def count_beta_orientations(
    graph: Multigraph,
    beta: Boundary | None = None,
    fixed: PartialOrientation | None = None,
    limit: int = ORACLE_EDGE_LIMIT,
) -> int:
    """Exact number of β-orientations (extending ``fixed``) by full enumeration."""
    if graph.m > limit:
        raise ResourceLimitError(f"{graph.m} edges exceed the oracle limit of {limit}")
    target_map = check_boundary(graph, beta)
    fixed = check_partial(graph, fixed)
    target = np.array([target_map[v] for v in graph.vertices], dtype=np.int16)
    pos = {e.id: j for j, e in enumerate(graph.edges)}
    count = 0
    for codes, defs in deficiency_blocks(graph):
        ok = np.all((defs - target) % 3 == 0, axis=1)
        for eid, d in fixed.items():
            bit = (codes >> pos[eid]) & 1
            ok &= bit == (1 if d == FORWARD else 0)
        count += int(ok.sum())
    return count


def all_beta_orientations(graph: Multigraph, beta: Boundary | None = None, limit: int = ORACLE_EDGE_LIMIT) -> Iterable[Orientation]:
    """Every β-orientation, in increasing bit-pattern order (exhaustive)."""
    if graph.m > limit:
        raise ResourceLimitError(f"{graph.m} edges exceed the oracle limit of {limit}")
    target_map = check_boundary(graph, beta)
    target = np.array([target_map[v] for v in graph.vertices], dtype=np.int16)
    for codes, defs in deficiency_blocks(graph):
        ok = np.all((defs - target) % 3 == 0, axis=1)
        for c in codes[ok].tolist():
            yield orientation_from_bits(graph, c)
