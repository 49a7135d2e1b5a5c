"""Loop-free multigraphs with stable edge identifiers, contraction and cut analysis.

Vertices are integers. Every edge carries an integer identifier that survives
every non-destructive operation; contraction keeps the identifiers of the
edges it does not delete and reports the deletions in an :class:`EdgeMap`.

Cut routines are exhaustive over vertex subsets (bitmask enumeration with
numpy) and refuse inputs above a configurable vertex cap.
"""

from __future__ import annotations

import logging
import math
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import InternalConsistencyError, PreconditionError, ResourceLimitError

log = logging.getLogger(__name__)

#: Default cap on the vertex count for exhaustive subset enumeration.
EXHAUSTIVE_VERTEX_LIMIT = 20
#: Largest vertex count for which ``edge_connectivity`` enumerates cuts by default.
EXHAUSTIVE_CONNECTIVITY_LIMIT = 12


class Edge(NamedTuple):
    id: int
    a: int
    b: int

    def other(self, v: int) -> int:
        if v == self.a:
            return self.b
        if v == self.b:
            return self.a
        raise PreconditionError(f"vertex {v} is not an endpoint of edge {self.id}")


@dataclass(frozen=True)
class Multigraph:
    """Immutable loop-free multigraph.

    ``vertices`` keeps insertion order and ``edges`` keeps edge order; both
    orders are part of the value and drive every deterministic search.
    """

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise PreconditionError("duplicate vertex identifier")
        seen = set()
        for e in self.edges:
            if e.id in seen:
                raise PreconditionError(f"duplicate edge identifier {e.id}")
            seen.add(e.id)
            if e.a not in vset or e.b not in vset:
                raise PreconditionError(f"edge {e.id} has an endpoint outside the vertex set")
            if e.a == e.b:
                raise PreconditionError(f"edge {e.id} is a loop")

    @classmethod
    def from_pairs(cls, vertices: int | Iterable[int], pairs: Iterable[tuple[int, int]]) -> "Multigraph":
        """Build a graph whose edges get identifiers 0, 1, ... in pair order."""
        if isinstance(vertices, int):
            vertices = range(vertices)
        return cls(tuple(vertices), tuple(Edge(i, u, v) for i, (u, v) in enumerate(pairs)))

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def incident(self) -> dict[int, tuple[Edge, ...]]:
        inc: dict[int, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.a].append(e)
            inc[e.b].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    @cached_property
    def pair_weights(self) -> dict[tuple[int, int], int]:
        """Edge multiplicity per unordered pair of vertex indices (i < j)."""
        w: Counter = Counter()
        idx = self.index
        for e in self.edges:
            i, j = sorted((idx[e.a], idx[e.b]))
            w[i, j] += 1
        return dict(w)

    def has_vertex(self, v) -> bool:
        return v in self.index

    def edge(self, eid: int) -> Edge:
        try:
            return self.edge_by_id[eid]
        except KeyError:
            raise PreconditionError(f"unknown edge identifier {eid}") from None

    def require(self, v: int) -> None:
        if v not in self.index:
            raise PreconditionError(f"unknown vertex {v}")

    def degree(self, v: int) -> int:
        self.require(v)
        return len(self.incident[v])

    def neighbors(self, v: int) -> list[int]:
        return [e.other(v) for e in self.incident[v]]

    def multiplicity(self, u: int, v: int) -> int:
        return sum(1 for e in self.incident[u] if e.other(u) == v)

    def boundary(self, side: Iterable[int]) -> tuple[Edge, ...]:
        """The edge cut of ``side``: edges with exactly one endpoint in it."""
        s = set(side)
        return tuple(e for e in self.edges if (e.a in s) != (e.b in s))

    def cut_size(self, side: Iterable[int]) -> int:
        return len(self.boundary(side))

    def next_vertex_id(self) -> int:
        return max(self.vertices, default=-1) + 1

    def next_edge_id(self) -> int:
        return max((e.id for e in self.edges), default=-1) + 1

    # -- derived graphs ------------------------------------------------

    def delete_vertex(self, v: int) -> "Multigraph":
        self.require(v)
        return Multigraph(
            tuple(u for u in self.vertices if u != v),
            tuple(e for e in self.edges if v not in (e.a, e.b)),
        )

    def delete_edges(self, eids: Iterable[int]) -> "Multigraph":
        drop = set(eids)
        for eid in drop:
            self.edge(eid)
        return Multigraph(self.vertices, tuple(e for e in self.edges if e.id not in drop))

    def add_edges(self, pairs: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "Multigraph":
        """Append new vertices and edges; new edges get fresh consecutive identifiers."""
        verts = self.vertices + tuple(vertices)
        nxt = self.next_edge_id()
        new = tuple(Edge(nxt + i, u, v) for i, (u, v) in enumerate(pairs))
        return Multigraph(verts, self.edges + new)

    def induced(self, side: Iterable[int]) -> "Multigraph":
        s = set(side)
        for v in s:
            self.require(v)
        return Multigraph(
            tuple(v for v in self.vertices if v in s),
            tuple(e for e in self.edges if e.a in s and e.b in s),
        )

    def relabeled(self) -> "Multigraph":
        """Copy with vertices renamed 0..n-1 and edges renumbered 0..m-1 (order kept)."""
        idx = self.index
        return Multigraph.from_pairs(self.n, ((idx[e.a], idx[e.b]) for e in self.edges))

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.neighbors(u):
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def pairs(self) -> list[tuple[int, int]]:
        return [(e.a, e.b) for e in self.edges]


DELETED = None


@dataclass(frozen=True)
class EdgeMap:
    """Provenance of a contraction.

    ``edges`` maps every old edge identifier to its new identifier, or to
    ``None`` when the edge became a loop and was deleted. ``vertices`` maps
    every old vertex to its image.
    """

    edges: Mapping[int, int | None]
    vertices: Mapping[int, int]

    @property
    def deleted(self) -> list[int]:
        return [e for e, new in self.edges.items() if new is None]


def contract(graph: Multigraph, side: Iterable[int], new_vertex: int | None = None) -> tuple[Multigraph, EdgeMap]:
    """Merge ``side`` into a single vertex, deleting the edges inside it.

    The merged vertex is called ``new_vertex`` (default: the smallest member
    of ``side``) and takes the position of the first member of ``side`` in
    the vertex order. Surviving edges keep their identifiers and their
    endpoint order.
    """
    s = set(side)
    if not s:
        raise PreconditionError("cannot contract an empty vertex set")
    for v in s:
        graph.require(v)
    if new_vertex is None:
        new_vertex = min(s)
    elif new_vertex in graph.index and new_vertex not in s:
        raise PreconditionError(f"new vertex id {new_vertex} collides with an existing vertex")

    vmap = {v: (new_vertex if v in s else v) for v in graph.vertices}
    verts = []
    placed = False
    for v in graph.vertices:
        if v in s:
            if not placed:
                verts.append(new_vertex)
                placed = True
        else:
            verts.append(v)
    edges = []
    emap: dict[int, int | None] = {}
    for e in graph.edges:
        a, b = vmap[e.a], vmap[e.b]
        if a == b:
            emap[e.id] = DELETED
        else:
            emap[e.id] = e.id
            edges.append(Edge(e.id, a, b))
    return Multigraph(tuple(verts), tuple(edges)), EdgeMap(emap, vmap)


# -- exhaustive cut machinery -------------------------------------------


def _check_limit(graph: Multigraph, limit: int) -> None:
    if graph.n > limit:
        raise ResourceLimitError(
            f"exhaustive cut enumeration over {graph.n} vertices exceeds the limit of {limit}"
        )


def mask_cut_sizes(graph: Multigraph, masks: np.ndarray) -> np.ndarray:
    """d(A) for every vertex subset encoded as a bitmask over ``graph.vertices``."""
    masks = np.asarray(masks, dtype=np.int64)
    out = np.zeros(masks.shape, dtype=np.int64)
    for (i, j), w in graph.pair_weights.items():
        out += w * (((masks >> i) ^ (masks >> j)) & 1)
    return out


def mask_to_side(graph: Multigraph, mask: int) -> frozenset[int]:
    return frozenset(v for i, v in enumerate(graph.vertices) if (mask >> i) & 1)


def side_to_mask(graph: Multigraph, side: Iterable[int]) -> int:
    idx = graph.index
    return sum(1 << idx[v] for v in side)


def _canonical_masks(n: int) -> np.ndarray:
    """Masks of all proper subsets containing vertex index 0."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    masks = (np.arange(2 ** (n - 1), dtype=np.int64) << 1) | 1
    return masks[:-1]


@dataclass(frozen=True)
class CutReport:
    """An edge cut ∂(side), its size d(side), and whether it is k-critical.

    ``critical`` is true when ``side`` or its complement is a k-critical set.
    """

    side: frozenset[int]
    size: int
    critical: bool


def _minimal_masks(small: np.ndarray) -> np.ndarray:
    """Boolean flags: which masks in ``small`` contain no other member as a proper submask."""
    flags = np.ones(len(small), dtype=bool)
    for i, a in enumerate(small):
        sub = ((small & ~a) == 0) & (small != a)
        flags[i] = not sub.any()
    return flags


def _small_side_masks(graph: Multigraph, k: int) -> np.ndarray:
    """All nonempty proper subsets A (both sides of every cut) with d(A) <= k."""
    canon = _canonical_masks(graph.n)
    sizes = mask_cut_sizes(graph, canon)
    sel = canon[sizes <= k]
    full = (1 << graph.n) - 1
    return np.unique(np.concatenate([sel, full ^ sel]))


def enumerate_small_cuts(graph: Multigraph, k: int, limit: int = EXHAUSTIVE_VERTEX_LIMIT) -> list[CutReport]:
    """Every cut of size at most ``k``, one report per complementary pair.

    The reported side is the one containing the first vertex. Reports are
    sorted by size, then by the sorted side.
    """
    _check_limit(graph, limit)
    if graph.n < 2:
        return []
    canon = _canonical_masks(graph.n)
    sizes = mask_cut_sizes(graph, canon)
    keep = sizes <= k
    sel, sel_sizes = canon[keep], sizes[keep]
    full = (1 << graph.n) - 1
    both = np.unique(np.concatenate([sel, full ^ sel]))
    minimal = dict(zip(both.tolist(), _minimal_masks(both).tolist()))
    reports = [
        CutReport(mask_to_side(graph, a), int(d), bool(minimal[a] or minimal[full ^ a]))
        for a, d in zip(sel.tolist(), sel_sizes.tolist())
    ]
    reports.sort(key=lambda r: (r.size, sorted(r.side)))
    return reports


def _is_k_edge_connected(graph: Multigraph, k: int) -> bool:
    return graph.n >= 2 and edge_connectivity(graph) >= k


def critical_sets(
    graph: Multigraph, k: int, check: bool = True, limit: int = EXHAUSTIVE_VERTEX_LIMIT
) -> list[frozenset[int]]:
    """All k-critical sets: A with d(A) <= k whose nonempty proper subsets all have d > k.

    With ``check`` the graph must be k-edge-connected, which is the setting
    in which the sets are pairwise disjoint.
    """
    _check_limit(graph, limit)
    if check and not _is_k_edge_connected(graph, k):
        raise PreconditionError(f"graph is not {k}-edge-connected")
    if graph.n < 2:
        return []
    small = _small_side_masks(graph, k)
    crit = small[_minimal_masks(small)]
    sets = [mask_to_side(graph, a) for a in crit.tolist()]
    sets.sort(key=lambda s: sorted(s))
    return sets


def count_k_cuts(graph: Multigraph, k: int, limit: int = EXHAUSTIVE_VERTEX_LIMIT) -> int:
    """Number of edge cuts (complementary pairs) of size exactly ``k``."""
    return sum(1 for r in enumerate_small_cuts(graph, k, limit) if r.size == k)


def apex_augment(
    graph: Multigraph,
    k: int,
    multiplicities: Sequence[int],
    verify: bool = True,
    verify_limit: int = 14,
) -> Multigraph:
    """Add a vertex joined into every k-critical set.

    The new vertex (``graph.next_vertex_id()``, placed last) is joined to the
    smallest vertex of the i-th critical set by ``multiplicities[i]`` edges.
    When every multiplicity is 1 and the result has at most ``verify_limit``
    vertices, the bound "every cut other than the apex star has size >= k+1"
    is checked exhaustively.
    """
    sets = critical_sets(graph, k)
    if not sets:
        raise PreconditionError(f"graph has no {k}-critical sets; an isolated apex is not allowed")
    if len(multiplicities) != len(sets):
        raise PreconditionError(
            f"{len(multiplicities)} multiplicities given for {len(sets)} critical sets"
        )
    if any(int(mu) < 1 for mu in multiplicities):
        raise PreconditionError("multiplicities must be at least 1")
    x = graph.next_vertex_id()
    pairs = [(x, min(a)) for a, mu in zip(sets, multiplicities) for _ in range(int(mu))]
    out = graph.add_edges(pairs, vertices=[x])
    if verify and all(int(mu) == 1 for mu in multiplicities) and out.n <= verify_limit:
        violating = [r for r in enumerate_small_cuts(out, k) if r.side != frozenset(out.vertices) - {x}]
        violating = [r for r in violating if r.side != frozenset({x})]
        if violating:
            raise InternalConsistencyError(
                f"apex augmentation left a cut of size {violating[0].size} <= {k}"
            )
    return out


# -- connectivity ------------------------------------------------------


def _max_flow(graph: Multigraph, s: int, t: int, bound: int | None = None) -> int:
    """Unit-capacity max flow between ``s`` and ``t`` by BFS augmenting paths."""
    cap: dict[int, dict[int, int]] = {v: {} for v in graph.vertices}
    for e in graph.edges:
        cap[e.a][e.b] = cap[e.a].get(e.b, 0) + 1
        cap[e.b][e.a] = cap[e.b].get(e.a, 0) + 1
    flow = 0
    while bound is None or flow < bound:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for w, c in cap[u].items():
                if c > 0 and w not in parent:
                    parent[w] = u
                    queue.append(w)
        if t not in parent:
            break
        w = t
        while parent[w] is not None:
            u = parent[w]
            cap[u][w] -= 1
            cap[w][u] = cap[w].get(u, 0) + 1
            w = u
        flow += 1
    return flow


def edge_connectivity(graph: Multigraph, method: str = "auto") -> int:
    """Minimum of d(A) over nonempty proper vertex subsets A.

    ``method`` is ``"exhaustive"`` (subset enumeration), ``"maxflow"``
    (max flow from the first vertex to every other) or ``"auto"``.
    A disconnected graph returns 0.
    """
    if graph.n < 2:
        raise PreconditionError("edge connectivity needs at least two vertices")
    if not graph.is_connected():
        return 0
    if method == "auto":
        method = "exhaustive" if graph.n <= EXHAUSTIVE_CONNECTIVITY_LIMIT else "maxflow"
    if method == "exhaustive":
        _check_limit(graph, EXHAUSTIVE_VERTEX_LIMIT)
        return int(mask_cut_sizes(graph, _canonical_masks(graph.n)).min())
    if method == "maxflow":
        s = graph.vertices[0]
        best = min(graph.degree(v) for v in graph.vertices)
        for t in graph.vertices[1:]:
            best = min(best, _max_flow(graph, s, t, bound=best))
        return best
    raise PreconditionError(f"unknown method {method!r}")


def essential_edge_connectivity(graph: Multigraph, limit: int = EXHAUSTIVE_VERTEX_LIMIT) -> float:
    """Largest k such that every cut of size below k has a singleton side.

    Equals the smallest cut whose sides both have at least two vertices;
    ``math.inf`` when no such cut exists (three vertices).
    """
    if graph.n < 3:
        raise PreconditionError("essential edge connectivity needs at least three vertices")
    _check_limit(graph, limit)
    canon = _canonical_masks(graph.n)
    pop = np.bitwise_count(canon)
    canon = canon[(pop >= 2) & (graph.n - pop >= 2)]
    if len(canon) == 0:
        return math.inf
    return int(mask_cut_sizes(graph, canon).min())


# -- Mader splitting ---------------------------------------------------


def _pairings(edges: list[Edge], z: int) -> Iterator[list[tuple[Edge, Edge]]]:
    """Perfect pairings of ``edges`` in lexicographic order, skipping loop-creating pairs."""
    if not edges:
        yield []
        return
    first, rest = edges[0], edges[1:]
    for i, partner in enumerate(rest):
        if first.other(z) == partner.other(z):
            continue
        for tail in _pairings(rest[:i] + rest[i + 1 :], z):
            yield [(first, partner)] + tail


def split_pairing(graph: Multigraph, z: int, pairing: Sequence[tuple[Edge, Edge]]) -> Multigraph:
    """Replace each pair (uz, vz) by a new edge uv and delete ``z``."""
    rest = graph.delete_vertex(z)
    return rest.add_edges([(e.other(z), f.other(z)) for e, f in pairing])


def mader_complete_split(graph: Multigraph, z: int, k: int) -> Multigraph | None:
    """Search for a complete splitting at ``z`` that keeps the graph k-edge-connected.

    Pairings are tried in lexicographic order of edge identifiers. Returns
    ``None`` (and logs it) only after every pairing has been tried.
    """
    graph.require(z)
    d = graph.degree(z)
    if d % 2:
        raise PreconditionError(f"vertex {z} has odd degree {d}")
    if not _is_k_edge_connected(graph, k):
        raise PreconditionError(f"graph is not {k}-edge-connected")
    edges = sorted(graph.incident[z], key=lambda e: e.id)
    tried = 0
    for pairing in _pairings(edges, z):
        tried += 1
        out = split_pairing(graph, z, pairing)
        if out.n >= 2 and edge_connectivity(out) >= k:
            return out
    log.info("no complete splitting at %s keeps %d-edge-connectivity (%d pairings tried)", z, k, tried)
    return None


# -- isomorphism-invariant canonical form ----------------------------------


def _refine(adj: list[dict[int, int]], colors: list[int]) -> list[int]:
    while True:
        sigs = [
            (colors[v], tuple(sorted((colors[u], w) for u, w in adj[v].items())))
            for v in range(len(adj))
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def canonical_form(graph: Multigraph) -> tuple:
    """Isomorphism-invariant certificate: minimal permuted multiplicity matrix.

    Individualization-refinement over the color-refined partition; the
    certificate is the lexicographically smallest upper triangle over all
    leaves of the search tree.
    """
    n = graph.n
    adj: list[dict[int, int]] = [dict() for _ in range(n)]
    for (i, j), w in graph.pair_weights.items():
        adj[i][j] = w
        adj[j][i] = w
    best = None

    def search(colors):
        nonlocal best
        colors = _refine(adj, colors)
        counts = Counter(colors)
        if len(counts) == n:
            order = sorted(range(n), key=lambda v: colors[v])
            cert = tuple(adj[order[i]].get(order[j], 0) for i in range(n) for j in range(i + 1, n))
            if best is None or cert < best:
                best = cert
            return
        target = min(c for c, cnt in counts.items() if cnt > 1)
        for v in range(n):
            if colors[v] == target:
                search([2 * c + (0 if u == v else 1) if c == target else 2 * c for u, c in enumerate(colors)])

    search([0] * n)
    return (n, best if best is not None else ())
