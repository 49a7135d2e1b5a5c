"""Z3-connectivity, M3/Z3-extendability, Z3-reducedness and small-graph hunting.

Two engines decide whether every boundary admits a β-orientation:

``solver``
    one backtracking call per boundary (the definition, verbatim);
``table``
    the set of all deficiency vectors mod 3 reachable by orienting the edges
    one at a time, held as a boolean array of shape (3,)*n.

Both enumerate boundaries in the same order (values free on all but the
last vertex, which is forced by the zero sum), so they report the same
witness. Sampled verdicts are always tagged ``mode="sample"``.
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations, product
from typing import Iterator

import numpy as np

from .errors import PreconditionError, ResourceLimitError
from .graphcore import Multigraph, canonical_form
from .orient import (
    ORACLE_EDGE_LIMIT,
    FORWARD,
    REVERSE,
    SolverStats,
    deficiency_blocks,
    find_beta_orientation,
)

DEFAULT_BOUNDARY_BUDGET = 3**9
#: Vertex cap for the induced-subgraph scan of ``is_z3_reduced``.
REDUCED_VERTEX_LIMIT = 14
#: Vertex cap for ``hunt_z3_reduced``.
HUNT_VERTEX_LIMIT = 8


def default_budget() -> int:
    """Boundary budget for exhaustive mode; overridable via ``FLOWEXT_BUDGET``."""
    env = os.environ.get("FLOWEXT_BUDGET")
    return int(env) if env else DEFAULT_BOUNDARY_BUDGET


@dataclass
class ConnectivityVerdict:
    connected: bool
    witness: dict[int, int] | None
    mode: str
    engine: str
    boundaries_tested: int = 0
    solver_calls: int = 0
    samples: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if (self.witness is None) != self.connected:
            raise PreconditionError("a witness is present exactly when the verdict is negative")

    @property
    def exhaustive(self) -> bool:
        return self.mode == "exhaustive"

    def to_dict(self) -> dict:
        out = asdict(self)
        if self.witness is not None:
            out["witness"] = {str(v): b for v, b in self.witness.items()}
        return out


def boundaries(graph: Multigraph) -> Iterator[dict[int, int]]:
    """All boundaries of ``graph`` in enumeration order."""
    vs = graph.vertices
    if not vs:
        yield {}
        return
    for head in product(range(3), repeat=len(vs) - 1):
        last = (-sum(head)) % 3
        yield dict(zip(vs, head + (last,)))


def random_boundary(graph: Multigraph, rng: random.Random) -> dict[int, int]:
    vs = graph.vertices
    head = [rng.randrange(3) for _ in vs[:-1]]
    return dict(zip(vs, head + [(-sum(head)) % 3])) if vs else {}


def reachable_boundaries(graph: Multigraph) -> np.ndarray:
    """Boolean array R of shape (3,)*n with R[β] true iff some orientation realizes β."""
    n = graph.n
    reach = np.zeros((3,) * n, dtype=bool)
    reach[(0,) * n] = True
    idx = graph.index
    for e in graph.edges:
        a, b = idx[e.a], idx[e.b]
        fwd = np.roll(np.roll(reach, 1, axis=a), -1, axis=b)
        bwd = np.roll(np.roll(reach, -1, axis=a), 1, axis=b)
        reach = fwd | bwd
    return reach


def _first_failure(graph: Multigraph, start: int, stop: int) -> tuple[int | None, int]:
    """Index of the first boundary in [start, stop) without a β-orientation, plus solver calls."""
    stats = SolverStats()
    for i, beta in enumerate(boundaries(graph)):
        if i < start:
            continue
        if i >= stop:
            break
        if find_beta_orientation(graph, beta, stats=stats) is None:
            return i, stats.calls
    return None, stats.calls


def _nth_boundary(graph: Multigraph, i: int) -> dict[int, int]:
    for j, beta in enumerate(boundaries(graph)):
        if j == i:
            return beta
    raise IndexError(i)


def is_z3_connected(
    graph: Multigraph,
    mode: str = "exhaustive",
    *,
    samples: int = 100,
    seed: int = 0,
    budget: int | None = None,
    engine: str = "solver",
    jobs: int = 1,
) -> ConnectivityVerdict:
    """Decide (exhaustive) or probe (sample) whether every boundary has a β-orientation."""
    n = graph.n
    if mode == "sample":
        rng = random.Random(seed)
        stats = SolverStats()
        for t in range(samples):
            beta = random_boundary(graph, rng)
            if find_beta_orientation(graph, beta, stats=stats) is None:
                return ConnectivityVerdict(False, beta, "sample", "solver", t + 1, stats.calls, samples, seed)
        return ConnectivityVerdict(True, None, "sample", "solver", samples, stats.calls, samples, seed)
    if mode != "exhaustive":
        raise PreconditionError(f"unknown mode {mode!r}")

    total = 3 ** max(n - 1, 0)
    budget = default_budget() if budget is None else budget
    if total > budget:
        raise ResourceLimitError(f"{total} boundaries exceed the exhaustive budget of {budget}")

    if engine == "table":
        reach = reachable_boundaries(graph)
        for i, beta in enumerate(boundaries(graph)):
            if not reach[tuple(beta[v] for v in graph.vertices)]:
                return ConnectivityVerdict(False, beta, "exhaustive", "table", i + 1, 0)
        return ConnectivityVerdict(True, None, "exhaustive", "table", total, 0)
    if engine != "solver":
        raise PreconditionError(f"unknown engine {engine!r}")

    if jobs <= 1 or total < 64:
        fail, calls = _first_failure(graph, 0, total)
    else:
        step = math.ceil(total / jobs)
        bounds = [(s, min(total, s + step)) for s in range(0, total, step)]
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_first_failure, [graph] * len(bounds), *zip(*bounds)))
        fails = [f for f, _ in results if f is not None]
        fail = min(fails) if fails else None
        calls = sum(c for _, c in results)
    if fail is None:
        return ConnectivityVerdict(True, None, "exhaustive", "solver", total, calls)
    return ConnectivityVerdict(False, _nth_boundary(graph, fail), "exhaustive", "solver", fail + 1, calls)


def _z3_connected_fast(graph: Multigraph) -> bool:
    """Exhaustive decision via the reachable-set table, with sound prefilters."""
    n = graph.n
    if n <= 1:
        return True
    # Each boundary needs its own orientation: 2^m >= 3^(n-1).
    if graph.m * math.log(2) < (n - 1) * math.log(3) - 1e-9:
        return False
    if any(graph.degree(v) <= 1 for v in graph.vertices) or not graph.is_connected():
        return False
    reach = reachable_boundaries(graph)
    return int(reach.sum()) == 3 ** (n - 1)


# -- extendability -----------------------------------------------------


def _direct_extendable(graph: Multigraph, x: int, limit: int) -> bool:
    """Every (β, pre-orientation of ∂(x)) with matching residue at x extends.

    Brute force over all 2^m orientations: for each pattern on ∂(x) the
    distinct boundaries realized must be all 3^(n-2) admissible ones.
    """
    if graph.m > limit:
        raise ResourceLimitError(f"{graph.m} edges exceed the direct-method limit of {limit}")
    n = graph.n
    if n == 1:
        return True
    pos = [j for j, e in enumerate(graph.edges) if x in (e.a, e.b)]
    weights = 3 ** np.arange(n, dtype=np.int64)
    keys = []
    for codes, defs in deficiency_blocks(graph):
        pattern = np.zeros(len(codes), dtype=np.int64)
        for k, j in enumerate(pos):
            pattern |= ((codes >> j) & 1) << k
        bcode = (defs.astype(np.int64) % 3) @ weights
        keys.append(np.unique(pattern * 3**n + bcode))
    keys = np.unique(np.concatenate(keys))
    per_pattern = np.bincount(keys // 3**n, minlength=1 << len(pos))
    return bool(np.all(per_pattern == 3 ** (n - 2)))


def is_z3_extendable_at(
    graph: Multigraph,
    x: int,
    method: str = "via_deletion",
    *,
    budget: int | None = None,
    limit: int = ORACLE_EDGE_LIMIT,
) -> bool:
    """Z3-extendability at ``x``.

    ``direct`` checks the definition by exhaustive orientation enumeration;
    ``via_deletion`` decides Z3-connectivity of G - x.
    """
    graph.require(x)
    if method == "direct":
        return _direct_extendable(graph, x, limit)
    if method == "via_deletion":
        return is_z3_connected(graph.delete_vertex(x), budget=budget).connected
    raise PreconditionError(f"unknown method {method!r}")


def balanced_preorientations(graph: Multigraph, x: int, residue: int = 0) -> Iterator[dict[int, int]]:
    """Pre-orientations of ∂(x) whose deficiency at x is ≡ ``residue`` (mod 3)."""
    star = sorted(graph.incident[x], key=lambda e: e.id)
    for dirs in product((FORWARD, REVERSE), repeat=len(star)):
        pre = {}
        defi = 0
        for e, d in zip(star, dirs):
            pre[e.id] = d
            defi += d if e.a == x else -d
        if (defi - residue) % 3 == 0:
            yield pre


def m3_extension_failures(graph: Multigraph, x: int) -> list[dict[int, int]]:
    return [pre for pre in balanced_preorientations(graph, x) if find_beta_orientation(graph, {}, pre) is None]


def is_m3_extendable_at(graph: Multigraph, x: int) -> bool:
    """Every balanced pre-orientation of ∂(x) extends to a mod 3-orientation."""
    graph.require(x)
    return all(find_beta_orientation(graph, {}, pre) is not None for pre in balanced_preorientations(graph, x))


# -- reducedness and hunting -------------------------------------------------


def find_z3_connected_subgraph(graph: Multigraph, limit: int = REDUCED_VERTEX_LIMIT) -> frozenset[int] | None:
    """Smallest-first search for a vertex set of size >= 2 inducing a Z3-connected graph.

    Induced subgraphs suffice: adding edges preserves Z3-connectivity.
    """
    if graph.n > limit:
        raise ResourceLimitError(f"{graph.n} vertices exceed the reducedness limit of {limit}")
    for size in range(2, graph.n + 1):
        for side in combinations(graph.vertices, size):
            if _z3_connected_fast(graph.induced(side)):
                return frozenset(side)
    return None


def is_z3_reduced(graph: Multigraph, limit: int = REDUCED_VERTEX_LIMIT) -> bool:
    return find_z3_connected_subgraph(graph, limit) is None


def _new_vertex_in_z3_subgraph(graph: Multigraph, v: int) -> bool:
    others = [u for u in graph.vertices if u != v]
    for size in range(1, len(others) + 1):
        for side in combinations(others, size):
            if _z3_connected_fast(graph.induced(side + (v,))):
                return True
    return False


@dataclass
class HuntStats:
    candidates: int = 0
    isomorphs_rejected: int = 0
    reduced_by_size: dict[int, int] = field(default_factory=dict)


def hunt_z3_reduced(
    min_degree: int,
    max_vertices: int,
    simple_only: bool = True,
    *,
    max_multiplicity: int = 1,
    limit: int = HUNT_VERTEX_LIMIT,
    stats: HuntStats | None = None,
) -> list[Multigraph]:
    """All Z3-reduced graphs (up to isomorphism) with minimum degree >= ``min_degree``.

    Graphs are grown one vertex at a time; being Z3-reduced passes to
    induced subgraphs, so only reduced graphs are extended. A partial graph
    is dropped once some vertex cannot reach ``min_degree`` even if joined
    to every vertex still to come. Results are sorted by (order, canonical form).
    """
    if max_vertices > limit:
        raise ResourceLimitError(f"max_vertices {max_vertices} exceeds the hunt limit of {limit}")
    cap = 1 if simple_only else max_multiplicity
    stats = stats if stats is not None else HuntStats()

    def viable(g: Multigraph, still_to_add: int) -> bool:
        return all(g.degree(v) + cap * still_to_add >= min_degree for v in g.vertices)

    level = {canonical_form(Multigraph((0,), ())): Multigraph((0,), ())}
    found: list[tuple[tuple, Multigraph]] = []
    for n in range(2, max_vertices + 1):
        nxt: dict[tuple, Multigraph] = {}
        rejected: set[tuple] = set()
        for parent in level.values():
            new = n - 1
            for mult in product(range(cap + 1), repeat=n - 1):
                pairs = [(u, new) for u, mu in zip(parent.vertices, mult) for _ in range(mu)]
                g = parent.add_edges(pairs, vertices=[new])
                if not viable(g, max_vertices - n):
                    continue
                stats.candidates += 1
                cf = canonical_form(g)
                if cf in nxt or cf in rejected:
                    stats.isomorphs_rejected += 1
                    continue
                if _new_vertex_in_z3_subgraph(g, new):
                    rejected.add(cf)
                else:
                    nxt[cf] = g
        level = nxt
        stats.reduced_by_size[n] = len(level)
        found.extend((cf, g) for cf, g in level.items() if min(g.degree(v) for v in g.vertices) >= min_degree)
    found.sort(key=lambda t: t[0])
    return [g for _, g in found]
