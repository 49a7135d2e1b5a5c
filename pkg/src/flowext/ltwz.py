"""The τ-function, the partial-extension hypotheses, and the apex constructions built on them.

The extension theorem of Lovász, Thomassen, Wu and Zhang says: if |V| >= 3,
d(z) <= 4 + |τ(z)| with ∂(z) pre-oriented to the right residue at z, and
d(A) >= 4 + |τ(A)| for every other admissible set A, then the pre-orientation
extends to a β-orientation of G. Here the theorem is an oracle: the
hypotheses are checked exhaustively and the extension is found by the solver.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisError, InternalConsistencyError, PreconditionError, ResourceLimitError
from .graphcore import (
    EXHAUSTIVE_VERTEX_LIMIT,
    Multigraph,
    critical_sets,
    edge_connectivity,
    enumerate_small_cuts,
    mask_cut_sizes,
    mask_to_side,
)
from .groupconn import ConnectivityVerdict, default_budget, is_z3_connected
from .orient import FORWARD, Orientation, check_boundary, check_partial, find_beta_orientation

log = logging.getLogger(__name__)

#: Subsets scanned per numpy block in the condition (iii) check.
SUBSET_BLOCK = 1 << 18


def tau_value(d: int, residue: int) -> int:
    """The value in {0, ±1, ±2, 3} with parity of ``d`` and ``residue`` mod 3.

    For odd d and residue 0 both +3 and -3 qualify; +3 is returned.
    """
    r = residue % 3
    if d % 2 == 0:
        return (0, -2, 2)[r]
    return (3, 1, -1)[r]


def _abs_tau(d: np.ndarray, r: np.ndarray) -> np.ndarray:
    even = (d % 2) == 0
    return np.where(even, np.where(r == 0, 0, 2), np.where(r == 0, 3, 1))


def tau(graph: Multigraph, beta: dict[int, int], side) -> int:
    side = frozenset(side)
    for v in side:
        graph.require(v)
    if not side or len(side) == graph.n:
        raise PreconditionError("τ is defined on nonempty proper vertex subsets")
    b = check_boundary(graph, beta)
    return tau_value(graph.cut_size(side), sum(b[v] for v in side))


def preorientation_deficiency(graph: Multigraph, z: int, d_z: dict[int, int]) -> int:
    """Out minus in at ``z`` under a pre-orientation that decides exactly ∂(z)."""
    graph.require(z)
    d_z = check_partial(graph, d_z)
    star = {e.id for e in graph.incident[z]}
    if set(d_z) != star:
        raise PreconditionError("pre-orientation must decide exactly the edges at z")
    total = 0
    for eid, d in d_z.items():
        e = graph.edge(eid)
        tail = e.a if d == FORWARD else e.b
        total += 1 if tail == z else -1
    return total


@dataclass
class HypothesisReport:
    """Outcome of the three hypotheses; ``violating_set`` is the first failing A by mask order."""

    enough_vertices: bool
    degree_z: int
    tau_z: int
    z_degree_ok: bool
    z_residue_ok: bool
    cuts_ok: bool
    violating_set: frozenset[int] | None = None
    violating_size: int | None = None
    violating_tau: int | None = None
    subsets_scanned: int = 0

    @property
    def condition_i(self) -> bool:
        return self.enough_vertices

    @property
    def condition_ii(self) -> bool:
        return self.z_degree_ok and self.z_residue_ok

    @property
    def condition_iii(self) -> bool:
        return self.cuts_ok

    @property
    def passed(self) -> bool:
        return self.condition_i and self.condition_ii and self.condition_iii

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "condition_i": self.condition_i,
            "condition_ii": self.condition_ii,
            "condition_iii": self.condition_iii,
            "degree_z": self.degree_z,
            "tau_z": self.tau_z,
            "z_degree_ok": self.z_degree_ok,
            "z_residue_ok": self.z_residue_ok,
            "violating_set": sorted(self.violating_set) if self.violating_set is not None else None,
            "violating_size": self.violating_size,
            "violating_tau": self.violating_tau,
            "subsets_scanned": self.subsets_scanned,
        }


def _subset_masks_avoiding(n: int, iz: int, start: int, stop: int) -> np.ndarray:
    # r ranges over subsets of the other n-1 vertices; a zero bit is spliced in at iz.
    r = np.arange(start, stop, dtype=np.int64)
    low = r & ((1 << iz) - 1)
    high = r >> iz
    return low | (high << (iz + 1))


def check_ltwz_hypotheses(
    graph: Multigraph,
    beta: dict[int, int],
    z: int,
    d_z: dict[int, int],
    limit: int = EXHAUSTIVE_VERTEX_LIMIT,
) -> HypothesisReport:
    b = check_boundary(graph, beta)
    deficiency_z = preorientation_deficiency(graph, z, d_z)
    n = graph.n
    if n > limit:
        raise ResourceLimitError(f"subset scan over {n} vertices exceeds the limit of {limit}")
    dz = graph.degree(z)
    tz = tau_value(dz, b[z])
    report = HypothesisReport(
        enough_vertices=n >= 3,
        degree_z=dz,
        tau_z=tz,
        z_degree_ok=dz <= 4 + abs(tz),
        z_residue_ok=(deficiency_z - b[z]) % 3 == 0,
        cuts_ok=True,
    )
    if n < 2:
        return report
    iz = graph.index[z]
    weights = np.array([b[v] for v in graph.vertices], dtype=np.int64)
    total = (1 << (n - 1)) - 1  # r = 1 .. 2^(n-1) - 2 excludes the empty set and V - z
    for start in range(1, total, SUBSET_BLOCK):
        masks = _subset_masks_avoiding(n, iz, start, min(total, start + SUBSET_BLOCK))
        sizes = mask_cut_sizes(graph, masks)
        res = np.zeros(len(masks), dtype=np.int64)
        for i, w in enumerate(weights.tolist()):
            if w:
                res += w * ((masks >> i) & 1)
        res %= 3
        bad = np.flatnonzero(sizes < 4 + _abs_tau(sizes, res))
        report.subsets_scanned += len(masks)
        if len(bad):
            j = int(bad[0])
            report.cuts_ok = False
            report.violating_set = mask_to_side(graph, int(masks[j]))
            report.violating_size = int(sizes[j])
            report.violating_tau = tau_value(int(sizes[j]), int(res[j]))
            break
    return report


def extend_with_ltwz(graph: Multigraph, beta: dict[int, int], z: int, d_z: dict[int, int]) -> Orientation:
    """A β-orientation extending ``d_z``; the hypotheses must hold."""
    report = check_ltwz_hypotheses(graph, beta, z, d_z)
    if not report.passed:
        where = f"; first violating set {sorted(report.violating_set)}" if report.violating_set else ""
        raise HypothesisError(f"extension hypotheses fail{where}", report)
    found = find_beta_orientation(graph, beta, fixed=d_z)
    if found is None:
        raise InternalConsistencyError("hypotheses hold but no extending β-orientation exists")
    return found


# -- (d-i): at most five 4-cuts, no 5-cuts --------------------------------


@dataclass
class DIConstruction:
    """G' = G plus apex z joined once into each 4-critical set, with β' and the apex pre-orientation.

    When G has no 4-critical sets there is no apex: ``z`` is None, G' = G
    and β' = β.
    """

    graph: Multigraph
    beta: dict[int, int]
    preorientation: dict[int, int]
    z: int | None
    critical: list[frozenset[int]] = field(default_factory=list)
    taus: list[int] = field(default_factory=list)
    report: HypothesisReport | None = None


def _check_di_hypotheses(graph: Multigraph) -> None:
    if graph.n < 2 or edge_connectivity(graph) < 4:
        raise PreconditionError("graph is not 4-edge-connected")
    small = enumerate_small_cuts(graph, 5)
    fours = sum(1 for r in small if r.size == 4)
    fives = sum(1 for r in small if r.size == 5)
    if fives:
        raise PreconditionError(f"graph has {fives} cuts of size 5")
    if fours > 5:
        raise PreconditionError(f"graph has {fours} cuts of size 4 (at most five allowed)")


def build_dI_construction(graph: Multigraph, beta: dict[int, int]) -> DIConstruction:
    b = check_boundary(graph, beta)
    _check_di_hypotheses(graph)
    sets = critical_sets(graph, 4)
    if not sets:
        return DIConstruction(graph, b, {}, None)
    if len(sets) > 5:
        raise InternalConsistencyError(f"{len(sets)} critical sets from at most five 4-cuts")
    z = graph.next_vertex_id()
    anchors = [min(a) for a in sets]
    g2 = graph.add_edges([(z, v) for v in anchors], vertices=[z])
    new_edges = g2.edges[graph.m:]
    taus = [tau_value(graph.cut_size(a), sum(b[v] for v in a)) for a in sets]
    b2 = dict(b)
    pre: dict[int, int] = {}
    for e, v, t in zip(new_edges, anchors, taus):
        outward = t in (0, 2)
        pre[e.id] = FORWARD if (e.a == z) == outward else -FORWARD
        b2[v] = (b2[v] + (-1 if outward else 1)) % 3
    b2[z] = (-sum(b2.values())) % 3
    b2 = check_boundary(g2, b2)
    if (preorientation_deficiency(g2, z, pre) - b2[z]) % 3:
        raise InternalConsistencyError("β'(z) disagrees with the apex pre-orientation")
    for a in sets:
        d = g2.cut_size(a)
        if d != 4 + abs(tau_value(d, sum(b2[v] for v in a))):
            raise InternalConsistencyError(f"critical set {sorted(a)} misses d(A) = 4 + |τ'(A)|")
    report = check_ltwz_hypotheses(g2, b2, z, pre)
    if not report.passed:
        raise InternalConsistencyError(f"constructed instance fails the hypotheses: {report.to_dict()}")
    return DIConstruction(g2, b2, pre, z, sets, taus, report)


def solve_dI(graph: Multigraph, beta: dict[int, int]) -> Orientation:
    """β-orientation of G obtained by extending the apex pre-orientation and dropping the apex."""
    con = build_dI_construction(graph, beta)
    if con.z is None:
        found = find_beta_orientation(graph, beta)
        if found is None:
            raise InternalConsistencyError("no β-orientation although G has no small cuts")
        return found
    full = extend_with_ltwz(con.graph, con.beta, con.z, con.preorientation)
    dirs = {e.id: full.directions[e.id] for e in graph.edges}
    return Orientation(graph, dirs)


# -- (d-ii): at most seven 5-critical sets --------------------------------


def build_dII_apex(graph: Multigraph, degree: int = 7) -> tuple[Multigraph, list[frozenset[int]]]:
    """Apex of degree ``degree`` joined once into each 5-critical set, padding the first set."""
    sets = critical_sets(graph, 5)
    if len(sets) > degree:
        raise PreconditionError(f"{len(sets)} 5-critical sets exceed the allowed {degree}")
    if not sets:
        return graph, sets
    z = graph.next_vertex_id()
    mult = [degree - (len(sets) - 1)] + [1] * (len(sets) - 1)
    pairs = [(z, min(a)) for a, mu in zip(sets, mult) for _ in range(mu)]
    return graph.add_edges(pairs, vertices=[z]), sets


def check_dII(
    graph: Multigraph,
    *,
    mode: str = "auto",
    samples: int = 100,
    seed: int = 0,
    budget: int | None = None,
) -> ConnectivityVerdict:
    """Z3-connectivity of a 5-edge-connected graph with at most seven 5-critical sets.

    ``mode="auto"`` is exhaustive when the boundary count fits the budget and
    sampled otherwise. A failing boundary contradicts the theorem and is
    raised as an internal-consistency error.
    """
    if graph.n < 2 or edge_connectivity(graph) < 5:
        raise PreconditionError("graph is not 5-edge-connected")
    build_dII_apex(graph)
    if mode == "auto":
        budget = default_budget() if budget is None else budget
        mode = "exhaustive" if 3 ** (graph.n - 1) <= budget else "sample"
    verdict = is_z3_connected(graph, mode, samples=samples, seed=seed, budget=budget)
    if not verdict.connected:
        raise InternalConsistencyError(f"boundary {verdict.witness} has no β-orientation")
    return verdict
