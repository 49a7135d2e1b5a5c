"""The gadget W, six-copy replacement graphs H, and the extraction pipelines.

W has vertices 0..5 (v0 is the hub). Its edges are the five spokes (0, i),
i = 1..5, with identifiers 0..4, followed by the doubled rim cycle
1-2-3-4-5-1 with identifiers 5..14.

An H graph replaces every vertex of W by a copy of G - x, where x is a
5-vertex of G. The five edges of ∂(x) are numbered as *positions* 0..4; a
W-edge end at v_j is attached in copy j at the vertex playing the role of
the neighbor at some position. The W edges come first in H, keeping their
identifiers 0..14; copy i then owns H vertices i*n'..(i+1)*n'-1 and H edges
15 + i*m'..15 + (i+1)*m'-1, where G - x has n' vertices and m' edges.
Putting W first lets the solver settle the gadget before the copies, which
then decouple.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InternalConsistencyError, PreconditionError
from .graphcore import Multigraph, apex_augment, contract, critical_sets, edge_connectivity
from .orient import (
    FORWARD,
    Orientation,
    check_boundary,
    check_partial,
    deficiency,
    deficiency_blocks,
    is_beta_orientation,
    is_mod3_orientation,
    minor_edge,
    orient_edge,
    orientation_from_bits,
    reverse,
)

log = logging.getLogger(__name__)

HUB = 0
SPOKES = (0, 1, 2, 3, 4)  # W edge id of spoke v0 v_k is k - 1


def build_w() -> Multigraph:
    pairs = [(HUB, i) for i in range(1, 6)]
    for i in range(1, 6):
        j = i % 5 + 1
        pairs += [(i, j), (i, j)]
    return Multigraph.from_pairs(6, pairs)


W = build_w()


# -- exhaustive checks on W ---------------------------------------------------


@dataclass
class WScan:
    holds: bool
    scanned: int
    compliant: int
    violations: list[dict[int, int]]

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "scanned": self.scanned,
            "compliant": self.compliant,
            "violations": [{str(k): v for k, v in d.items()} for d in self.violations],
        }


def _compliant_orientations(beta: dict[int, int]) -> tuple[int, list[Orientation]]:
    target = np.array([beta.get(v, 0) for v in W.vertices], dtype=np.int16)
    scanned = 0
    found = []
    for codes, defs in deficiency_blocks(W):
        scanned += len(codes)
        ok = np.all((defs - target) % 3 == 0, axis=1)
        found.extend(orientation_from_bits(W, c) for c in codes[ok].tolist())
    return scanned, found


def scan_w_minor_edge() -> WScan:
    """Scan all 2^15 orientations of W; in every mod 3-orientation some spoke
    v0 v_k must be the minor-edge at v_k, and every vertex must split 4-1."""
    scanned, found = _compliant_orientations({})
    violations = []
    for d in found:
        split_ok = all(abs(deficiency(d, v)) == 3 for v in W.vertices)
        spoke_ok = any(minor_edge(d, k) == SPOKES[k - 1] for k in range(1, 6))
        if not (split_ok and spoke_ok):
            violations.append(d.directions)
    return WScan(bool(found) and not violations, scanned, len(found), violations)


def scan_w_sink() -> WScan:
    """Scan all orientations of W under β ≡ 1: every β-orientation has a vertex
    of in-degree 5, and its deficiencies are five 1's and one -5."""
    beta = {v: 1 for v in W.vertices}
    scanned, found = _compliant_orientations(beta)
    violations = []
    for d in found:
        defs = [deficiency(d, v) for v in W.vertices]
        sink = any(d.in_degree(v) == 5 for v in W.vertices)
        if not (sink and sorted(defs) == [-5, 1, 1, 1, 1, 1]):
            violations.append(d.directions)
    return WScan(bool(found) and not violations, scanned, len(found), violations)


def check_w_minor_edge_property() -> bool:
    return scan_w_minor_edge().holds


def check_w_sink_property() -> bool:
    return scan_w_sink().holds


# -- replacement graphs ------------------------------------------------


@dataclass(frozen=True)
class WEdgeImage:
    w_edge: int
    h_edge: int
    #: (W vertex, position label) for the W endpoints a and b, in W's order.
    ends: tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class HProvenance:
    """How an H graph was assembled from six copies of G - x and the edges of W."""

    removed: int
    positions: tuple[int, ...]
    attachments: tuple[int, ...]
    copy_vertices: tuple[dict[int, int], ...]
    copy_edges: tuple[dict[int, int], ...]
    w_edges: tuple[WEdgeImage, ...]
    shifts: tuple[int, ...]

    @property
    def spokes(self) -> tuple[int, ...]:
        """H edge ids of the spokes v0 v_k, k = 1..5."""
        return tuple(self.w_edges[s].h_edge for s in SPOKES)

    def copy_of(self, i: int) -> frozenset[int]:
        return frozenset(self.copy_vertices[i].values())

    def to_dict(self) -> dict:
        return {
            "removed": self.removed,
            "positions": list(self.positions),
            "attachments": list(self.attachments),
            "shifts": list(self.shifts),
            "copies": [
                {
                    "vertices": {str(k): v for k, v in cv.items()},
                    "edges": {str(k): v for k, v in ce.items()},
                }
                for cv, ce in zip(self.copy_vertices, self.copy_edges)
            ],
            "w_edges": [
                {"w_edge": w.w_edge, "h_edge": w.h_edge, "ends": [list(w.ends[0]), list(w.ends[1])]}
                for w in self.w_edges
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HProvenance":
        return cls(
            removed=int(data["removed"]),
            positions=tuple(data["positions"]),
            attachments=tuple(data["attachments"]),
            copy_vertices=tuple({int(k): v for k, v in c["vertices"].items()} for c in data["copies"]),
            copy_edges=tuple({int(k): v for k, v in c["edges"].items()} for c in data["copies"]),
            w_edges=tuple(
                WEdgeImage(w["w_edge"], w["h_edge"], (tuple(w["ends"][0]), tuple(w["ends"][1])))
                for w in data["w_edges"]
            ),
            shifts=tuple(data["shifts"]),
        )


def _end_labels(shifts: Sequence[int]) -> dict[tuple[int, int], int]:
    """Position label for every (W edge id, W vertex) end.

    At the hub, spoke v0 v_i sits at position i-1 (rotated by shifts[0] mod 5).
    At v_j the spoke sits at position 0 and the four rim ends, sorted by
    (neighbor, edge id), take positions 1..4 rotated by shifts[j] mod 4.
    """
    labels = {}
    for i in range(1, 6):
        labels[SPOKES[i - 1], HUB] = (i - 1 + shifts[0]) % 5
    for j in range(1, 6):
        labels[SPOKES[j - 1], j] = 0
        rim = sorted((e.other(j), e.id) for e in W.incident[j] if e.id not in SPOKES)
        for rank, (_, eid) in enumerate(rim):
            labels[eid, j] = 1 + (rank + shifts[j]) % 4
    return labels


def _assemble(graph: Multigraph, x: int, positions: Sequence[int], shifts: Sequence[int]) -> tuple[Multigraph, HProvenance]:
    rest = graph.delete_vertex(x)
    attachments = tuple(graph.edge(eid).other(x) for eid in positions)
    nr, mr = rest.n, rest.m
    vrank = {v: r for r, v in enumerate(rest.vertices)}
    erank = {e.id: r for r, e in enumerate(rest.edges)}
    copy_vertices = tuple({v: i * nr + r for v, r in vrank.items()} for i in range(6))
    copy_edges = tuple({e: W.m + i * mr + r for e, r in erank.items()} for i in range(6))

    edges = []
    labels = _end_labels(shifts)
    images = []
    for we in W.edges:
        la, lb = labels[we.id, we.a], labels[we.id, we.b]
        hid = we.id
        edges.append((hid, copy_vertices[we.a][attachments[la]], copy_vertices[we.b][attachments[lb]]))
        images.append(WEdgeImage(we.id, hid, ((we.a, la), (we.b, lb))))
    for i in range(6):
        cv = copy_vertices[i]
        edges += [(copy_edges[i][e.id], cv[e.a], cv[e.b]) for e in rest.edges]
    h = Multigraph(tuple(range(6 * nr)), tuple(edges))
    prov = HProvenance(x, tuple(positions), attachments, copy_vertices, copy_edges, tuple(images), tuple(shifts))
    return h, prov


def _require_five_vertex(graph: Multigraph, x: int) -> None:
    graph.require(x)
    if graph.degree(x) != 5:
        raise PreconditionError(f"vertex {x} has degree {graph.degree(x)}, not 5")


def _warn_if_not_5_connected(graph: Multigraph) -> None:
    if graph.n >= 2 and edge_connectivity(graph) < 5:
        log.warning("input graph is not 5-edge-connected; H need not be either")


def build_h_3flow(
    graph: Multigraph, x: int, pre: dict[int, int], shifts: Sequence[int] | None = None
) -> tuple[Multigraph, HProvenance]:
    """Six copies of G - x glued along W, with position 0 on the minor-edge of ``pre``.

    ``pre`` must orient exactly ∂(x), 4-1. The remaining four edges of ∂(x)
    take positions 1..4 in edge-id order. Nonzero ``shifts`` rotate the
    attachment positions (the planarity-preserving variant).
    """
    _require_five_vertex(graph, x)
    pre = check_partial(graph, pre)
    star = sorted(e.id for e in graph.incident[x])
    if sorted(pre) != star:
        raise PreconditionError("pre-orientation must decide exactly the edges at the 5-vertex")
    outs = [eid for eid in star if pre[eid] == orient_edge(graph.edge(eid), x)]
    ins = [eid for eid in star if eid not in outs]
    if len(outs) == 4:
        minor = ins[0]
    elif len(ins) == 4:
        minor = outs[0]
    else:
        raise PreconditionError(f"pre-orientation is unbalanced: {len(outs)} out, {len(ins)} in")
    shifts = tuple(shifts) if shifts is not None else (0,) * 6
    if len(shifts) != 6:
        raise PreconditionError("six shifts are required")
    _warn_if_not_5_connected(graph)
    positions = [minor] + [eid for eid in star if eid != minor]
    return _assemble(graph, x, positions, shifts)


def lift_boundary(graph: Multigraph, z: int, beta1: dict[int, int]) -> dict[int, int]:
    """Boundary of G that forces ∂(z) all outward: β(z)=2, β(v)=β1(v) - (#edges zv)."""
    rest = graph.delete_vertex(z)
    b1 = check_boundary(rest, beta1)
    alpha = Counter(e.other(z) for e in graph.incident[z])
    beta = {v: (b1[v] - alpha[v]) % 3 for v in rest.vertices}
    beta[z] = 2
    return check_boundary(graph, beta)


def h_boundary(prov: HProvenance, beta: dict[int, int]) -> dict[int, int]:
    """β* on H: β copied into every copy of G - z."""
    return {hv: beta[v] % 3 for cv in prov.copy_vertices for v, hv in cv.items()}


def build_h_z3(graph: Multigraph, z: int, beta1: dict[int, int]) -> tuple[Multigraph, dict[int, int], HProvenance]:
    """Six copies of G - z glued along W at the neighbors u_1..u_5 of z.

    Returns H, the boundary β* (copy-consistent with the lifted boundary of
    G) and the provenance.
    """
    _require_five_vertex(graph, z)
    beta = lift_boundary(graph, z, beta1)
    _warn_if_not_5_connected(graph)
    positions = sorted(e.id for e in graph.incident[z])
    h, prov = _assemble(graph, z, positions, (0,) * 6)
    beta_star = h_boundary(prov, beta)
    if sum(beta_star.values()) % 3:
        raise InternalConsistencyError("β* does not sum to zero")
    return h, beta_star, prov


def contract_copies(h: Multigraph, orientation: Orientation, prov: HProvenance) -> Orientation:
    """Contract every copy of G - x to a point; the result is an orientation of W."""
    g = h
    for i in range(6):
        g, _ = contract(g, prov.copy_of(i))
    heads = {min(prov.copy_of(i)): i for i in range(6)}
    dirs = {}
    for img in prov.w_edges:
        ce = g.edge(img.h_edge)
        if (heads[ce.a], heads[ce.b]) != (img.ends[0][0], img.ends[1][0]):
            raise InternalConsistencyError(f"contracted edge {img.h_edge} does not land on its W edge")
        dirs[img.w_edge] = orientation.directions[img.h_edge]
    if g.m != W.m:
        raise InternalConsistencyError("contracting the copies did not leave exactly the W edges")
    return Orientation(W, dirs)


def _restrict_to_copy(
    h: Multigraph, orientation: Orientation, prov: HProvenance, graph: Multigraph, k: int
) -> Orientation:
    """Contract everything outside copy k to the removed vertex and read the result on G."""
    x = prov.removed
    outside = frozenset(h.vertices) - prov.copy_of(k)
    gk, _ = contract(h, outside, new_vertex=h.next_vertex_id())
    inv_edges = {hid: gid for gid, hid in prov.copy_edges[k].items()}
    label_at_k = {}
    for img in prov.w_edges:
        for wv, label in img.ends:
            if wv == k:
                label_at_k[img.h_edge] = label
    copy_k = prov.copy_of(k)
    dirs = {}
    for ce in gk.edges:
        tail = ce.a if orientation.directions[ce.id] == FORWARD else ce.b
        if ce.id in inv_edges:
            dirs[inv_edges[ce.id]] = orientation.directions[ce.id]
            continue
        label = label_at_k.get(ce.id)
        if label is None:
            raise InternalConsistencyError(f"edge {ce.id} survives contraction but is not at copy {k}")
        gedge = graph.edge(prov.positions[label])
        inner = ce.a if ce.a in copy_k else ce.b
        if inner != prov.copy_vertices[k][prov.attachments[label]]:
            raise InternalConsistencyError("position bookkeeping mismatch")
        g_tail = prov.attachments[label] if tail in copy_k else x
        dirs[gedge.id] = orient_edge(gedge, g_tail)
    if len(dirs) != graph.m:
        raise InternalConsistencyError("extraction did not cover every edge of G")
    return Orientation(graph, dirs)


def kochol_extract(
    h: Multigraph, orientation: Orientation, prov: HProvenance, graph: Multigraph, x: int, pre: dict[int, int]
) -> Orientation:
    """Turn a mod 3-orientation of H into a mod 3-orientation of G extending ``pre``."""
    if orientation.graph != h or not is_mod3_orientation(orientation):
        raise PreconditionError("orientation is not a mod 3-orientation of H")
    if prov.removed != x:
        raise PreconditionError("provenance was built for a different vertex")
    w_or = contract_copies(h, orientation, prov)
    if not is_mod3_orientation(w_or):
        raise InternalConsistencyError("contracted W orientation is not a mod 3-orientation")
    k = next((k for k in range(1, 6) if minor_edge(w_or, k) == SPOKES[k - 1]), None)
    if k is None:
        raise InternalConsistencyError("no spoke is the minor-edge at its rim vertex")
    dk = _restrict_to_copy(h, orientation, prov, graph, k)
    if not is_mod3_orientation(dk):
        raise InternalConsistencyError("restriction to a copy is not a mod 3-orientation")
    if not dk.agrees_with(pre):
        dk = reverse(dk)
        if not dk.agrees_with(pre):
            raise InternalConsistencyError("neither the restriction nor its reversal agrees with the pre-orientation")
    return dk


def z3_extract(
    h: Multigraph, orientation: Orientation, prov: HProvenance, graph: Multigraph, z: int, beta: dict[int, int]
) -> Orientation:
    """Turn a β*-orientation of H into a β-orientation of G with ∂(z) all outward."""
    beta = check_boundary(graph, beta)
    if prov.removed != z:
        raise PreconditionError("provenance was built for a different vertex")
    beta_star = h_boundary(prov, beta)
    if orientation.graph != h or not is_beta_orientation(orientation, beta_star):
        raise PreconditionError("orientation is not a β*-orientation of H")
    w_or = contract_copies(h, orientation, prov)
    j = next((v for v in W.vertices if w_or.in_degree(v) == 5), None)
    if j is None:
        raise InternalConsistencyError("contracted W has no vertex of in-degree 5")
    dj = _restrict_to_copy(h, orientation, prov, graph, j)
    if deficiency(dj, z) != 5:
        raise InternalConsistencyError("edges at the contracted vertex are not all outward")
    if not is_beta_orientation(dj, beta):
        raise InternalConsistencyError("restriction to a copy is not a β-orientation")
    return dj


# -- reductions ------------------------------------------------------------


def four_cut_reduction(
    graph: Multigraph, side: Iterable[int], d1: Orientation
) -> tuple[Multigraph, dict[int, int]]:
    """Build G3 from G/A^c: one ingoing edge at the contracted vertex becomes two outgoing.

    ``d1`` is a mod 3-orientation of G/A (as returned by ``contract``); the
    cut ∂(A) is read off it. The contracted vertex of A^c gets the id
    ``graph.next_vertex_id()``; the replaced ingoing edge is the one with the
    smallest id and the two new parallel edges get fresh ids.
    """
    side = frozenset(side)
    cut = graph.boundary(side)
    if len(cut) != 4 or not side or side == frozenset(graph.vertices):
        raise PreconditionError("∂(A) is not a 4-cut")
    g1, _ = contract(graph, side)
    if d1.graph != g1:
        raise PreconditionError("d1 must orient G/A")
    if not is_mod3_orientation(d1):
        raise PreconditionError("d1 is not a mod 3-orientation of G/A")
    x = graph.next_vertex_id()
    g2, _ = contract(graph, frozenset(graph.vertices) - side, new_vertex=x)
    pre = {e.id: d1.directions[e.id] for e in cut}
    ingoing = sorted(e.id for e in cut if orient_edge(g2.edge(e.id), x) != pre[e.id])
    if len(ingoing) != 2:
        raise PreconditionError("∂(A) is not oriented 2-in/2-out")
    replaced = g2.edge(ingoing[0])
    inner = replaced.other(x)
    g3 = g2.delete_edges([replaced.id])
    g3 = g3.add_edges([(x, inner), (x, inner)])
    del pre[replaced.id]
    for e in g3.edges[-2:]:
        pre[e.id] = FORWARD
    return g3, pre


def recombine_four_cut(graph: Multigraph, side: Iterable[int], d1: Orientation, d3: Orientation) -> Orientation:
    """Glue D1 (on G/A) with D3 restricted to the edges inside A."""
    side = frozenset(side)
    dirs = {}
    for e in graph.edges:
        if e.a in side and e.b in side:
            dirs[e.id] = d3.directions[e.id]
        else:
            dirs[e.id] = d1.directions[e.id]
    return Orientation(graph, dirs)


def crossing_reduction(graph: Multigraph, e1: int, e2: int, doubled: str = "y2") -> Multigraph:
    """Delete x1x2 and y1y2 and add z with edges zx1, zx2, zy1, zy2, zy2.

    ``doubled="y1"`` doubles zy1 instead. The new vertex is
    ``graph.next_vertex_id()``.
    """
    if e1 == e2:
        raise PreconditionError("the two crossing edges must differ")
    a, b = graph.edge(e1), graph.edge(e2)
    if doubled not in ("y1", "y2"):
        raise PreconditionError("doubled must be 'y1' or 'y2'")
    z = graph.next_vertex_id()
    extra = b.b if doubled == "y2" else b.a
    out = graph.delete_edges([e1, e2])
    return out.add_edges([(z, a.a), (z, a.b), (z, b.a), (z, b.b), (z, extra)], vertices=[z])


def apex_for_four_cuts(graph: Multigraph) -> Multigraph:
    """The degree-5 apex over the 4-critical sets: 6 - t edges into the first, one into each other."""
    sets = critical_sets(graph, 4)
    t = len(sets)
    if not 1 <= t <= 5:
        raise PreconditionError(f"need between 1 and 5 critical sets, found {t}")
    return apex_augment(graph, 4, [6 - t] + [1] * (t - 1), verify=False)
