"""Rotation systems, face tracing, plane duals and 3-coloring.

An edge end (dart) is ``(edge id, "a")`` for the end at ``edge.a`` and
``(edge id, "b")`` for the end at ``edge.b``. A rotation system lists, for
each vertex, the ends at that vertex in cyclic order. Faces are the orbits
of "cross the edge, then take the next end in the rotation there".
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Mapping

from .errors import InternalConsistencyError, PreconditionError
from .graphcore import Multigraph
from .orient import Orientation, find_beta_orientation

Dart = tuple[int, str]


def _flip(d: Dart) -> Dart:
    return (d[0], "b" if d[1] == "a" else "a")


@dataclass(frozen=True)
class RotationSystem:
    rotation: Mapping[int, tuple[Dart, ...]]

    @classmethod
    def build(cls, graph: Multigraph, rotation: Mapping[int, list[Dart] | tuple[Dart, ...]]) -> "RotationSystem":
        """Validate that every end of every edge appears exactly once, at its own vertex."""
        rot = {}
        seen: set[Dart] = set()
        for v in graph.vertices:
            ends = tuple((int(eid), str(tag)) for eid, tag in rotation.get(v, ()))
            for eid, tag in ends:
                if tag not in ("a", "b"):
                    raise PreconditionError(f"edge end tag must be 'a' or 'b', got {tag!r}")
                e = graph.edge(eid)
                if (e.a if tag == "a" else e.b) != v:
                    raise PreconditionError(f"end {eid}{tag} is not at vertex {v}")
                if (eid, tag) in seen:
                    raise PreconditionError(f"end {eid}{tag} appears twice")
                seen.add((eid, tag))
            rot[v] = ends
        extra = set(rotation) - set(graph.vertices)
        if extra:
            raise PreconditionError(f"rotation names unknown vertices {sorted(extra)}")
        if len(seen) != 2 * graph.m:
            raise PreconditionError("rotation system does not cover every edge end")
        return cls(rot)

    def successor(self) -> dict[Dart, Dart]:
        nxt = {}
        for ends in self.rotation.values():
            for i, d in enumerate(ends):
                nxt[d] = ends[(i + 1) % len(ends)]
        return nxt


def _trace(rot: RotationSystem) -> list[tuple[Dart, ...]]:
    nxt = rot.successor()
    seen: set[Dart] = set()
    faces = []
    for v in sorted(rot.rotation):
        for start in rot.rotation[v]:
            if start in seen:
                continue
            walk = []
            d = start
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = nxt[_flip(d)]
            if d != start:
                raise InternalConsistencyError("face traversal is not a permutation")
            faces.append(tuple(walk))
    return faces


def faces(rot: RotationSystem, graph: Multigraph) -> list[tuple[Dart, ...]]:
    """Facial walks, each a tuple of darts leaving successive corners.

    Raises PreconditionError when the embedding is not plane (Euler check).
    """
    rot = RotationSystem.build(graph, rot.rotation)
    if not graph.is_connected():
        raise PreconditionError("graph is not connected")
    walks = _trace(rot)
    if graph.m == 0:
        walks = [()]
    if graph.n - graph.m + len(walks) != 2:
        raise PreconditionError(
            f"not genus 0: V - E + F = {graph.n} - {graph.m} + {len(walks)} != 2"
        )
    return walks


@dataclass(frozen=True)
class DualCorrespondence:
    """Dual graph with dual vertex i = face i and dual edge id = primal edge id.

    ``bridges`` lists primal edges whose two sides lie on the same face;
    they have no dual edge (it would be a loop).
    """

    graph: Multigraph
    rotation: RotationSystem
    faces: tuple[tuple[Dart, ...], ...]
    face_of_dart: Mapping[Dart, int]
    bridges: tuple[int, ...]

    def dual_edge(self, primal_edge: int) -> int:
        if primal_edge in self.bridges:
            raise PreconditionError(f"edge {primal_edge} is a bridge and has no dual edge")
        return primal_edge

    def face_of(self, dual_vertex: int) -> tuple[Dart, ...]:
        return self.faces[dual_vertex]


def dual(rot: RotationSystem, graph: Multigraph, strict: bool = True) -> DualCorrespondence:
    """Plane dual. The dual edge of e joins the face left by end ``a`` to the face left by end ``b``."""
    walks = faces(rot, graph)
    face_of = {d: i for i, w in enumerate(walks) for d in w}
    edges = []
    bridges = []
    for e in graph.edges:
        fa, fb = face_of[(e.id, "a")], face_of[(e.id, "b")]
        if fa == fb:
            bridges.append(e.id)
            continue
        edges.append((e.id, fa, fb))
    if bridges and strict:
        raise PreconditionError(f"bridge {bridges[0]} gives a dual loop")
    g = Multigraph(tuple(range(len(walks))), tuple(edges))
    drot = {i: tuple(d for d in w if d[0] not in bridges) for i, w in enumerate(walks)}
    return DualCorrespondence(g, RotationSystem.build(g, drot), tuple(walks), face_of, tuple(bridges))


def chromatic_3(graph: Multigraph) -> dict[int, int] | None:
    """A proper coloring with colors 0, 1, 2, or None. Parallel edges are irrelevant."""
    nbrs = {v: set(graph.neighbors(v)) for v in graph.vertices}
    # Breadth-first order from each component's first vertex keeps constraints local.
    order: list[int] = []
    placed: set[int] = set()
    for root in graph.vertices:
        if root in placed:
            continue
        queue = [root]
        placed.add(root)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(nbrs[v], key=graph.index.__getitem__):
                if w not in placed:
                    placed.add(w)
                    queue.append(w)
    color: dict[int, int] = {}

    def go(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = {color[w] for w in nbrs[v] if w in color}
        for c in range(3):
            if c not in used:
                color[v] = c
                if go(i + 1):
                    return True
                del color[v]
        return False

    return dict(color) if go(0) else None


def is_proper_coloring(graph: Multigraph, coloring: Mapping[int, int]) -> bool:
    return all(coloring[e.a] != coloring[e.b] for e in graph.edges)


@dataclass(frozen=True)
class DualityVerdict:
    orientable: bool
    colorable: bool
    orientation: Orientation | None
    coloring: dict[int, int] | None

    @property
    def holds(self) -> bool:
        return self.orientable == self.colorable


def duality_check(rot: RotationSystem, graph: Multigraph) -> DualityVerdict:
    """Compare mod 3-orientability of G with 3-colorability of its plane dual.

    The two must agree for a bridgeless plane graph; disagreement raises.
    """
    d = dual(rot, graph, strict=True)
    orientation = find_beta_orientation(graph, {})
    coloring = chromatic_3(d.graph)
    verdict = DualityVerdict(orientation is not None, coloring is not None, orientation, coloring)
    if not verdict.holds:
        raise InternalConsistencyError(
            f"mod 3-orientable={verdict.orientable} but dual 3-colorable={verdict.colorable}"
        )
    return verdict


def girth(graph: Multigraph) -> float:
    """Length of a shortest cycle (2 for parallel edges), inf for forests."""
    if any(w > 1 for w in graph.pair_weights.values()):
        return 2
    best = float("inf")
    for root in graph.vertices:
        dist = {root: 0}
        parent_edge = {root: None}
        queue = [root]
        while queue:
            v = queue.pop(0)
            for e in graph.incident[v]:
                if e.id == parent_edge[v]:
                    continue
                w = e.other(v)
                if w in dist:
                    best = min(best, dist[v] + dist[w] + 1)
                else:
                    dist[w] = dist[v] + 1
                    parent_edge[w] = e.id
                    queue.append(w)
    return best


# -- shipped embeddings ---------------------------------------------------

EMBEDDING_NAMES = (
    "triangle",
    "k4",
    "tetrahedron",
    "cube",
    "octahedron",
    "dodecahedron",
    "icosahedron",
    "fullerene_c24",
    "fullerene_c28",
    "grid_3x4",
    "prism_5",
    "wheel_5",
)


def load_embedding(name: str) -> tuple[Multigraph, RotationSystem]:
    from .io import parse_embedding

    text = resources.files("flowext.data.embeddings").joinpath(f"{name}.emb").read_text()
    return parse_embedding(text, f"{name}.emb")


def embedding_corpus() -> dict[str, tuple[Multigraph, RotationSystem]]:
    return {name: load_embedding(name) for name in EMBEDDING_NAMES}
