"""Text formats for graphs, boundaries, pre-orientations and embeddings.

Graph files are line oriented with ``#`` comments::

    vertices 4
    edge 0 1
    edge 0 1      # a parallel edge

Vertices are 0..n-1 and edges get identifiers 0, 1, ... in file order.
Boundary files hold ``beta <v> <value>`` lines, partial orientations hold
``arc <u> <v> <k>`` lines (the k-th edge joining u and v, counted from 0 in
file order, directed u -> v), and embedding files append
``rot <v> <end> <end> ...`` lines to a graph block, each end written as
``<edge-id>a`` or ``<edge-id>b``.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Iterator

from .errors import ParseError, PreconditionError
from .graphcore import Multigraph
from .orient import FORWARD, REVERSE, Orientation


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield no, body


def _int(tok: str, no: int, source: str | None) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", no, source) from None


def digest(text: str | bytes) -> str:
    data = text.encode() if isinstance(text, str) else text
    return hashlib.sha256(data).hexdigest()


# -- graphs ---------------------------------------------------------------


def _parse_graph_lines(lines, source: str | None, extra=()) -> tuple[Multigraph, list[tuple[int, list[str]]]]:
    n = None
    pairs: list[tuple[int, int]] = []
    rest = []
    for no, tok in lines:
        key = tok[0]
        if key == "vertices":
            if n is not None:
                raise ParseError("duplicate 'vertices' header", no, source)
            if len(tok) != 2:
                raise ParseError("usage: vertices <n>", no, source)
            n = _int(tok[1], no, source)
            if n < 0:
                raise ParseError("vertex count must be nonnegative", no, source)
        elif key == "edge":
            if n is None:
                raise ParseError("'edge' before the 'vertices' header", no, source)
            if len(tok) != 3:
                raise ParseError("usage: edge <u> <v>", no, source)
            u, v = _int(tok[1], no, source), _int(tok[2], no, source)
            for w in (u, v):
                if not 0 <= w < n:
                    raise ParseError(f"vertex {w} out of range 0..{n - 1}", no, source)
            if u == v:
                raise ParseError(f"loop at vertex {u}", no, source)
            pairs.append((u, v))
        elif key in extra:
            rest.append((no, tok))
        else:
            raise ParseError(f"unknown directive {key!r}", no, source)
    if n is None:
        raise ParseError("missing 'vertices' header", None, source)
    return Multigraph.from_pairs(n, pairs), rest


def parse_graph(text: str, source: str | None = None) -> Multigraph:
    return _parse_graph_lines(_lines(text), source)[0]


def _check_plain(graph: Multigraph) -> None:
    if graph.vertices != tuple(range(graph.n)):
        raise PreconditionError("graph files need vertices 0..n-1; relabel first")
    if tuple(e.id for e in graph.edges) != tuple(range(graph.m)):
        raise PreconditionError("graph files need edge ids 0..m-1 in order; relabel first")


def format_graph(graph: Multigraph) -> str:
    _check_plain(graph)
    out = [f"vertices {graph.n}"]
    out += [f"edge {e.a} {e.b}" for e in graph.edges]
    return "\n".join(out) + "\n"


def compact(graph: Multigraph) -> Multigraph:
    """Relabel vertices to 0..n-1 and edges to 0..m-1, both in current order."""
    idx = graph.index
    return Multigraph.from_pairs(graph.n, [(idx[e.a], idx[e.b]) for e in graph.edges])


def read_graph(path) -> Multigraph:
    return parse_graph(Path(path).read_text(), str(path))


def write_graph(graph: Multigraph, path) -> None:
    Path(path).write_text(format_graph(graph))


# -- boundaries and pre-orientations ----------------------------------------


def parse_boundary(text: str, graph: Multigraph, source: str | None = None) -> dict[int, int]:
    beta: dict[int, int] = {}
    for no, tok in _lines(text):
        if tok[0] != "beta" or len(tok) != 3:
            raise ParseError("usage: beta <vertex> <value>", no, source)
        v, val = _int(tok[1], no, source), _int(tok[2], no, source)
        if v not in graph.index:
            raise ParseError(f"unknown vertex {v}", no, source)
        if not 0 <= val <= 2:
            raise ParseError(f"boundary value {val} outside 0..2", no, source)
        if v in beta:
            raise ParseError(f"vertex {v} listed twice", no, source)
        beta[v] = val
    if sum(beta.values()) % 3:
        raise ParseError("boundary values do not sum to 0 mod 3", None, source)
    return {v: beta.get(v, 0) for v in graph.vertices}


def format_boundary(beta: dict[int, int]) -> str:
    return "".join(f"beta {v} {b % 3}\n" for v, b in sorted(beta.items()) if b % 3)


def _occurrences(graph: Multigraph) -> dict[tuple[int, int], list[int]]:
    occ: dict[tuple[int, int], list[int]] = {}
    for e in graph.edges:
        occ.setdefault((min(e.a, e.b), max(e.a, e.b)), []).append(e.id)
    return occ


def parse_preorientation(text: str, graph: Multigraph, source: str | None = None) -> dict[int, int]:
    occ = _occurrences(graph)
    out: dict[int, int] = {}
    for no, tok in _lines(text):
        if tok[0] != "arc" or len(tok) != 4:
            raise ParseError("usage: arc <u> <v> <occurrence>", no, source)
        u, v, k = (_int(t, no, source) for t in tok[1:])
        ids = occ.get((min(u, v), max(u, v)), [])
        if not 0 <= k < len(ids):
            raise ParseError(f"no edge #{k} between {u} and {v}", no, source)
        eid = ids[k]
        if eid in out:
            raise ParseError(f"edge {eid} oriented twice", no, source)
        out[eid] = FORWARD if graph.edge(eid).a == u else REVERSE
    return out


def format_preorientation(graph: Multigraph, partial: dict[int, int]) -> str:
    rank = {eid: k for ids in _occurrences(graph).values() for k, eid in enumerate(ids)}
    lines = []
    for e in graph.edges:
        if e.id in partial:
            u, v = (e.a, e.b) if partial[e.id] == FORWARD else (e.b, e.a)
            lines.append(f"arc {u} {v} {rank[e.id]}\n")
    return "".join(lines)


def orientation_to_dict(orientation: Orientation) -> dict:
    return {"arcs": [[eid, t, h] for eid, t, h in orientation.arcs()]}


# -- embeddings -----------------------------------------------------------


def parse_embedding(text: str, source: str | None = None):
    from .planardual import RotationSystem

    graph, rest = _parse_graph_lines(_lines(text), source, extra=("rot",))
    rotation: dict[int, tuple[tuple[int, str], ...]] = {}
    for no, tok in rest:
        if len(tok) < 2:
            raise ParseError("usage: rot <vertex> <end> ...", no, source)
        v = _int(tok[1], no, source)
        if v not in graph.index:
            raise ParseError(f"unknown vertex {v}", no, source)
        if v in rotation:
            raise ParseError(f"rotation for vertex {v} given twice", no, source)
        ends = []
        for t in tok[2:]:
            if len(t) < 2 or t[-1] not in "ab":
                raise ParseError(f"bad edge end {t!r}; expected <id>a or <id>b", no, source)
            ends.append((_int(t[:-1], no, source), t[-1]))
        rotation[v] = tuple(ends)
    try:
        return graph, RotationSystem.build(graph, rotation)
    except PreconditionError as exc:
        raise ParseError(str(exc), None, source) from None


def format_embedding(graph: Multigraph, rotation) -> str:
    body = [format_graph(graph)]
    for v in graph.vertices:
        ends = " ".join(f"{eid}{tag}" for eid, tag in rotation.rotation[v])
        body.append(f"rot {v} {ends}".rstrip() + "\n")
    return "".join(body)


def read_embedding(path):
    return parse_embedding(Path(path).read_text(), str(path))


# -- provenance -----------------------------------------------------------


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
