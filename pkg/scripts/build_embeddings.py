"""Regenerate the shipped plane embeddings (development helper, needs networkx).

Each graph is relabeled to 0..n-1, edges are sorted, and the rotation at
every vertex is the clockwise neighbor order of a networkx planar embedding.
The written files are then re-read and Euler-checked by flowext itself.
"""

from __future__ import annotations

import argparse
from pathlib import Path

import networkx as nx

from flowext.graphcore import Multigraph
from flowext.io import format_embedding, parse_embedding
from flowext.planardual import RotationSystem, faces

OUT = Path(__file__).resolve().parent.parent / "src" / "flowext" / "data" / "embeddings"


def capped_ring(n: int) -> nx.Graph:
    """n-gon on top, a 2n-ring in the middle, n-gon below; all other faces are pentagons."""
    g = nx.Graph()
    top = [("t", i) for i in range(n)]
    mid = [("m", i) for i in range(2 * n)]
    bot = [("b", i) for i in range(n)]
    nx.add_cycle(g, top)
    nx.add_cycle(g, mid)
    nx.add_cycle(g, bot)
    for i in range(n):
        g.add_edge(top[i], mid[2 * i])
        g.add_edge(bot[i], mid[2 * i + 1])
    return g


def sources() -> dict[str, nx.Graph]:
    tetra = nx.relabel_nodes(nx.complete_graph(4), {0: 2, 1: 0, 2: 3, 3: 1})
    return {
        "triangle": nx.cycle_graph(3),
        "k4": nx.complete_graph(4),
        "tetrahedron": tetra,
        "cube": nx.hypercube_graph(3),
        "octahedron": nx.octahedral_graph(),
        "dodecahedron": nx.dodecahedral_graph(),
        "icosahedron": nx.icosahedral_graph(),
        "fullerene_c24": capped_ring(6),
        "fullerene_c28": capped_ring(7),
        "grid_3x4": nx.grid_2d_graph(3, 4),
        "prism_5": nx.circular_ladder_graph(5),
        "wheel_5": nx.wheel_graph(6),
    }


def to_embedding(g: nx.Graph) -> tuple[Multigraph, RotationSystem]:
    g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    ok, emb = nx.check_planarity(g)
    if not ok:
        raise ValueError("graph is not planar")
    pairs = sorted((min(u, v), max(u, v)) for u, v in g.edges())
    graph = Multigraph.from_pairs(g.number_of_nodes(), pairs)
    eid = {p: i for i, p in enumerate(pairs)}
    rot = {}
    for v in graph.vertices:
        ends = []
        for w in emb.neighbors_cw_order(v):
            e = eid[(min(v, w), max(v, w))]
            ends.append((e, "a" if graph.edge(e).a == v else "b"))
        rot[v] = ends
    return graph, RotationSystem.build(graph, rot)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, g in sources().items():
        graph, rot = to_embedding(g)
        text = f"# {name}\n" + format_embedding(graph, rot)
        g2, r2 = parse_embedding(text, name)
        print(f"{name}: n={g2.n} m={g2.m} faces={len(faces(r2, g2))}")
        (args.out / f"{name}.emb").write_text(text)


if __name__ == "__main__":
    main()
