"""Deterministic random and curated graph corpora.

Everything is driven by ``random.Random(seed)``, so a seed fixes the corpus
exactly; ``write_corpus`` produces byte-identical files for equal seeds.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from .families import complete_graph, digon, joined_cliques, single_edge, triangle
from .gadgets import W
from .graphcore import Multigraph, edge_connectivity
from .io import format_graph
from .orient import FORWARD, REVERSE

DEFAULT_SEED = 20240601
RANDOM_COUNT = 240


def random_multigraph(rng: random.Random, max_vertices: int = 6, max_edges: int = 12) -> Multigraph:
    n = rng.randint(2, max_vertices)
    m = rng.randint(1, max_edges)
    pairs = [tuple(rng.sample(range(n), 2)) for _ in range(m)]
    return Multigraph.from_pairs(n, pairs)


def random_multigraphs(seed: int, count: int = RANDOM_COUNT, max_vertices: int = 6, max_edges: int = 12) -> list[Multigraph]:
    rng = random.Random(seed)
    return [random_multigraph(rng, max_vertices, max_edges) for _ in range(count)]


def random_boundary_for(graph: Multigraph, rng: random.Random) -> dict[int, int]:
    head = [rng.randrange(3) for _ in graph.vertices[:-1]]
    return dict(zip(graph.vertices, head + [(-sum(head)) % 3]))


def _grow_until(rng: random.Random, n: int, pairs: list[tuple[int, int]], k: int, pool: list[int], cap: int) -> Multigraph:
    """Add random edges among ``pool`` (multiplicity <= cap) until k-edge-connected."""
    g = Multigraph.from_pairs(n, pairs)
    while edge_connectivity(g) < k:
        low = [v for v in pool if g.degree(v) < k] or pool
        u = rng.choice(low)
        choices = [w for w in pool if w != u and g.multiplicity(u, w) < cap]
        if not choices:
            choices = [w for w in pool if w != u]
        w = rng.choice(choices)
        pairs.append((min(u, w), max(u, w)))
        g = Multigraph.from_pairs(n, pairs)
    return g


def random_five_connected(rng: random.Random, n: int) -> tuple[Multigraph, int]:
    """A 5-edge-connected multigraph on n vertices whose vertex 0 has degree exactly 5."""
    others = list(range(1, n))
    star = rng.sample(others, 5) if n > 5 else [others[i % len(others)] for i in range(5)]
    pairs = [(0, v) for v in star]
    return _grow_until(rng, n, pairs, 5, others, 2), 0


def random_six_connected(rng: random.Random, n: int, z_degree: int) -> tuple[Multigraph, int]:
    """A 6-edge-connected multigraph on n <= 9 vertices whose vertex 0 has degree ``z_degree``."""
    others = list(range(1, n))
    star = [others[i % len(others)] for i in range(z_degree)]
    rng.shuffle(star)
    pairs = [(0, v) for v in star]
    return _grow_until(rng, n, pairs, 6, others, 3), 0


@dataclass
class LTWZInstance:
    name: str
    graph: Multigraph
    beta: dict[int, int]
    z: int
    preorientation: dict[int, int]


def _preorient_star(graph: Multigraph, z: int, outs: int, rng: random.Random) -> dict[int, int]:
    star = sorted(e.id for e in graph.incident[z])
    chosen = set(rng.sample(star, outs))
    pre = {}
    for eid in star:
        e = graph.edge(eid)
        tail_is_z = eid in chosen
        pre[eid] = FORWARD if (e.a == z) == tail_is_z else REVERSE
    return pre


def k7_instance() -> LTWZInstance:
    """K7 with β(0)=1, β(1)=2 and ∂(0) oriented five out, one in."""
    g = complete_graph(7)
    beta = {v: 0 for v in g.vertices}
    beta[0], beta[1] = 1, 2
    star = sorted(e.id for e in g.incident[0])
    pre = {eid: (FORWARD if i < 5 else REVERSE) for i, eid in enumerate(star)}
    return LTWZInstance("k7", g, beta, 0, pre)


def ltwz_instances(seed: int, count: int = 110) -> list[LTWZInstance]:
    """K7 variants plus random 6-edge-connected graphs with admissible (β, z, D_z).

    With every cut of size >= 6, the cut hypothesis holds automatically; z
    gets degree 6 with β(z) != 0 or degree 7 with β(z) = 0 so that
    d(z) <= 4 + |τ(z)|.
    """
    rng = random.Random(seed)
    out = [k7_instance()]
    g7 = complete_graph(7)
    for i in range(9):
        beta = random_boundary_for(g7, rng)
        if beta[0] == 0:
            beta[0], beta[1] = 1, (beta[1] - 1) % 3
        outs = rng.choice([k for k in range(7) if (2 * k - 6 - beta[0]) % 3 == 0])
        out.append(LTWZInstance(f"k7-{i}", g7, beta, 0, _preorient_star(g7, 0, outs, rng)))
    while len(out) < count:
        n = rng.randint(4, 9)
        dz = rng.choice((6, 7))
        g, z = random_six_connected(rng, n, dz)
        beta = random_boundary_for(g, rng)
        want = (rng.randint(1, 2) if dz == 6 else 0)
        shift = (want - beta[z]) % 3
        beta[z] = want
        other = g.vertices[-1]
        beta[other] = (beta[other] - shift) % 3
        outs = [k for k in range(dz + 1) if (2 * k - dz - want) % 3 == 0]
        out.append(LTWZInstance(f"rand6-{len(out)}", g, beta, z, _preorient_star(g, z, rng.choice(outs), rng)))
    return out


def curated() -> dict[str, Multigraph]:
    return {
        "k4": complete_graph(4),
        "k5": complete_graph(5),
        "k6": complete_graph(6),
        "k7": complete_graph(7),
        "w": W,
        "digon": digon(),
        "triangle": triangle(),
        "single_edge": single_edge(),
        "two_k6_join5": joined_cliques(6, 5),
        "two_k7_join4": joined_cliques(7, 4),
        "two_k7_join5": joined_cliques(7, 5),
    }


def five_connected_graphs(seed: int, count: int = 2, sizes=(7, 8)) -> list[tuple[Multigraph, int]]:
    rng = random.Random(seed)
    return [random_five_connected(rng, sizes[i % len(sizes)]) for i in range(count)]


def write_corpus(seed: int, out_dir, count: int = RANDOM_COUNT) -> list[Path]:
    """Write curated and random graphs plus a manifest; returns the written paths."""
    out = Path(out_dir)
    written = []

    def put(rel: str, text: str) -> None:
        path = out / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        written.append(path)

    for name, g in curated().items():
        put(f"curated/{name}.graph", format_graph(g))
    for i, g in enumerate(random_multigraphs(seed, count)):
        put(f"random/r{i:04d}.graph", format_graph(g))
    for i, (g, x) in enumerate(five_connected_graphs(seed + 1, 4)):
        put(f"five_connected/f{i:02d}.graph", f"# 5-vertex: {x}\n" + format_graph(g))
    rng = random.Random(seed + 2)
    for i in range(8):
        g, _ = random_six_connected(rng, rng.randint(4, 9), rng.choice((6, 7)))
        put(f"six_connected/s{i:02d}.graph", format_graph(g))
    manifest = {"seed": seed, "files": sorted(str(p.relative_to(out)) for p in written)}
    put("manifest.json", json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return written
