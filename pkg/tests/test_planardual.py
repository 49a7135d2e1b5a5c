import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flowext.errors import InternalConsistencyError, PreconditionError
from flowext.families import complete_graph
from flowext.graphcore import Multigraph, canonical_form, edge_connectivity
from flowext.orient import is_beta_orientation, is_mod3_orientable
from flowext.planardual import (
    EMBEDDING_NAMES,
    DualityVerdict,
    RotationSystem,
    chromatic_3,
    dual,
    duality_check,
    embedding_corpus,
    faces,
    girth,
    is_proper_coloring,
    load_embedding,
)


def _rotation_from_nx(graph: Multigraph) -> RotationSystem:
    """Plane rotation from networkx's embedding; an independent source of embeddings."""
    ng = nx.Graph(list(graph.pairs()))
    ng.add_nodes_from(graph.vertices)
    ok, emb = nx.check_planarity(ng)
    assert ok
    dart = {}
    for e in graph.edges:
        dart[e.a, e.b] = (e.id, "a")
        dart[e.b, e.a] = (e.id, "b")
    return RotationSystem.build(graph, {v: [dart[v, w] for w in emb.neighbors_cw_order(v)] for v in graph.vertices})


def _brute_3_colorable(graph: Multigraph) -> bool:
    for colors in itertools.product(range(3), repeat=graph.n):
        c = dict(zip(graph.vertices, colors))
        if all(c[e.a] != c[e.b] for e in graph.edges):
            return True
    return False


# -- faces ------------------------------------------------------------------------


def test_face_counts():
    g, rot = load_embedding("triangle")
    assert len(faces(rot, g)) == 2
    g, rot = load_embedding("cube")
    assert len(faces(rot, g)) == 6
    assert sorted(len(w) for w in faces(rot, g)) == [4] * 6


def test_k5_has_no_plane_rotation():
    g = complete_graph(5)
    rot = {v: [] for v in g.vertices}
    for e in g.edges:
        rot[e.a].append((e.id, "a"))
        rot[e.b].append((e.id, "b"))
    with pytest.raises(PreconditionError, match="not genus 0"):
        faces(RotationSystem.build(g, rot), g)
    for perm in itertools.islice(itertools.permutations(rot[0]), 24):
        rot[0] = list(perm)
        with pytest.raises(PreconditionError):
            faces(RotationSystem.build(g, rot), g)


def test_rotation_validation():
    g = Multigraph.from_pairs(2, [(0, 1)])
    with pytest.raises(PreconditionError):
        RotationSystem.build(g, {0: [(0, "a")]})
    with pytest.raises(PreconditionError):
        RotationSystem.build(g, {0: [(0, "b")], 1: [(0, "a")]})
    with pytest.raises(PreconditionError):
        RotationSystem.build(g, {0: [(0, "a"), (0, "a")], 1: [(0, "b")]})
    with pytest.raises(PreconditionError):
        RotationSystem.build(g, {0: [(0, "a")], 1: [(0, "b")], 5: []})
    with pytest.raises(PreconditionError):
        RotationSystem.build(g, {0: [(0, "c")], 1: [(0, "b")]})


def test_disconnected_graph_rejected():
    g = Multigraph.from_pairs(4, [(0, 1), (2, 3)])
    rot = RotationSystem.build(g, {0: [(0, "a")], 1: [(0, "b")], 2: [(1, "a")], 3: [(1, "b")]})
    with pytest.raises(PreconditionError):
        faces(rot, g)


# -- duals ------------------------------------------------------------------------


def test_cube_dual_is_octahedron():
    g, rot = load_embedding("cube")
    oct_g, _ = load_embedding("octahedron")
    assert canonical_form(dual(rot, g).graph) == canonical_form(oct_g)


def test_tetrahedron_is_self_dual():
    for name in ("tetrahedron", "k4"):
        g, rot = load_embedding(name)
        assert canonical_form(dual(rot, g).graph) == canonical_form(g)


def test_triangle_dual_is_triple_edge():
    g, rot = load_embedding("triangle")
    d = dual(rot, g).graph
    assert d.n == 2 and d.m == 3 and d.multiplicity(0, 1) == 3


def test_dual_keeps_edge_ids_and_face_map():
    g, rot = load_embedding("dodecahedron")
    d = dual(rot, g)
    assert sorted(e.id for e in d.graph.edges) == sorted(e.id for e in g.edges)
    for e in g.edges:
        de = d.graph.edge(d.dual_edge(e.id))
        assert {de.a, de.b} == {d.face_of_dart[(e.id, "a")], d.face_of_dart[(e.id, "b")]}
    for i, walk in enumerate(d.faces):
        assert d.face_of(i) == walk and d.graph.degree(i) == len(walk)


def test_bridge_rejected():
    g = Multigraph.from_pairs(2, [(0, 1)])
    rot = RotationSystem.build(g, {0: [(0, "a")], 1: [(0, "b")]})
    assert len(faces(rot, g)) == 1
    with pytest.raises(PreconditionError, match="bridge"):
        dual(rot, g)
    loose = dual(rot, g, strict=False)
    assert loose.bridges == (0,) and loose.graph.m == 0
    with pytest.raises(PreconditionError):
        loose.dual_edge(0)
    with pytest.raises(PreconditionError):
        duality_check(rot, g)


@pytest.mark.parametrize("name", EMBEDDING_NAMES)
def test_corpus_euler_and_double_dual(name):
    g, rot = load_embedding(name)
    fs = faces(rot, g)
    assert g.n - g.m + len(fs) == 2
    d = dual(rot, g)
    assert d.graph.m == g.m and d.graph.n == len(fs)
    dd = dual(d.rotation, d.graph)
    assert dd.graph.n == g.n
    assert canonical_form(dd.graph) == canonical_form(g)


# -- coloring and duality ----------------------------------------------------------


def test_coloring_examples():
    assert chromatic_3(complete_graph(4)) is None
    for name in ("dodecahedron", "octahedron"):
        g, _ = load_embedding(name)
        c = chromatic_3(g)
        assert c is not None and is_proper_coloring(g, c) and set(c.values()) <= {0, 1, 2}


def test_coloring_ignores_multiplicity():
    g = Multigraph.from_pairs(3, [(0, 1), (0, 1), (1, 2), (2, 0), (2, 0)])
    c = chromatic_3(g)
    assert c is not None and is_proper_coloring(g, c)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), max_size=16))
def test_coloring_matches_brute_force(n, raw):
    pairs = [(a % n, b % n) for a, b in raw if a % n != b % n]
    g = Multigraph.from_pairs(n, pairs)
    c = chromatic_3(g)
    assert (c is not None) == _brute_3_colorable(g)
    if c is not None:
        assert is_proper_coloring(g, c)


def test_duality_examples():
    g, rot = load_embedding("k4")
    v = duality_check(rot, g)
    assert (v.orientable, v.colorable) == (False, False)
    g, rot = load_embedding("cube")
    v = duality_check(rot, g)
    assert (v.orientable, v.colorable) == (True, True)
    assert is_beta_orientation(v.orientation, {})
    g, rot = load_embedding("icosahedron")
    assert duality_check(rot, g).holds


def test_verdict_holds_flag():
    assert DualityVerdict(True, True, None, None).holds
    assert not DualityVerdict(True, False, None, None).holds


def test_full_corpus_duality_and_girth_evidence():
    corpus = embedding_corpus()
    assert len(corpus) >= 10
    triangle_free = 0
    for name, (g, rot) in corpus.items():
        v = duality_check(rot, g)
        assert v.holds, name
        assert v.orientable == is_mod3_orientable(g)
        if girth(g) >= 4:
            triangle_free += 1
            assert chromatic_3(g) is not None, name
    assert triangle_free >= 3
    assert sum(1 for g, _ in corpus.values() if girth(g) >= 5) >= 3


def test_girth_examples():
    assert girth(load_embedding("cube")[0]) == 4
    assert girth(load_embedding("dodecahedron")[0]) == 5
    assert girth(load_embedding("triangle")[0]) == 3
    assert girth(Multigraph.from_pairs(2, [(0, 1), (0, 1)])) == 2
    assert girth(Multigraph.from_pairs(3, [(0, 1), (1, 2)])) == float("inf")


def test_girth_matches_networkx():
    for name in EMBEDDING_NAMES:
        g, _ = load_embedding(name)
        ng = nx.Graph(list(g.pairs()))
        assert girth(g) == nx.girth(ng), name


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 8), st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), min_size=3, max_size=18))
def test_random_plane_graphs(n, raw):
    pairs = sorted({(min(a % n, b % n), max(a % n, b % n)) for a, b in raw if a % n != b % n})
    g = Multigraph.from_pairs(n, pairs)
    ng = nx.Graph(pairs)
    ng.add_nodes_from(range(n))
    if not nx.is_connected(ng) or not nx.check_planarity(ng)[0]:
        return
    rot = _rotation_from_nx(g)
    fs = faces(rot, g)
    assert n - g.m + len(fs) == 2
    d = dual(rot, g, strict=False)
    assert len(d.bridges) == sum(1 for _ in nx.bridges(ng))
    if not d.bridges:
        assert edge_connectivity(g) >= 2
        v = duality_check(rot, g)
        assert v.holds


def test_duality_mismatch_is_an_internal_error(monkeypatch):
    import flowext.planardual as pd

    g, rot = load_embedding("cube")
    monkeypatch.setattr(pd, "chromatic_3", lambda graph: None)
    with pytest.raises(InternalConsistencyError):
        pd.duality_check(rot, g)
