import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_count, brute_z3_connected, multigraphs
from flowext.corpus import DEFAULT_SEED, random_multigraphs
from flowext.errors import PreconditionError, ResourceLimitError
from flowext.families import complete_graph, cycle, digon, single_edge, triangle
from flowext.gadgets import HUB, W
from flowext.graphcore import Multigraph, canonical_form
from flowext.groupconn import (
    ConnectivityVerdict,
    HuntStats,
    boundaries,
    find_z3_connected_subgraph,
    hunt_z3_reduced,
    is_m3_extendable_at,
    is_z3_connected,
    is_z3_extendable_at,
    is_z3_reduced,
    m3_extension_failures,
)
from flowext.orient import find_beta_orientation, is_mod3_orientable


# -- connectivity ----------------------------------------------------------------


def test_connectivity_examples():
    assert is_z3_connected(digon()).connected
    v = is_z3_connected(single_edge())
    assert not v.connected and v.witness == {0: 0, 1: 0}
    v = is_z3_connected(triangle())
    assert not v.connected
    assert brute_count(triangle(), v.witness) == 0
    assert brute_count(triangle(), {0: 1, 1: 1, 2: 1}) == 0


def test_verdict_witness_invariant():
    with pytest.raises(PreconditionError):
        ConnectivityVerdict(True, {0: 0}, "exhaustive", "solver")
    with pytest.raises(PreconditionError):
        ConnectivityVerdict(False, None, "exhaustive", "solver")


def test_boundaries_fix_last_vertex():
    bs = list(boundaries(triangle()))
    assert len(bs) == 9
    assert all(sum(b.values()) % 3 == 0 for b in bs)
    assert bs[0] == {0: 0, 1: 0, 2: 0}


def test_exhaustive_budget():
    with pytest.raises(ResourceLimitError):
        is_z3_connected(complete_graph(11))
    with pytest.raises(ResourceLimitError):
        is_z3_connected(complete_graph(5), budget=10)
    with pytest.raises(PreconditionError):
        is_z3_connected(triangle(), mode="guess")
    with pytest.raises(PreconditionError):
        is_z3_connected(triangle(), engine="abacus")


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("FLOWEXT_BUDGET", "5")
    with pytest.raises(ResourceLimitError):
        is_z3_connected(complete_graph(4))


def test_sample_mode_is_labeled_and_reproducible():
    v = is_z3_connected(complete_graph(6), "sample", samples=30, seed=11)
    assert v.connected and v.mode == "sample" and not v.exhaustive
    assert (v.samples, v.seed, v.boundaries_tested) == (30, 11, 30)
    assert v.to_dict()["mode"] == "sample"
    a = is_z3_connected(triangle(), "sample", samples=50, seed=3)
    b = is_z3_connected(triangle(), "sample", samples=50, seed=3)
    assert not a.connected and a.witness == b.witness and a.seed == 3


def test_witness_serializes_with_string_keys():
    d = is_z3_connected(triangle()).to_dict()
    assert d["connected"] is False and set(d["witness"]) == {"0", "1", "2"}


def test_complete_graphs():
    assert not is_z3_connected(complete_graph(4)).connected
    assert is_z3_connected(complete_graph(5)).connected == brute_z3_connected(complete_graph(5))
    assert is_z3_connected(complete_graph(6)).connected


def test_parallel_jobs_agree():
    g = complete_graph(6)
    one = is_z3_connected(g, jobs=1)
    two = is_z3_connected(g, jobs=2)
    assert one.connected == two.connected and one.boundaries_tested == two.boundaries_tested
    g = cycle(6, 2).add_edges([(0, 3)])
    assert is_z3_connected(g, jobs=1).witness == is_z3_connected(g, jobs=3).witness


@settings(max_examples=80, deadline=None)
@given(multigraphs(min_n=1, max_n=5, max_m=10))
def test_engines_agree_with_oracle(g):
    expected = brute_z3_connected(g)
    solver = is_z3_connected(g, engine="solver")
    table = is_z3_connected(g, engine="table")
    assert solver.connected == table.connected == expected
    assert solver.witness == table.witness
    if solver.witness is not None:
        assert brute_count(g, solver.witness) == 0
    else:
        # β ≡ 0 is one of the boundaries
        assert is_mod3_orientable(g)


@settings(max_examples=40, deadline=None)
@given(multigraphs(min_n=2, max_n=6, max_m=12))
def test_low_degree_vertex_blocks_connectivity(g):
    if min(g.degree(v) for v in g.vertices) <= 1:
        assert not is_z3_connected(g).connected


def test_monotonicity_on_corpus():
    rng = random.Random(DEFAULT_SEED)
    checked = 0
    for g in random_multigraphs(DEFAULT_SEED, 120):
        if not is_z3_connected(g, engine="table").connected:
            continue
        checked += 1
        for _ in range(3):
            u, v = rng.sample(g.vertices, 2)
            g = g.add_edges([(u, v)])
            assert is_z3_connected(g, engine="table").connected
    assert checked > 0


# -- extendability ---------------------------------------------------------------


def test_extendable_examples():
    apex = digon().add_edges([(2, 0), (2, 1)], vertices=[2])
    assert is_z3_extendable_at(apex, 2)
    assert is_z3_extendable_at(apex, 2, "direct")
    pendant = triangle().add_edges([(3, 0)], vertices=[3])
    assert not is_z3_extendable_at(pendant, 3)
    assert not is_z3_extendable_at(pendant, 3, "direct")
    # x joins two digons that share no edge: G - x is disconnected
    split = Multigraph.from_pairs(5, [(0, 1), (0, 1), (2, 3), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)])
    assert not is_z3_extendable_at(split, 4)
    assert not is_z3_extendable_at(split, 4, "direct")


def test_extendable_errors():
    with pytest.raises(PreconditionError):
        is_z3_extendable_at(triangle(), 7)
    with pytest.raises(PreconditionError):
        is_z3_extendable_at(triangle(), 0, "psychic")
    with pytest.raises(ResourceLimitError):
        is_z3_extendable_at(complete_graph(6), 0, "direct", limit=10)


def test_deletion_agreement_on_corpus():
    for g in random_multigraphs(DEFAULT_SEED, 60):
        for x in g.vertices:
            assert is_z3_extendable_at(g, x, "direct") == is_z3_extendable_at(g, x, "via_deletion")


@settings(max_examples=40, deadline=None)
@given(multigraphs(min_n=2, max_n=5, max_m=10), st.data())
def test_deletion_agreement_property(g, data):
    x = data.draw(st.sampled_from(g.vertices))
    assert is_z3_extendable_at(g, x, "direct") == is_z3_extendable_at(g, x, "via_deletion")


def test_m3_examples():
    assert not is_m3_extendable_at(complete_graph(4), 0)
    assert is_m3_extendable_at(triangle(), 0)
    assert m3_extension_failures(W, HUB) == []
    assert is_m3_extendable_at(W, HUB)
    with pytest.raises(PreconditionError):
        is_m3_extendable_at(W, 9)


def test_m3_matches_brute_force_on_w():
    star = [e for e in W.edges if HUB in (e.a, e.b)]
    balanced = 0
    for dirs in itertools.product((1, -1), repeat=5):
        if sum(dirs) % 3:
            continue
        balanced += 1
        pre = {e.id: s if e.a == HUB else -s for e, s in zip(star, dirs)}
        assert brute_count(W, {}, pre) > 0
    assert balanced == 10  # the 4-1 and 1-4 splits


# -- reducedness and hunting -------------------------------------------------------


def test_reduced_examples():
    assert is_z3_reduced(complete_graph(4))
    assert not is_z3_reduced(digon())
    assert not is_z3_reduced(complete_graph(6))
    assert find_z3_connected_subgraph(cycle(4, 2)) == frozenset({0, 1})
    with pytest.raises(ResourceLimitError):
        is_z3_reduced(complete_graph(15))


def test_hunt_examples():
    found = hunt_z3_reduced(3, 4)
    assert [canonical_form(g) for g in found] == [canonical_form(complete_graph(4))]
    assert hunt_z3_reduced(5, 6) == []
    with pytest.raises(ResourceLimitError):
        hunt_z3_reduced(3, 9)


def test_hunt_with_multiplicity_prunes_digons():
    stats = HuntStats()
    simple = hunt_z3_reduced(3, 5)
    multi = hunt_z3_reduced(3, 5, simple_only=False, max_multiplicity=2, stats=stats)
    assert [canonical_form(g) for g in multi] == [canonical_form(g) for g in simple]
    assert all(max(g.pair_weights.values()) == 1 for g in multi)
    assert stats.candidates > 0


def test_hunt_min_degree_six_finds_nothing():
    for size in range(2, 8):
        assert hunt_z3_reduced(6, size) == []


def _brute_hunt(min_degree, max_vertices):
    """Every simple graph on up to max_vertices vertices, checked by definition."""
    out = set()
    for n in range(2, max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            chosen = [p for i, p in enumerate(pairs) if mask >> i & 1]
            g = Multigraph.from_pairs(n, chosen)
            if min(g.degree(v) for v in g.vertices) < min_degree:
                continue
            if all(
                not brute_z3_connected(g.induced(side))
                for r in range(2, n + 1)
                for side in itertools.combinations(range(n), r)
            ):
                out.add(canonical_form(g))
    return out


@pytest.mark.parametrize("min_degree,max_vertices", [(2, 5), (3, 5), (1, 4)])
def test_hunt_matches_brute_oracle(min_degree, max_vertices):
    got = hunt_z3_reduced(min_degree, max_vertices)
    forms = [canonical_form(g) for g in got]
    assert len(set(forms)) == len(forms)
    assert forms == sorted(forms)
    assert set(forms) == _brute_hunt(min_degree, max_vertices)


def test_hunt_results_are_reduced():
    for g in hunt_z3_reduced(3, 6):
        assert is_z3_reduced(g)
        assert find_beta_orientation(g, {}) is None or min(g.degree(v) for v in g.vertices) >= 3
