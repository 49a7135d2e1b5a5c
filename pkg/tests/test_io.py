import pytest
from hypothesis import given, settings

from conftest import graph_and_boundary, multigraphs
from flowext.errors import ParseError, PreconditionError
from flowext.families import complete_graph, cycle
from flowext.graphcore import Multigraph
from flowext.io import (
    compact,
    digest,
    format_boundary,
    format_embedding,
    format_graph,
    format_preorientation,
    orientation_to_dict,
    parse_boundary,
    parse_embedding,
    parse_graph,
    parse_preorientation,
    read_embedding,
    read_graph,
    write_graph,
)
from flowext.orient import FORWARD, REVERSE, find_beta_orientation
from flowext.planardual import EMBEDDING_NAMES, faces, load_embedding


def test_parse_with_comments_and_parallel_edges():
    text = "# a digon plus a pendant\nvertices 3\nedge 0 1\nedge 1 0   # parallel\n\nedge 1 2\n"
    g = parse_graph(text)
    assert g.n == 3 and g.m == 3
    assert g.multiplicity(0, 1) == 2
    assert g.edge(1).a == 1 and g.edge(1).b == 0


@settings(max_examples=60, deadline=None)
@given(multigraphs(min_n=1, max_n=7, max_m=14))
def test_graph_round_trip(g):
    assert parse_graph(format_graph(g)) == g


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("edge 0 1\n", 1, "before"),
        ("vertices 2\nedge 0 2\n", 2, "out of range"),
        ("vertices 2\nedge 1 1\n", 2, "loop"),
        ("vertices 2\nedge 0 x\n", 2, "integer"),
        ("vertices 2\nvertices 3\n", 2, "duplicate"),
        ("vertices 2\nnode 0\n", 2, "unknown directive"),
        ("vertices 2\nedge 0\n", 2, "usage"),
        ("vertices -1\n", 1, "nonnegative"),
    ],
)
def test_parse_errors_report_lines(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_graph(text, "g.graph")
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"g.graph:{line}: ")


def test_missing_header():
    with pytest.raises(ParseError) as info:
        parse_graph("# nothing\n")
    assert info.value.line is None


def test_format_requires_plain_labels():
    g = complete_graph(4).delete_vertex(0)
    with pytest.raises(PreconditionError):
        format_graph(g)
    h = compact(g)
    assert h.vertices == (0, 1, 2) and [e.id for e in h.edges] == [0, 1, 2]


def test_file_round_trip(tmp_path):
    g = cycle(5, 2)
    write_graph(g, tmp_path / "c.graph")
    assert read_graph(tmp_path / "c.graph") == g


def test_digest_is_sha256():
    assert digest("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
    assert digest(b"abc") == digest("abc")


# -- boundaries ------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(graph_and_boundary(max_n=6))
def test_boundary_round_trip(gb):
    g, beta = gb
    assert parse_boundary(format_boundary(beta), g) == beta


def test_boundary_errors():
    g = complete_graph(3)
    with pytest.raises(ParseError, match="sum"):
        parse_boundary("beta 0 1\n", g)
    with pytest.raises(ParseError) as info:
        parse_boundary("beta 0 1\nbeta 0 2\n", g)
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_boundary("beta 7 0\n", g)
    with pytest.raises(ParseError):
        parse_boundary("beta 0 3\n", g)
    with pytest.raises(ParseError):
        parse_boundary("b 0 1\n", g)


# -- pre-orientations --------------------------------------------------------------


def test_arc_occurrences_select_parallel_edges():
    g = Multigraph.from_pairs(2, [(0, 1), (1, 0), (0, 1)])
    pre = parse_preorientation("arc 0 1 1\narc 0 1 2\n", g)
    assert pre == {1: REVERSE, 2: FORWARD}
    assert parse_preorientation(format_preorientation(g, pre), g) == pre
    with pytest.raises(ParseError, match="no edge #3"):
        parse_preorientation("arc 0 1 3\n", g)
    with pytest.raises(ParseError, match="twice"):
        parse_preorientation("arc 0 1 0\narc 1 0 0\n", g)


def test_orientation_to_dict_lists_arcs():
    d = find_beta_orientation(complete_graph(3), {})
    data = orientation_to_dict(d)
    assert [a[0] for a in data["arcs"]] == [0, 1, 2]
    for eid, tail, head in data["arcs"]:
        assert d.tail(eid) == tail and d.head(eid) == head


# -- embeddings --------------------------------------------------------------------


@pytest.mark.parametrize("name", EMBEDDING_NAMES)
def test_embedding_round_trip(name, tmp_path):
    g, rot = load_embedding(name)
    path = tmp_path / f"{name}.emb"
    path.write_text(format_embedding(g, rot))
    g2, rot2 = read_embedding(path)
    assert g2 == g and rot2 == rot
    assert len(faces(rot2, g2)) == 2 - g.n + g.m


def test_embedding_errors():
    base = "vertices 3\nedge 0 1\nedge 0 2\nedge 1 2\n"
    with pytest.raises(ParseError) as info:
        parse_embedding(base + "rot 0 0a 1x\n", "t.emb")
    assert info.value.line == 5
    with pytest.raises(ParseError):
        parse_embedding(base + "rot 0 0a 1a\nrot 0 0a 1a\n")
    with pytest.raises(ParseError, match="cover"):
        parse_embedding(base + "rot 0 0a 1a\n")
    with pytest.raises(ParseError):
        parse_embedding(base + "rot 9 0a\n")
