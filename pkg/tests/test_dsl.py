from fractions import Fraction

import pytest

from conftest import chain, random_tree
from plumbing_calculus.exceptions import (
    DisconnectedGraphError,
    DslSyntaxError,
    NonPositiveAreaError,
    SelfLoopError,
)
from plumbing_calculus.models import AugmentedGraph, PlumbingGraph, Vertex
from plumbing_calculus.tools.dsl import (
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    parse_area,
    parse_graph,
    serialize_graph,
)


def test_parse_augmented_example(example21):
    parsed = parse_graph("v1 g0 s2 a3; v2 g0 s1 a2; e v1 v2")
    assert isinstance(parsed, AugmentedGraph)
    assert parsed == example21


def test_parse_long_form_with_comments():
    text = "# a chain\nv v1 g0 s-2\nv v2 g0 s-3  # second\ne v1 v2\n"
    parsed = parse_graph(text)
    assert isinstance(parsed, PlumbingGraph)
    assert parsed == chain(-2, -3)


def test_parse_rational_area():
    parsed = parse_graph("v1 g0 s0 a1/2")
    assert parsed.area == (Fraction(1, 2),)


def test_syntax_error_reports_position():
    with pytest.raises(DslSyntaxError) as info:
        parse_graph("v1 g0 s2\nv2 g0 q1\ne v1 v2")
    assert info.value.line == 2
    assert info.value.column == 7
    assert "q1" in str(info.value)


@pytest.mark.parametrize("text", [
    "v1 g0 s2 a1; v2 g0 s1; e v1 v2",
    "v1 g0 s1; v1 g0 s2",
    "v1 s1",
    "v1 g0 s1; e v1",
    "v1 g0 s1; v2 g0 s1; e v1 v9",
])
def test_malformed_text(text):
    with pytest.raises(DslSyntaxError):
        parse_graph(text)


def test_invariant_errors_are_distinct():
    with pytest.raises(SelfLoopError):
        parse_graph("v1 g0 s1; e v1 v1")
    with pytest.raises(DisconnectedGraphError):
        parse_graph("v1 g0 s1; v2 g0 s1")
    with pytest.raises(NonPositiveAreaError):
        parse_graph("v1 g0 s1 a0")


def test_serialize_inverts_parse(example21, e8):
    assert parse_graph(serialize_graph(example21)) == example21
    assert parse_graph(serialize_graph(e8)) == e8
    assert serialize_graph(example21).splitlines()[0] == "v v1 g0 s2 a3"


def test_json_export(example21):
    data = graph_to_json(example21)
    assert data["vertices"][0] == {"id": "v1", "genus": 0, "self_int": 2,
                                   "area": {"num": "3", "den": "1"}}
    assert data["edges"] == [["v1", "v2"]]
    assert graph_from_json(data) == example21


def test_dot_export(example21):
    dot = graph_to_dot(example21)
    assert dot.startswith("graph plumbing {")
    assert '"v1" [label="v1: s=2, g=0, a=3"];' in dot
    assert '"v1" -- "v2";' in dot


def test_parse_area():
    assert parse_area("1/2, 3") == (Fraction(1, 2), Fraction(3))
    with pytest.raises(DslSyntaxError):
        parse_area("1/0")


def _random_graph(rng):
    """Random multigraph with genus, rational areas and odd vertex ids."""
    tree = random_tree(rng, rng.randint(1, 8), low=-6, high=4)
    names = {v.id: rng.choice([v.id, f"x_{v.id}", f"w-{v.id}", f"u.{v.id}"])
             for v in tree.vertices}
    vertices = tuple(Vertex(names[v.id], rng.choice([0, 0, 0, 1, 2]), v.self_int)
                     for v in tree.vertices)
    edges = [(names[u], names[w]) for u, w in tree.edges]
    ids = [v.id for v in vertices]
    for _ in range(rng.randint(0, 3) if len(ids) > 1 else 0):
        u, w = rng.sample(ids, 2)
        edges.append((w, u))
    graph = PlumbingGraph(vertices, tuple(edges))
    if rng.random() < 0.3:
        return graph
    area = tuple(Fraction(rng.randint(1, 40), rng.randint(1, 12)) for _ in vertices)
    return AugmentedGraph(graph, area)


def test_text_and_json_forms_round_trip(rng):
    for _ in range(200):
        g = _random_graph(rng)
        assert parse_graph(serialize_graph(g)) == g
        assert graph_from_json(graph_to_json(g)) == g
