"""Graph DSL parsing and serialization, plus JSON and DOT exports.

Grammar (one statement per line or ``;``-separated, ``#`` comments)::

    v <id> g<genus> s<self-int> [a<num>[/<den>]]    vertex
    <id> g<genus> s<self-int> [a<num>[/<den>]]      vertex (short form)
    e <id> <id>                                     edge

Either every vertex carries an area (augmented graph) or none does.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from plumbing_calculus.exceptions import (
    DslSyntaxError,
    NonPositiveAreaError,
    SelfLoopError,
)
from plumbing_calculus.models import (
    AugmentedGraph,
    PlumbingGraph,
    Vertex,
    format_rational,
    rational_from_dict,
)

logger = logging.getLogger(__name__)

GRAMMAR = """\
Graph DSL (statements separated by newlines or ';', '#' starts a comment):
  v <id> g<genus> s<self-int> [a<num>[/<den>]]   declare a vertex
  <id> g<genus> s<self-int> [a<num>[/<den>]]     declare a vertex (short form)
  e <id> <id>                                    declare an edge
Areas must be given for every vertex or for none."""

_ATTR = re.compile(
    r"^(?:g(?P<genus>\d+)|s(?P<self>[+-]?\d+)|a(?P<num>[+-]?\d+)(?:/(?P<den>\d+))?)$")
_ID = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")
_RESERVED = {"v", "e"}

Parsed = Union[PlumbingGraph, AugmentedGraph]


@dataclass
class _Token:
    text: str
    line: int
    column: int


def _statements(text: str) -> List[List[_Token]]:
    statements = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        offset = 0
        for chunk in line.split(";"):
            tokens = [_Token(m.group(0), line_no, offset + m.start() + 1)
                      for m in re.finditer(r"\S+", chunk)]
            if tokens:
                statements.append(tokens)
            offset += len(chunk) + 1
    return statements


def _check_id(token: _Token) -> str:
    if not _ID.match(token.text) or _ATTR.match(token.text) or token.text in _RESERVED:
        raise DslSyntaxError(f"invalid vertex id {token.text!r}", token.line, token.column)
    return token.text


def _parse_vertex(id_token: _Token, attrs: List[_Token]):
    vid = _check_id(id_token)
    genus = self_int = area = None
    for tok in attrs:
        match = _ATTR.match(tok.text)
        if match is None:
            raise DslSyntaxError(f"unexpected token {tok.text!r}", tok.line, tok.column)
        if match.group("genus") is not None:
            if genus is not None:
                raise DslSyntaxError("genus given twice", tok.line, tok.column)
            genus = int(match.group("genus"))
        elif match.group("self") is not None:
            if self_int is not None:
                raise DslSyntaxError("self-intersection given twice", tok.line, tok.column)
            self_int = int(match.group("self"))
        else:
            if area is not None:
                raise DslSyntaxError("area given twice", tok.line, tok.column)
            den = int(match.group("den") or 1)
            if den == 0:
                raise DslSyntaxError("area has zero denominator", tok.line, tok.column)
            area = Fraction(int(match.group("num")), den)
            if area <= 0:
                raise NonPositiveAreaError(
                    f"line {tok.line}, column {tok.column}: vertex {vid} has "
                    f"non-positive area {format_rational(area)}")
    if genus is None:
        raise DslSyntaxError(f"vertex {vid} is missing g<genus>", id_token.line, id_token.column)
    if self_int is None:
        raise DslSyntaxError(f"vertex {vid} is missing s<self-int>", id_token.line, id_token.column)
    return Vertex(vid, genus, self_int), area


def parse_graph(text: str) -> Parsed:
    """
    Parse graph DSL text.

    Args:
        text: DSL source.

    Returns:
        An AugmentedGraph when areas are present, otherwise a PlumbingGraph.

    Raises:
        DslSyntaxError: malformed statements (with line and column).
        SelfLoopError, DisconnectedGraphError, NonPositiveAreaError,
        DuplicateVertexError: invariant violations.

    Example:
        >>> ag = parse_graph("v1 g0 s2 a3; v2 g0 s1 a2; e v1 v2")
        >>> ag.area
        (Fraction(3, 1), Fraction(2, 1))
    """
    vertices: List[Vertex] = []
    areas: List[Tuple[Fraction, _Token]] = []
    edges: List[Tuple[str, str]] = []
    declared: Dict[str, _Token] = {}
    pending_edges: List[Tuple[_Token, _Token]] = []

    for tokens in _statements(text):
        head = tokens[0]
        if head.text == "e" and not (len(tokens) > 1 and _ATTR.match(tokens[1].text)):
            if len(tokens) != 3:
                raise DslSyntaxError("edge needs exactly two endpoints", head.line, head.column)
            pending_edges.append((tokens[1], tokens[2]))
            continue
        if head.text == "v" and len(tokens) > 1 and not _ATTR.match(tokens[1].text):
            id_token, attrs = tokens[1], tokens[2:]
        else:
            id_token, attrs = head, tokens[1:]
        vertex, area = _parse_vertex(id_token, attrs)
        if vertex.id in declared:
            raise DslSyntaxError(f"vertex {vertex.id} declared twice",
                                 id_token.line, id_token.column)
        declared[vertex.id] = id_token
        vertices.append(vertex)
        areas.append((area, id_token))

    for u_tok, w_tok in pending_edges:
        for tok in (u_tok, w_tok):
            if tok.text not in declared:
                raise DslSyntaxError(f"edge refers to undeclared vertex {tok.text!r}",
                                     tok.line, tok.column)
        if u_tok.text == w_tok.text:
            raise SelfLoopError(
                f"line {u_tok.line}, column {u_tok.column}: self-loop at vertex {u_tok.text}")
        edges.append((u_tok.text, w_tok.text))

    graph = PlumbingGraph(tuple(vertices), tuple(edges))
    given = [a for a, _ in areas if a is not None]
    if not given:
        return graph
    if len(given) != len(areas):
        missing = next(tok for a, tok in areas if a is None)
        raise DslSyntaxError("areas must be given for every vertex or none",
                             missing.line, missing.column)
    logger.debug("parsed augmented graph with %d vertices", graph.k)
    return AugmentedGraph(graph, tuple(given))


def parse_area(text: str) -> Tuple[Fraction, ...]:
    """Parse a ``--area`` list such as ``3,2`` or ``1/2,3``."""
    try:
        return tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DslSyntaxError(f"invalid area list {text!r}: {exc}") from exc


def _area_token(a: Fraction) -> str:
    return f"a{a.numerator}" if a.denominator == 1 else f"a{a.numerator}/{a.denominator}"


def serialize_graph(g: Parsed) -> str:
    """Render a graph in the long DSL form; ``parse_graph`` inverts it."""
    graph = g.graph if isinstance(g, AugmentedGraph) else g
    area = g.area if isinstance(g, AugmentedGraph) else (None,) * graph.k
    lines = []
    for v, a in zip(graph.vertices, area):
        line = f"v {v.id} g{v.genus} s{v.self_int}"
        if a is not None:
            line += " " + _area_token(a)
        lines.append(line)
    lines.extend(f"e {u} {w}" for u, w in graph.edges)
    return "\n".join(lines) + "\n"


def graph_to_json(g: Parsed) -> dict:
    return g.to_dict()


def graph_from_json(data: dict) -> Parsed:
    vertices = tuple(Vertex(str(v["id"]), int(v["genus"]), int(v["self_int"]))
                     for v in data.get("vertices", []))
    edges = tuple((str(u), str(w)) for u, w in data.get("edges", []))
    graph = PlumbingGraph(vertices, edges)
    areas = [v.get("area") for v in data.get("vertices", [])]
    if areas and all(a is not None for a in areas):
        return AugmentedGraph(graph, tuple(rational_from_dict(a) for a in areas))
    return graph


def graph_to_dot(g: Parsed) -> str:
    """DOT text; nodes are labelled ``id: s=<self_int>, g=<genus>[, a=<area>]``."""
    graph = g.graph if isinstance(g, AugmentedGraph) else g
    area = g.area if isinstance(g, AugmentedGraph) else (None,) * graph.k
    lines = ["graph plumbing {"]
    for v, a in zip(graph.vertices, area):
        label = f"{v.id}: s={v.self_int}, g={v.genus}"
        if a is not None:
            label += f", a={format_rational(a)}"
        lines.append(f'  "{v.id}" [label="{label}"];')
    for u, w in graph.edges:
        lines.append(f'  "{u}" -- "{w}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


