"""Structural queries on plumbing graphs.

Intersection matrices, tree/branch structure, the admissible blow-down
test shared with the moves module, and isomorphism-invariant keys.
"""

import hashlib
from typing import Dict, Iterable, List, Optional, Union

import networkx as nx
from networkx.algorithms.isomorphism import MultiGraphMatcher, categorical_node_match

from plumbing_calculus.exceptions import NonzeroGenus, NotATree, VertexNotFound
from plumbing_calculus.models import AugmentedGraph, IntersectionMatrix, PlumbingGraph

GraphLike = Union[PlumbingGraph, AugmentedGraph]

_NODE_MATCH = categorical_node_match(["genus", "self_int"], [0, 0])


def plain(g: GraphLike) -> PlumbingGraph:
    """Return the underlying plumbing graph of an augmented graph."""
    return g.graph if isinstance(g, AugmentedGraph) else g


def intersection_matrix(g: GraphLike) -> IntersectionMatrix:
    """
    Build the intersection matrix Q of a graph.

    Diagonal entries are self-intersections; entry (i, j) counts the edges
    between vertices i and j. Rows follow vertex declaration order.

    Args:
        g: A plumbing graph (or augmented graph, whose areas are ignored).

    Returns:
        IntersectionMatrix with ``vertex_order`` equal to the graph's ids.

    Example:
        >>> g = PlumbingGraph((Vertex("v1", 0, 2), Vertex("v2", 0, 1)), (("v1", "v2"),))
        >>> intersection_matrix(g).entries
        ((2, 1), (1, 1))
    """
    g = plain(g)
    k = g.k
    index = {vid: i for i, vid in enumerate(g.ids)}
    rows = [[0] * k for _ in range(k)]
    for i, v in enumerate(g.vertices):
        rows[i][i] = v.self_int
    for u, w in g.edges:
        rows[index[u]][index[w]] += 1
        rows[index[w]][index[u]] += 1
    return IntersectionMatrix(tuple(tuple(r) for r in rows), g.ids)


def to_networkx(g: GraphLike) -> nx.MultiGraph:
    """MultiGraph view with ``genus`` and ``self_int`` node attributes."""
    g = plain(g)
    graph = nx.MultiGraph()
    for v in g.vertices:
        graph.add_node(v.id, genus=v.genus, self_int=v.self_int)
    graph.add_edges_from(g.edges)
    return graph


def _require_vertex(g: PlumbingGraph, vid: str) -> None:
    if not g.has_vertex(vid):
        raise VertexNotFound(f"vertex {vid} not in graph")


def degree(g: GraphLike, vid: str) -> int:
    """Number of edge ends at ``vid`` (multi-edges counted)."""
    g = plain(g)
    _require_vertex(g, vid)
    return sum((u == vid) + (w == vid) for u, w in g.edges)


def neighbors(g: GraphLike, vid: str) -> List[str]:
    """Distinct neighbours of ``vid`` in vertex order."""
    g = plain(g)
    _require_vertex(g, vid)
    adjacent = {w for u, w in g.edges if u == vid} | {u for u, w in g.edges if w == vid}
    return [x for x in g.ids if x in adjacent]


def edge_multiplicity(g: GraphLike, u: str, w: str) -> int:
    g = plain(g)
    return sum(1 for e in g.edges if set(e) == {u, w})


def is_tree(g: GraphLike) -> bool:
    """True iff |E| = |V| - 1 and no multi-edge (the empty graph counts)."""
    g = plain(g)
    if g.k == 0:
        return True
    return len(g.edges) == g.k - 1 and len(set(g.edges)) == len(g.edges)


def is_linear(g: GraphLike) -> bool:
    g = plain(g)
    return is_tree(g) and all(degree(g, vid) <= 2 for vid in g.ids)


def branch_points(g: GraphLike) -> List[str]:
    """Vertices with at least three branches, in vertex order."""
    g = plain(g)
    return [vid for vid in g.ids if degree(g, vid) >= 3]


def subgraph(g: GraphLike, ids: Iterable[str]) -> PlumbingGraph:
    """Induced subgraph on ``ids`` keeping the parent's vertex order."""
    g = plain(g)
    keep = set(ids)
    vertices = tuple(v for v in g.vertices if v.id in keep)
    edges = tuple(e for e in g.edges if e[0] in keep and e[1] in keep)
    return PlumbingGraph(vertices, edges)


def branches_at(g: GraphLike, vid: str) -> List[PlumbingGraph]:
    """Connected components of ``g`` minus ``vid``, ordered by first vertex."""
    g = plain(g)
    _require_vertex(g, vid)
    graph = to_networkx(g)
    graph.remove_node(vid)
    order = {x: i for i, x in enumerate(g.ids)}
    components = sorted(nx.connected_components(graph),
                        key=lambda comp: min(order[x] for x in comp))
    return [subgraph(g, comp) for comp in components]


def simple_branches(g: GraphLike, vid: str) -> List[PlumbingGraph]:
    """Branches at ``vid`` that are linear."""
    return [b for b in branches_at(g, vid) if is_linear(b)]


def extremal_branch_points(g: GraphLike) -> List[str]:
    """Branch points with exactly one non-simple branch."""
    g = plain(g)
    found = []
    for vid in branch_points(g):
        branches = branches_at(g, vid)
        if sum(1 for b in branches if not is_linear(b)) == 1:
            found.append(vid)
    return found


def is_blow_down_admissible(g: GraphLike, vid: str) -> bool:
    """Genus 0, self-intersection -1, degree <= 2 and two distinct neighbours."""
    g = plain(g)
    v = g.vertex(vid)
    if v.genus != 0 or v.self_int != -1:
        return False
    d = degree(g, vid)
    if d > 2:
        return False
    return d < 2 or len(neighbors(g, vid)) == 2


def is_minimal(g: GraphLike) -> bool:
    """True iff no admissible blow-down exists."""
    g = plain(g)
    return not any(is_blow_down_admissible(g, vid) for vid in g.ids)


def require_genus_zero_tree(g: GraphLike) -> PlumbingGraph:
    g = plain(g)
    if not is_tree(g):
        raise NotATree("graph is not a tree")
    positive = [v.id for v in g.vertices if v.genus != 0]
    if positive:
        raise NonzeroGenus(f"vertices with positive genus: {', '.join(positive)}")
    return g


def fresh_id(g: GraphLike, prefix: str = "x") -> str:
    """First ``<prefix><n>`` (n >= 1) not already used."""
    taken = set(plain(g).ids)
    n = 1
    while f"{prefix}{n}" in taken:
        n += 1
    return f"{prefix}{n}"


# ---------------------------------------------------------------------------
# Isomorphism
# ---------------------------------------------------------------------------

def _rooted_code(graph: nx.Graph, root, parent=None) -> str:
    data = graph.nodes[root]
    children = sorted(_rooted_code(graph, child, root)
                      for child in graph.neighbors(root) if child != parent)
    return f"({data['genus']},{data['self_int']}{''.join(children)})"


def canonical_key(g: GraphLike) -> str:
    """
    Isomorphism-invariant key of a graph.

    Trees get an exact AHU encoding rooted at the tree centre (the smaller
    of the two encodings when the centre is an edge), so equal keys mean
    isomorphic trees. Other graphs get a Weisfeiler-Lehman hash, which can
    collide; callers must confirm with :func:`isomorphic`.
    """
    g = plain(g)
    if g.k == 0:
        return "tree:()"
    graph = to_networkx(g)
    if is_tree(g):
        simple = nx.Graph(graph)
        return "tree:" + min(_rooted_code(simple, c) for c in nx.center(simple))
    labelled = nx.Graph()
    for vid, data in graph.nodes(data=True):
        labelled.add_node(vid, label=f"{data['genus']},{data['self_int']}")
    for u, w in set(g.edges):
        labelled.add_edge(u, w, label=str(edge_multiplicity(g, u, w)))
    digest = nx.weisfeiler_lehman_graph_hash(labelled, node_attr="label", edge_attr="label")
    return f"wl:{g.k}:{len(g.edges)}:{digest}"


def graph_hash(g: GraphLike) -> str:
    """Short digest of :func:`canonical_key` for move traces."""
    return hashlib.sha1(canonical_key(g).encode("utf-8")).hexdigest()[:12]


def isomorphism(g1: GraphLike, g2: GraphLike) -> Optional[Dict[str, str]]:
    """A genus/self-intersection preserving isomorphism ``g1 -> g2``, if any."""
    g1, g2 = plain(g1), plain(g2)
    if g1.k != g2.k or len(g1.edges) != len(g2.edges):
        return None
    matcher = MultiGraphMatcher(to_networkx(g1), to_networkx(g2), node_match=_NODE_MATCH)
    if not matcher.is_isomorphic():
        return None
    return dict(matcher.mapping)


def isomorphisms(g1: GraphLike, g2: GraphLike) -> List[Dict[str, str]]:
    """All isomorphisms ``g1 -> g2`` (used to read marks up to symmetry)."""
    g1, g2 = plain(g1), plain(g2)
    if g1.k != g2.k or len(g1.edges) != len(g2.edges):
        return []
    matcher = MultiGraphMatcher(to_networkx(g1), to_networkx(g2), node_match=_NODE_MATCH)
    return [dict(m) for m in matcher.isomorphisms_iter()]


def isomorphic(g1: GraphLike, g2: GraphLike) -> bool:
    return isomorphism(g1, g2) is not None


def chain_order(g: GraphLike, start: Optional[str] = None) -> List[str]:
    """Vertices of a linear graph from ``start`` (default: first end) to the other end."""
    g = plain(g)
    if g.k == 0:
        return []
    if start is None:
        ends = [vid for vid in g.ids if degree(g, vid) <= 1]
        start = ends[0]
    order = [start]
    previous = None
    while True:
        step = [x for x in neighbors(g, order[-1]) if x != previous]
        if not step:
            return order
        previous = order[-1]
        order.append(step[0])
