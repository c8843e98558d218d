"""Blow up / blow down / dual blow up rewriting.

Moves are pure: every function returns a new graph. New vertices are
appended after the existing ones with ids from :func:`fresh_id`, so a
recorded ``MoveTrace`` replays to the same ids.
"""

import logging
import re
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from plumbing_calculus.config import DEFAULT_BUDGET, DEFAULT_DEPTH, MAX_SEARCH_STATES
from plumbing_calculus.exceptions import (
    EdgeNotFound,
    NotBlowDownable,
    NotUndoable,
    WeightOutOfRange,
)
from plumbing_calculus.models import (
    AugmentedGraph,
    EquivalenceKind,
    EquivalenceResult,
    Move,
    MoveKind,
    MoveTrace,
    PlumbingGraph,
    TraceStep,
    Vertex,
)
from plumbing_calculus.tools.graph_core import (
    GraphLike,
    canonical_key,
    degree,
    edge_multiplicity,
    fresh_id,
    graph_hash,
    intersection_matrix,
    is_blow_down_admissible,
    isomorphic,
    neighbors,
    plain,
    require_genus_zero_tree,
)
from plumbing_calculus.tools.linalg import determinant, inertia, smith_normal_form

logger = logging.getLogger(__name__)


def _parts(g: GraphLike) -> Tuple[PlumbingGraph, Optional[Dict[str, Fraction]]]:
    areas = g.area_map() if isinstance(g, AugmentedGraph) else None
    return plain(g), areas


def _assemble(vertices: List[Vertex], edges: List[Tuple[str, str]],
              areas: Optional[Dict[str, Fraction]]) -> GraphLike:
    graph = PlumbingGraph(tuple(vertices), tuple(edges))
    if areas is None:
        return graph
    return AugmentedGraph(graph, tuple(areas[v.id] for v in vertices))


def _check_weight(areas: Optional[Dict[str, Fraction]], a0, ids) -> Optional[Fraction]:
    if areas is None:
        if a0 is not None:
            raise WeightOutOfRange("weights apply only to augmented graphs")
        return None
    if a0 is None:
        raise WeightOutOfRange("blowing up an augmented graph needs a weight")
    a0 = Fraction(a0)
    bound = min(areas[vid] for vid in ids)
    if not 0 < a0 < bound:
        raise WeightOutOfRange(f"weight {a0} is not in the open interval (0, {bound})")
    return a0


def _shift(vertices, ids, delta: int) -> List[Vertex]:
    return [v.with_self_int(v.self_int + delta) if v.id in ids else v for v in vertices]


# ---------------------------------------------------------------------------
# The five moves
# ---------------------------------------------------------------------------

def blow_up_vertex(g: GraphLike, v: str, a0=None) -> GraphLike:
    """
    Blow up a point of ``v`` away from its neighbours.

    Args:
        g: Graph or augmented graph.
        v: Vertex id.
        a0: Weight of the new vertex (augmented graphs only), ``0 < a0 < area(v)``.

    Returns:
        The blown up graph: ``v`` loses 1 from its self-intersection and a
        new genus 0, self-intersection -1 vertex hangs off it. Areas become
        ``area(v) - a0`` on ``v`` and ``a0`` on the new vertex.

    Raises:
        VertexNotFound, WeightOutOfRange
    """
    graph, areas = _parts(g)
    graph.vertex(v)
    a0 = _check_weight(areas, a0, [v])
    x = fresh_id(graph, "x")
    vertices = _shift(graph.vertices, {v}, -1) + [Vertex(x, 0, -1)]
    edges = list(graph.edges) + [(v, x)]
    if areas is not None:
        areas[v] -= a0
        areas[x] = a0
    return _assemble(vertices, edges, areas)


def blow_up_edge(g: GraphLike, u: str, w: str, a0=None) -> GraphLike:
    """Blow up the intersection point of ``u`` and ``w``.

    One copy of the edge is replaced by a -1 vertex joined to both ends;
    both ends lose 1 and, for augmented graphs, ``a0`` of area.
    """
    graph, areas = _parts(g)
    graph.vertex(u)
    graph.vertex(w)
    if edge_multiplicity(graph, u, w) == 0:
        raise EdgeNotFound(f"no edge {u}-{w}")
    a0 = _check_weight(areas, a0, [u, w])
    x = fresh_id(graph, "x")
    edges = list(graph.edges)
    edges.remove(next(e for e in edges if set(e) == {u, w}))
    edges += [(u, x), (w, x)]
    vertices = _shift(graph.vertices, {u, w}, -1) + [Vertex(x, 0, -1)]
    if areas is not None:
        areas[u] -= a0
        areas[w] -= a0
        areas[x] = a0
    return _assemble(vertices, edges, areas)


def leaves_tree_class(g: GraphLike, v: str) -> bool:
    """True when blowing down ``v`` would create a double edge."""
    graph = plain(g)
    nbrs = neighbors(graph, v)
    return len(nbrs) == 2 and edge_multiplicity(graph, nbrs[0], nbrs[1]) > 0


def blow_down(g: GraphLike, v: str) -> GraphLike:
    """
    Blow down an admissible -1 vertex.

    The neighbours of ``v`` gain 1 in self-intersection and, for augmented
    graphs, ``area(v)``; a degree 2 vertex is replaced by an edge between
    its two neighbours. The result may have a double edge (see
    :func:`leaves_tree_class`).

    Raises:
        VertexNotFound, NotBlowDownable
    """
    graph, areas = _parts(g)
    vertex = graph.vertex(v)
    if not is_blow_down_admissible(graph, v):
        raise NotBlowDownable(
            f"vertex {v} (genus {vertex.genus}, self-int {vertex.self_int}, "
            f"degree {degree(graph, v)}) cannot be blown down")
    nbrs = neighbors(graph, v)
    vertices = [x for x in _shift(graph.vertices, set(nbrs), 1) if x.id != v]
    edges = [e for e in graph.edges if v not in e]
    if len(nbrs) == 2:
        edges.append((nbrs[0], nbrs[1]))
    if areas is not None:
        for n in nbrs:
            areas[n] += areas[v]
        del areas[v]
    return _assemble(vertices, edges, areas)


def claw_extend(g: GraphLike, v: str) -> PlumbingGraph:
    """Attach a chain ``v - (0) - (0)`` of genus 0 vertices; areas are dropped."""
    graph = plain(g)
    graph.vertex(v)
    c0, c1 = _fresh_ids(graph, "c", 2)
    vertices = list(graph.vertices) + [Vertex(c0, 0, 0), Vertex(c1, 0, 0)]
    edges = list(graph.edges) + [(v, c0), (c0, c1)]
    return PlumbingGraph(tuple(vertices), tuple(edges))


def _fresh_ids(graph: PlumbingGraph, prefix: str, count: int) -> List[str]:
    taken = set(graph.ids)
    ids = []
    n = 1
    while len(ids) < count:
        if f"{prefix}{n}" not in taken:
            ids.append(f"{prefix}{n}")
        n += 1
    return ids


def dual_blow_up(g: GraphLike, v: str) -> PlumbingGraph:
    """
    Dual blow up at ``v``: raise ``v`` by 1 and attach a +1 vertex.

    Equivalent to :func:`claw_extend` at ``v`` (see
    :func:`dual_blow_up_trace`). The new vertex id comes from
    ``fresh_id(g, "p")``, so on a graph without ``p`` ids it is ``p1``.

    Example:
        >>> g = PlumbingGraph((Vertex("v1", 0, -2),))
        >>> dual_blow_up(g, "v1").vertices
        (Vertex(id='v1', genus=0, self_int=-1), Vertex(id='p1', genus=0, self_int=1))
    """
    graph = plain(g)
    graph.vertex(v)
    p = fresh_id(graph, "p")
    vertices = _shift(graph.vertices, {v}, 1) + [Vertex(p, 0, 1)]
    edges = list(graph.edges) + [(v, p)]
    return PlumbingGraph(tuple(vertices), tuple(edges))


def dual_blow_up_trace(g: GraphLike, v: str) -> Tuple[PlumbingGraph, MoveTrace]:
    """
    Reach the dual blow up from the claw extension by ordinary moves.

    ``v - c1(0) - c2(0)``: blowing up the edge ``c1-c2`` and blowing down
    ``c2`` then ``c1`` leaves ``v`` raised by 1 next to a +1 vertex. The
    returned graph is isomorphic to :func:`dual_blow_up` but the +1 vertex
    keeps the blow-up's id.
    """
    graph = plain(g)
    current, trace = _traced(graph, Move(MoveKind.CLAW_EXTEND, vertex=v), MoveTrace())
    c1, c2 = current.ids[-2], current.ids[-1]
    for move in (Move(MoveKind.BLOW_UP_EDGE, edge=(c1, c2)),
                 Move(MoveKind.BLOW_DOWN, vertex=c2),
                 Move(MoveKind.BLOW_DOWN, vertex=c1)):
        current, trace = _traced(current, move, trace)
    return current, trace


# ---------------------------------------------------------------------------
# Structural inverses
# ---------------------------------------------------------------------------

def undo_dual_blow_up(g: GraphLike, p: str) -> Tuple[PlumbingGraph, str]:
    """Remove a genus 0, +1 leaf ``p`` and lower its neighbour by 1.

    Returns the smaller graph and the neighbour ``v`` it was attached to.
    """
    graph = plain(g)
    vertex = graph.vertex(p)
    if vertex.genus != 0 or vertex.self_int != 1 or degree(graph, p) != 1 or graph.k < 2:
        raise NotUndoable(f"vertex {p} is not a +1 leaf")
    (v,) = neighbors(graph, p)
    vertices = [x for x in _shift(graph.vertices, {v}, -1) if x.id != p]
    edges = [e for e in graph.edges if p not in e]
    return PlumbingGraph(tuple(vertices), tuple(edges)), v


def undo_claw(g: GraphLike, leaf: str) -> Tuple[PlumbingGraph, str]:
    """Remove a ``v - (0) - (0)`` claw ending at ``leaf``.

    Both claw vertices must have genus 0 and self-intersection 0, the leaf
    degree 1 and the middle vertex degree 2. Returns the graph and ``v``.
    """
    graph = plain(g)
    end = graph.vertex(leaf)
    if end.genus != 0 or end.self_int != 0 or degree(graph, leaf) != 1:
        raise NotUndoable(f"vertex {leaf} is not a 0-leaf")
    (middle,) = neighbors(graph, leaf)
    mid = graph.vertex(middle)
    if mid.genus != 0 or mid.self_int != 0 or degree(graph, middle) != 2:
        raise NotUndoable(f"vertex {middle} is not the middle of a claw")
    (v,) = [x for x in neighbors(graph, middle) if x != leaf]
    vertices = [x for x in graph.vertices if x.id not in (leaf, middle)]
    edges = [e for e in graph.edges if leaf not in e and middle not in e]
    return PlumbingGraph(tuple(vertices), tuple(edges)), v


def claw_to_dual(g: GraphLike, leaf: str) -> Tuple[PlumbingGraph, str]:
    """Replace the claw ending at ``leaf`` by the equivalent dual blow up."""
    base, v = undo_claw(g, leaf)
    return dual_blow_up(base, v), v


# ---------------------------------------------------------------------------
# Traces
# ---------------------------------------------------------------------------

def apply_move(g: GraphLike, move: Move) -> GraphLike:
    """Dispatch a :class:`Move` to the matching operation."""
    if move.kind == MoveKind.BLOW_UP_VERTEX:
        return blow_up_vertex(g, move.vertex, move.weight)
    if move.kind == MoveKind.BLOW_UP_EDGE:
        return blow_up_edge(g, move.edge[0], move.edge[1], move.weight)
    if move.kind == MoveKind.BLOW_DOWN:
        return blow_down(g, move.vertex)
    if move.kind == MoveKind.CLAW_EXTEND:
        return claw_extend(g, move.vertex)
    return dual_blow_up(g, move.vertex)


def _traced(g: GraphLike, move: Move, trace: MoveTrace) -> Tuple[GraphLike, MoveTrace]:
    after = apply_move(g, move)
    return after, trace.extended(TraceStep(move, graph_hash(g), graph_hash(after)))


def replay(g: GraphLike, trace: MoveTrace) -> GraphLike:
    """Apply every move of ``trace`` in order."""
    for move in trace.moves:
        g = apply_move(g, move)
    return g


def _id_order(vid: str):
    return tuple(int(part) if part.isdigit() else part for part in re.split(r"(\d+)", vid))


def minimal_model(g: GraphLike) -> Tuple[PlumbingGraph, MoveTrace]:
    """
    Blow down until no admissible vertex is left.

    The admissible vertex with the smallest id (numeric parts compared as
    numbers) goes first.

    Raises:
        NotATree, NonzeroGenus
    """
    current = require_genus_zero_tree(g)
    trace = MoveTrace()
    while True:
        candidates = [vid for vid in current.ids if is_blow_down_admissible(current, vid)]
        if not candidates:
            break
        vid = min(candidates, key=_id_order)
        current, trace = _traced(current, Move(MoveKind.BLOW_DOWN, vertex=vid), trace)
    logger.debug("minimal model reached after %d blow downs", len(trace))
    return current, trace


def minimal_models_all_orders(g: GraphLike) -> List[PlumbingGraph]:
    """Pairwise non-isomorphic minimal models over every blow-down order."""
    root = require_genus_zero_tree(g)
    seen = {canonical_key(root)}
    stack = [root]
    found: Dict[str, PlumbingGraph] = {}
    while stack:
        current = stack.pop()
        candidates = [vid for vid in current.ids if is_blow_down_admissible(current, vid)]
        if not candidates:
            found.setdefault(canonical_key(current), current)
            continue
        for vid in candidates:
            after = blow_down(current, vid)
            key = canonical_key(after)
            if key not in seen:
                seen.add(key)
                stack.append(after)
    return [found[key] for key in sorted(found)]


# ---------------------------------------------------------------------------
# Bounded equivalence search
# ---------------------------------------------------------------------------

def _successors(g: PlumbingGraph, cap: int) -> Iterator[Move]:
    for vid in g.ids:
        if is_blow_down_admissible(g, vid) and not leaves_tree_class(g, vid):
            yield Move(MoveKind.BLOW_DOWN, vertex=vid)
    if g.k < cap:
        for vid in g.ids:
            yield Move(MoveKind.BLOW_UP_VERTEX, vertex=vid)
        for u, w in dict.fromkeys(g.edges):
            yield Move(MoveKind.BLOW_UP_EDGE, edge=(u, w))


class _Frontier:
    """Breadth-first layers of one side of the search, keyed by canonical form."""

    def __init__(self, root: PlumbingGraph):
        key = canonical_key(root)
        self.seen: Dict[str, Tuple[PlumbingGraph, MoveTrace]] = {key: (root, MoveTrace())}
        self.layer = [key]
        self.depth = 0

    def expand(self, cap: int) -> List[str]:
        fresh = []
        for key in self.layer:
            graph, trace = self.seen[key]
            for move in _successors(graph, cap):
                after, extended = _traced(graph, move, trace)
                after_key = canonical_key(after)
                if after_key not in self.seen:
                    self.seen[after_key] = (after, extended)
                    fresh.append(after_key)
        self.layer = fresh
        self.depth += 1
        return fresh


def neighborhood(g: GraphLike, budget: int = DEFAULT_BUDGET,
                 depth: int = DEFAULT_DEPTH) -> Iterator[Tuple[PlumbingGraph, MoveTrace]]:
    """
    Graphs reachable from ``g`` by blow ups and blow downs, nearest first.

    At most ``budget`` vertices beyond ``g`` and ``depth`` moves; every
    graph is yielded once up to isomorphism together with its trace.
    """
    root = require_genus_zero_tree(g)
    frontier = _Frontier(root)
    yield root, MoveTrace()
    cap = root.k + budget
    while frontier.layer and frontier.depth < depth and len(frontier.seen) < MAX_SEARCH_STATES:
        for key in frontier.expand(cap):
            yield frontier.seen[key]


def _invariants(g: PlumbingGraph):
    Q = intersection_matrix(g)
    signs = inertia(Q)
    return (abs(determinant(Q)),
            (signs.n_plus, signs.n_zero),
            tuple(d for d in smith_normal_form(Q) if d != 1))


def equivalent_graphs(g1: GraphLike, g2: GraphLike, budget: int = DEFAULT_BUDGET,
                      depth: int = DEFAULT_DEPTH) -> EquivalenceResult:
    """
    Search for a chain of blow ups and blow downs relating two trees.

    Both sides grow breadth-first (the shallower side first) until a graph
    found from one side is isomorphic to one found from the other. Graphs
    never exceed ``max(k1, k2) + budget`` vertices and the two traces
    together never exceed ``depth`` moves.

    Args:
        g1, g2: Genus 0 trees.
        budget: Extra vertices allowed during the search.
        depth: Total number of moves allowed.

    Returns:
        EquivalenceResult: ``PROOF`` with ``replay(g1, forward)`` isomorphic
        to ``replay(g2, backward)``; ``NOT_EQUIVALENT`` when |det|, the
        positive/zero inertia or the non-unit Smith factors differ;
        ``UNKNOWN`` when the search runs out.
    """
    first = require_genus_zero_tree(g1)
    second = require_genus_zero_tree(g2)
    labels = ("|det|", "inertia (n_plus, n_zero)", "Smith normal form")
    for label, left, right in zip(labels, _invariants(first), _invariants(second)):
        if left != right:
            return EquivalenceResult(EquivalenceKind.NOT_EQUIVALENT,
                                     f"{label} differs: {left} vs {right}")

    sides = (_Frontier(first), _Frontier(second))
    cap = max(first.k, second.k) + budget

    def proof(key: str) -> Optional[EquivalenceResult]:
        left_graph, forward = sides[0].seen[key]
        right_graph, backward = sides[1].seen[key]
        if not isomorphic(left_graph, right_graph):
            return None
        return EquivalenceResult(EquivalenceKind.PROOF,
                                 f"{len(forward) + len(backward)} moves", forward, backward)

    start = next(iter(sides[0].seen))
    if start in sides[1].seen:
        found = proof(start)
        if found is not None:
            return found

    while sides[0].depth + sides[1].depth < depth:
        active = [s for s in sides if s.layer]
        if not active:
            break
        side = min(active, key=lambda s: (s.depth, len(s.layer)))
        other = sides[1] if side is sides[0] else sides[0]
        for key in side.expand(cap):
            if key in other.seen:
                found = proof(key)
                if found is not None:
                    logger.debug("equivalence found at depths %d + %d",
                                 sides[0].depth, sides[1].depth)
                    return found
        if len(side.seen) > MAX_SEARCH_STATES:
            logger.info("equivalence search stopped at %d states", len(side.seen))
            return EquivalenceResult(EquivalenceKind.UNKNOWN,
                                     f"state limit {MAX_SEARCH_STATES} reached")

    logger.info("equivalence search exhausted budget %d, depth %d", budget, depth)
    return EquivalenceResult(EquivalenceKind.UNKNOWN,
                             f"no proof within budget {budget} and depth {depth}")
