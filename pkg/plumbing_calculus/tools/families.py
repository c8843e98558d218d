"""Realizability of capping graphs and the top-level compactifying verdict.

A genus 0 tree with finite boundary group that is not negative definite
is the graph of a capping divisor exactly when it is equivalent to a
type P1-P4 graph, or to a type P5 graph ``T^(v)`` that the X/Y tables
mark realizable. The builders, recognizers and conjugates live in
:mod:`plumbing_calculus.tools.recognition` and are re-exported here.
"""

import logging
from typing import Dict, Optional, Tuple

from plumbing_calculus.config import DEFAULT_BUDGET, DEFAULT_DEPTH
from plumbing_calculus.exceptions import InfinitePi1, NegativeDefinite, NotN3
from plumbing_calculus.models import (
    AugmentedGraph,
    CompactifyingKind,
    CompactifyingVerdict,
    FinitenessKind,
    Mark,
    PlumbingGraph,
    RealizabilityKind,
    RealizabilityTables,
    RealizabilityVerdict,
    TypeName,
    TypeTag,
)
from plumbing_calculus.tools.boundary_group import is_finite_pi1
from plumbing_calculus.tools.graph_core import (
    GraphLike,
    edge_multiplicity,
    intersection_matrix,
    isomorphisms,
    plain,
    require_genus_zero_tree,
)
from plumbing_calculus.tools.gs_engine import positive_gs
from plumbing_calculus.tools.linalg import inertia, is_negative_definite
from plumbing_calculus.tools.moves import minimal_model, neighborhood
from plumbing_calculus.tools.recognition import (
    build_linear,
    build_p1,
    build_star,
    build_type,
    candidate_forms,
    conjugate_of,
    dihedral_form_convert,
    dual_parameter,
    hj_eval,
    hj_expand,
    is_dihedral,
    is_platonic,
    recognize_candidates,
    recognize_type,
)
from plumbing_calculus.tools.tables import dihedral_marks, entry_graph, load_tables

logger = logging.getLogger(__name__)

__all__ = [
    "hj_expand", "hj_eval", "dual_parameter",
    "build_linear", "build_star", "build_p1", "build_type",
    "recognize_type", "recognize_candidates", "conjugate_of", "dihedral_form_convert",
    "b2_plus", "capping_obstruction_spheres", "vertex_mark",
    "p5_realizable", "realizable", "compactifying_verdict",
]

_DIRECT_TYPES = (TypeName.P1, TypeName.P2, TypeName.P3, TypeName.P4)


def b2_plus(g: GraphLike) -> int:
    """Number of positive eigenvalues of ``Q``."""
    return inertia(intersection_matrix(g)).n_plus


def capping_obstruction_spheres(g: GraphLike) -> Optional[Tuple[str, str]]:
    """
    Two spheres that force ``b2+ >= 2``, so the graph cannot cap.

    Looks, in vertex order, for genus 0 vertices ``v1, v2`` that are either
    adjacent with ``s1 > s2 >= 1`` or non-adjacent with ``s1 >= 1`` and
    ``s2 >= 0``.

    Returns:
        The witness pair ``(v1, v2)`` or None.

    Example:
        >>> capping_obstruction_spheres(parse_graph("v1 g0 s2; v2 g0 s1; e v1 v2"))
        ('v1', 'v2')
    """
    graph = plain(g)
    spheres = [v for v in graph.vertices if v.genus == 0]
    for first in spheres:
        if first.self_int < 1:
            continue
        for second in spheres:
            if second.id == first.id:
                continue
            adjacent = edge_multiplicity(graph, first.id, second.id) > 0
            if adjacent and first.self_int > second.self_int >= 1:
                return first.id, second.id
            if not adjacent and second.self_int >= 0:
                return first.id, second.id
    return None


# ---------------------------------------------------------------------------
# X/Y marks
# ---------------------------------------------------------------------------

def _mark_via(graph: PlumbingGraph, v: str, marked: PlumbingGraph,
              marks: Dict[str, Mark]) -> Optional[Mark]:
    mapped = {m[v] for m in isomorphisms(graph, marked)}
    if not mapped:
        return None
    return Mark.Y if any(marks[w] == Mark.Y for w in mapped) else Mark.X


def vertex_mark(base: GraphLike, v: str,
                tables: Optional[RealizabilityTables] = None) -> Tuple[Mark, str]:
    """
    X/Y mark of ``v`` in a ``y = 2`` (N3) graph and where it came from.

    The mark is Y when some isomorphism onto the table graph sends ``v`` to
    a Y vertex.

    Raises:
        NotN3: ``base`` is not a ``y = 2`` (N3) graph covered by the tables.
    """
    graph = plain(base)
    tables = tables or load_tables()
    tag = recognize_type(graph)
    if tag.name != TypeName.N3 or tag.y != 2:
        raise NotN3(f"{tag.describe()} is not an (N3) graph with y = 2")
    if is_dihedral(tag.legs):
        marked, marks = dihedral_marks(tag.legs[2], tables.dihedral)
        mark = _mark_via(graph, v, marked, marks)
        if mark is not None:
            return mark, "dihedral rule"
    for entry in tables.entries:
        marked, marks = entry_graph(entry)
        mark = _mark_via(graph, v, marked, marks)
        if mark is not None:
            return mark, f"{entry.family} table {entry.name}"
    raise NotN3(f"{tag.describe()} has no entry in the realizability tables")


def p5_realizable(base: GraphLike, v: str,
                  tables: Optional[RealizabilityTables] = None) -> RealizabilityVerdict:
    """
    Realizability of the (P5) graph obtained from an (N3) graph at ``v``.

    Central self-intersection ``-y`` with ``y != 2`` is always realizable;
    for ``y = 2`` the answer is the vertex's table mark.

    Args:
        base: An (N3) graph.
        v: Vertex of ``base``.
        tables: Realizability tables; the packaged asset by default.

    Raises:
        NotN3: ``base`` is not recognized as (N3).
        VertexNotFound: ``v`` is not a vertex of ``base``.

    Example:
        >>> p5_realizable(build_star(2, (2, 1), (3, 1), (3, 1)), "b1").kind
        <RealizabilityKind.YES: 'yes'>
    """
    graph = plain(base)
    graph.vertex(v)
    tag = recognize_type(graph)
    if tag.name != TypeName.N3:
        raise NotN3(f"base graph is {tag.describe()}, not (N3)")
    p5 = TypeTag(TypeName.P5, base=tag, vertex=v)
    if tag.y != 2:
        return RealizabilityVerdict(RealizabilityKind.YES,
                                    f"(P5) with central self-intersection -{tag.y} != -2", p5)
    mark, source = vertex_mark(graph, v, tables)
    if mark == Mark.Y:
        return RealizabilityVerdict(RealizabilityKind.YES, f"vertex {v} marked Y ({source})", p5)
    return RealizabilityVerdict(RealizabilityKind.NO, f"vertex {v} marked X ({source})", p5)


# ---------------------------------------------------------------------------
# Realizability and the compactifying verdict
# ---------------------------------------------------------------------------

def _verdict_for(tag: TypeTag, tables: Optional[RealizabilityTables]) -> RealizabilityVerdict:
    if tag.name in _DIRECT_TYPES:
        return RealizabilityVerdict(RealizabilityKind.YES,
                                    f"equivalent to type {tag.name.value}", tag)
    verdict = p5_realizable(build_type(tag.base), tag.vertex, tables)
    return RealizabilityVerdict(verdict.kind, f"equivalent to {tag.describe()}: {verdict.reason}",
                                tag)


def realizable(g: GraphLike, budget: int = DEFAULT_BUDGET,
               tables: Optional[RealizabilityTables] = None,
               depth: int = DEFAULT_DEPTH) -> RealizabilityVerdict:
    """
    Decide whether a tree is the graph of some capping divisor.

    The graph and every graph within ``budget`` extra vertices and
    ``depth`` moves of its minimal model are matched against types P1-P5,
    nearest first.

    Args:
        g: Genus 0 tree with finite boundary group, not negative definite.
        budget: Extra vertices allowed in the search.
        tables: Realizability tables; the packaged asset by default.
        depth: Move limit of the search.

    Returns:
        RealizabilityVerdict: YES for a P1-P4 match or a P5 match marked Y;
        NO when ``b2+ != 1``, two spheres obstruct, or the P5 match is
        marked X; UNKNOWN when finiteness is undecided or nothing matches.

    Raises:
        NotATree, NonzeroGenus, InfinitePi1, NegativeDefinite
    """
    graph = require_genus_zero_tree(g)
    finiteness = is_finite_pi1(graph)
    if finiteness.kind == FinitenessKind.INFINITE:
        raise InfinitePi1(finiteness.reason)
    if finiteness.kind == FinitenessKind.UNKNOWN:
        return RealizabilityVerdict(RealizabilityKind.UNKNOWN,
                                    f"finiteness of the boundary group undecided ({finiteness.reason})")
    if is_negative_definite(intersection_matrix(graph)):
        raise NegativeDefinite("negative definite graphs are fillings, not caps")

    positive = b2_plus(graph)
    if positive != 1:
        return RealizabilityVerdict(RealizabilityKind.NO, f"b2+ = {positive}, a cap needs b2+ = 1")
    witness = capping_obstruction_spheres(graph)
    if witness is not None:
        return RealizabilityVerdict(RealizabilityKind.NO,
                                    f"spheres {witness[0]} and {witness[1]} force b2+ >= 2")

    tag, _ = recognize_candidates(graph)
    if tag.name != TypeName.NONE:
        return _verdict_for(tag, tables)

    reduced, _ = minimal_model(graph)
    explored = 0
    for state, trace in neighborhood(reduced, budget, depth):
        explored += 1
        for form in candidate_forms(state):
            found = recognize_type(form)
            if found.name != TypeName.NONE:
                logger.debug("matched %s after %d moves", found.describe(), len(trace))
                return _verdict_for(found, tables)
    logger.info("no type found among %d graphs (budget %d, depth %d)", explored, budget, depth)
    return RealizabilityVerdict(RealizabilityKind.UNKNOWN,
                                f"no type P1-P5 within budget {budget}, depth {depth}")


def compactifying_verdict(ag: AugmentedGraph, budget: int = DEFAULT_BUDGET,
                          tables: Optional[RealizabilityTables] = None,
                          depth: int = DEFAULT_DEPTH) -> CompactifyingVerdict:
    """
    Whether an augmented graph can be a filling or capping divisor.

    Raises:
        NotATree, NonzeroGenus, InfinitePi1

    Example:
        >>> compactifying_verdict(AugmentedGraph(e8, (1,) * 8)).kind
        <CompactifyingKind.FILLING_DIVISOR: 'filling_divisor'>
    """
    graph = require_genus_zero_tree(ag.graph)
    finiteness = is_finite_pi1(graph)
    if finiteness.kind == FinitenessKind.INFINITE:
        raise InfinitePi1(finiteness.reason)
    if finiteness.kind == FinitenessKind.UNKNOWN:
        return CompactifyingVerdict(CompactifyingKind.UNKNOWN,
                                    f"finiteness undecided ({finiteness.reason})")
    if is_negative_definite(intersection_matrix(graph)):
        return CompactifyingVerdict(CompactifyingKind.FILLING_DIVISOR,
                                    "negative definite, equivalent to type (N)")
    if positive_gs(ag) is None:
        return CompactifyingVerdict(CompactifyingKind.NEITHER,
                                    "positive GS criterion fails for these areas")
    verdict = realizable(graph, budget, tables, depth)
    if verdict.kind == RealizabilityKind.YES:
        return CompactifyingVerdict(CompactifyingKind.CAPPING_DIVISOR, verdict.reason)
    if verdict.kind == RealizabilityKind.NO:
        return CompactifyingVerdict(CompactifyingKind.NEITHER, verdict.reason)
    return CompactifyingVerdict(CompactifyingKind.UNKNOWN, verdict.reason)
