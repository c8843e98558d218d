"""Boundary fundamental group: presentations, abelianization and finiteness.

For a genus 0 tree with intersection matrix ``Q`` the group has one
generator ``e_i`` per vertex, commutation relations ``e_i e_j^q_ij =
e_j^q_ij e_i`` for every pair and one product relation
``prod_j e_j^q_ij = 1`` per vertex.
"""

import logging
from typing import List, Optional

from plumbing_calculus.models import (
    FinitenessKind,
    FinitenessVerdict,
    GroupPresentation,
    TypeName,
)
from plumbing_calculus.tools.graph_core import (
    GraphLike,
    branch_points,
    branches_at,
    intersection_matrix,
    is_linear,
    is_minimal,
    require_genus_zero_tree,
)
from plumbing_calculus.tools.linalg import determinant, is_negative_definite, smith_normal_form
from plumbing_calculus.tools.moves import minimal_model
from plumbing_calculus.tools.recognition import recognize_candidates

logger = logging.getLogger(__name__)

_CYCLIC_TYPES = {TypeName.N1, TypeName.N2, TypeName.P1, TypeName.P2, TypeName.P4}
_NON_CYCLIC_TYPES = {TypeName.N3, TypeName.P3, TypeName.P5}


def pi1_presentation(g: GraphLike) -> GroupPresentation:
    """
    Presentation of the boundary fundamental group.

    Args:
        g: Genus 0 tree.

    Returns:
        GroupPresentation with generators ``e1..ek`` in vertex order.

    Raises:
        NotATree, NonzeroGenus

    Example:
        >>> pi1_presentation(parse_graph("v1 g0 s2; v2 g0 s1; e v1 v2")).products
        (((0, 2), (1, 1)), ((0, 1), (1, 1)))
    """
    graph = require_genus_zero_tree(g)
    rows = intersection_matrix(graph).rows()
    k = graph.k
    commutations = tuple((i, j, rows[i][j]) for i in range(k) for j in range(i + 1, k))
    products = tuple(tuple((j, q) for j, q in enumerate(row) if q != 0) for row in rows)
    return GroupPresentation(tuple(f"e{i + 1}" for i in range(k)), commutations, products)


def _power(generator: str, exponent: int) -> str:
    return generator if exponent == 1 else f"{generator}^{exponent}"


def relators(presentation: GroupPresentation) -> List[str]:
    """
    Relators as text, one per entry: the product relations first (empty
    products skipped), then commutators ``ei*ej^q*ei^-1*ej^-q`` for
    ``q != 0``.
    """
    names = presentation.generators
    lines = []
    for product in presentation.products:
        if product:
            lines.append("*".join(_power(names[j], q) for j, q in product))
    for i, j, q in presentation.commutations:
        if q != 0:
            lines.append("*".join((_power(names[i], 1), _power(names[j], q),
                                   _power(names[i], -1), _power(names[j], -q))))
    return lines


def abelianization_order(g: GraphLike) -> Optional[int]:
    """``|det Q|``, or None when the abelianization is infinite (det = 0)."""
    graph = require_genus_zero_tree(g)
    delta = determinant(intersection_matrix(graph))
    return abs(delta) if delta != 0 else None


def abelianization_factors(g: GraphLike) -> List[int]:
    """Invariant factors of ``H_1``: ``Z/d`` for each ``d > 1``, ``Z`` for each 0."""
    graph = require_genus_zero_tree(g)
    return [d for d in smith_normal_form(intersection_matrix(graph)) if d != 1]


def _finite(order: Optional[int], cyclic: bool, reason: str) -> FinitenessVerdict:
    return FinitenessVerdict(FinitenessKind.FINITE, reason, order, cyclic)


def is_finite_pi1(g: GraphLike) -> FinitenessVerdict:
    """
    Decide finiteness of the boundary fundamental group where a known
    pattern applies.

    Finite: linear graphs and graphs whose own form, minimal model or
    claw-free form is a type N or P graph (order ``|det|`` and cyclic for
    N1, N2, P1, P2, P4; non-cyclic for N3, P3, P5). Infinite: ``det = 0``;
    a minimal model vertex with four branches that are not spheres; a
    negative definite minimal model with two or more branch points; a
    minimal one-branch-point model with negative legs that is not N3 or
    P3. Unknown otherwise.

    Raises:
        NotATree, NonzeroGenus
    """
    graph = require_genus_zero_tree(g)
    if graph.k == 0:
        return _finite(1, True, "empty graph")
    delta = determinant(intersection_matrix(graph))
    if delta == 0:
        return FinitenessVerdict(FinitenessKind.INFINITE, "det = 0: infinite abelianization")
    order = abs(delta)
    if is_linear(graph):
        return _finite(order, True, "linear graph")

    tag, _ = recognize_candidates(graph)
    if tag.name in _CYCLIC_TYPES:
        return _finite(order, True, f"equivalent to type {tag.name.value}")
    if tag.name in _NON_CYCLIC_TYPES:
        return _finite(None, False, f"equivalent to type {tag.name.value}")

    reduced, _ = minimal_model(graph)
    if is_linear(reduced):
        return _finite(order, True, "minimal model is linear")

    points = branch_points(reduced)
    for vid in points:
        non_spherical = [b for b in branches_at(reduced, vid)
                         if abs(determinant(intersection_matrix(b))) != 1]
        if len(non_spherical) >= 4:
            return FinitenessVerdict(
                FinitenessKind.INFINITE,
                f"vertex {vid} has {len(non_spherical)} non-spherical branches")

    if is_minimal(reduced) and is_negative_definite(intersection_matrix(reduced)) \
            and len(points) >= 2:
        return FinitenessVerdict(FinitenessKind.INFINITE,
                                 "negative definite minimal graph with two branch points")

    if len(points) == 1:
        center = points[0]
        legs_negative = all(v.self_int < 0 for v in reduced.vertices if v.id != center)
        if legs_negative:
            return FinitenessVerdict(FinitenessKind.INFINITE,
                                     "one branch point with negative legs, not N3 or P3")

    logger.debug("finiteness undecided for %d-vertex graph", graph.k)
    return FinitenessVerdict(FinitenessKind.UNKNOWN, "no classification pattern applies")
