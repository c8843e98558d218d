"""First Chern class coefficients and characterizing numbers.

``w`` solves ``Q w = b`` with ``b_i = s_i + 2``; ``c1^2 = w . b`` and the
characterizing number is ``n = c1^2 + k``. Conjugate pairs satisfy
``n^T + n^Y = 10``; a graph compactifying a rational homology disk has
``n = 10``.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from plumbing_calculus.config import CHARACTERIZING_TOTAL
from plumbing_calculus.exceptions import DegenerateIntersectionForm, InvalidFraction
from plumbing_calculus.models import ChernData, SolutionKind
from plumbing_calculus.tools.graph_core import (
    GraphLike,
    intersection_matrix,
    require_genus_zero_tree,
)
from plumbing_calculus.tools.linalg import determinant, inverse, solve

logger = logging.getLogger(__name__)

HomologyClass = Dict[str, int]


def chern_data(g: GraphLike) -> ChernData:
    """
    Solve ``Q w = b`` exactly and derive ``c1^2`` and ``n``.

    Args:
        g: Genus 0 tree with ``det Q != 0``.

    Returns:
        ChernData(w, c1_square, characterizing_number).

    Raises:
        NotATree, NonzeroGenus, DegenerateIntersectionForm

    Example:
        >>> chern_data(build_star(2, (2, 1), (3, 2), (5, 4))).characterizing_number
        Fraction(8, 1)
    """
    graph = require_genus_zero_tree(g)
    Q = intersection_matrix(graph)
    if determinant(Q) == 0:
        raise DegenerateIntersectionForm("det Q = 0: the lift of c1 is not unique")
    b = [v.self_int + 2 for v in graph.vertices]
    solution = solve(Q, b)
    if solution.kind != SolutionKind.UNIQUE:
        raise DegenerateIntersectionForm("Q w = b has no unique solution")
    w = solution.particular
    c1_square = sum((wi * bi for wi, bi in zip(w, b)), Fraction(0))
    return ChernData(w, c1_square, c1_square + graph.k)


def characterizing_number_after_claw(g: GraphLike, v: str) -> Fraction:
    """
    ``n`` of the claw extension at ``v`` without building it.

    With ``u = Q^-1 e_v``: ``n^(v) = c1^2 - 4 w_v + 4 u_v + k + 10``.
    """
    graph = require_genus_zero_tree(g)
    data = chern_data(graph)
    index = graph.index_of(v)
    u_v = inverse(intersection_matrix(graph))[index][index]
    return _after_claw(data, index, u_v, graph.k)


def _after_claw(data: ChernData, index: int, u_v: Fraction, k: int) -> Fraction:
    return data.c1_square - 4 * data.w[index] + 4 * u_v + k + 10


def characterizing_numbers_after_claw(g: GraphLike) -> List[Fraction]:
    """:func:`characterizing_number_after_claw` for every vertex, sharing one inverse."""
    graph = require_genus_zero_tree(g)
    data = chern_data(graph)
    inv = inverse(intersection_matrix(graph))
    return [_after_claw(data, i, inv[i][i], graph.k) for i in range(graph.k)]


def conjugate_sum_check(T: GraphLike, cap: GraphLike) -> Fraction:
    """``n^T + n^cap``; anything other than 10 rules out a conjugate pair."""
    return chern_data(T).characterizing_number + chern_data(cap).characterizing_number


def qhd_obstruction(g: GraphLike) -> bool:
    """True iff ``n = 10``, the necessary condition to compactify a rational homology disk."""
    return chern_data(g).characterizing_number == CHARACTERIZING_TOTAL


# ---------------------------------------------------------------------------
# Homology classes of the standard realization
# ---------------------------------------------------------------------------

def _e(leg: str, s: int, t: int) -> str:
    return f"e_{leg}{s}_{t}"


def _cls(*terms: Tuple[str, int]) -> HomologyClass:
    out: HomologyClass = {}
    for name, coeff in terms:
        out[name] = out.get(name, 0) + coeff
    return {name: c for name, c in out.items() if c}


def standard_realization_classes(k: int, l: int, m: int, j: int) -> Dict[str, HomologyClass]:
    """
    Homology classes realizing the dual blow up of ``<3; k+1,k; l+1,l; m+1,m>``
    at ``b_j`` inside a blow up of the projective plane.

    Classes are integer combinations of ``h`` (``h.h = 1``) and exceptional
    classes ``e_<leg><s>_<t>`` (``e.e = -1``), keyed by the vertex ids of
    ``dual_blow_up(build_star(3, ...), f"b{j}")``.

    Args:
        k, m: Lengths of the ``a`` and ``c`` legs (all -2), at least 1.
        l: Length of the ``b`` leg, at least 3.
        j: Position of the dual blown up vertex, ``2 <= j <= l - 1``.

    Raises:
        InvalidFraction: parameters out of range.
    """
    if k < 1 or m < 1 or not 2 <= j <= l - 1:
        raise InvalidFraction(f"need k, m >= 1 and 2 <= j <= l - 1, got k={k}, l={l}, m={m}, j={j}")
    classes: Dict[str, HomologyClass] = {}
    for leg, length in (("a", k), ("c", m)):
        classes[f"{leg}1"] = _cls((_e(leg, 1, 1), 1), (_e(leg, 1, 2), -1))
        for s in range(2, length + 1):
            classes[f"{leg}{s}"] = _cls((_e(leg, s - 1, 2), 1), (_e(leg, s, 2), -1))
    classes["o"] = _cls((_e("b", 1, 2), 1), (_e("a", 1, 1), -1), (_e("c", 1, 1), -1))
    for s in range(1, j - 1):
        classes[f"b{s}"] = _cls((_e("b", s + 1, 2), 1), (_e("b", s, 2), -1))
    classes[f"b{j - 1}"] = _cls((_e("b", j - 1, 1), 1), (_e("b", j - 1, 2), -1))
    classes[f"b{j}"] = _cls(("h", 1), (_e("b", j - 1, 1), -1), (_e("b", j + 1, 1), -1))
    classes[f"b{j + 1}"] = _cls((_e("b", j + 1, 1), 1), (_e("b", j + 1, 2), -1))
    for s in range(j + 2, l + 1):
        classes[f"b{s}"] = _cls((_e("b", s - 1, 2), 1), (_e("b", s, 2), -1))
    classes["p1"] = _cls(("h", 1))
    return classes


def class_intersection(x: HomologyClass, y: HomologyClass) -> int:
    total = 0
    for name, coeff in x.items():
        if name in y:
            total += coeff * y[name] * (1 if name == "h" else -1)
    return total


def class_intersection_matrix(classes: Dict[str, HomologyClass],
                              order: Sequence[str]) -> Tuple[Tuple[int, ...], ...]:
    """Pairwise intersections of ``classes`` in the given vertex order."""
    return tuple(tuple(class_intersection(classes[a], classes[b]) for b in order)
                 for a in order)
