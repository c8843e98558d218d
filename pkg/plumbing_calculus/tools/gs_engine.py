"""GS criteria, the concave/convex flowchart and inflation path planning.

A lift of an augmented graph ``(G, a)`` is a rational ``z`` with
``Q z = a``. The positive GS criterion asks for a lift in ``(0, inf)^k``,
the negative one for a lift in ``(-inf, 0]^k``.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from plumbing_calculus.config import INFLATION_MAX_REFINEMENTS, TRICHOTOMY_MAX_HALVINGS
from plumbing_calculus.exceptions import (
    InflationRefinementExhausted,
    PreconditionFailed,
    PreconditionReason,
)
from plumbing_calculus.models import (
    AugmentedGraph,
    FlowchartKind,
    FlowchartVerdict,
    InflationPath,
    IntersectionMatrix,
    LiftVector,
    SolutionKind,
    SolutionSet,
)
from plumbing_calculus.tools.feasibility import Inequality, find_point
from plumbing_calculus.tools.graph_core import intersection_matrix
from plumbing_calculus.tools.linalg import (
    MatrixLike,
    _rows,
    is_negative_definite,
    matvec,
    solve,
)

logger = logging.getLogger(__name__)


def exact_on_boundary(ag: AugmentedGraph) -> SolutionSet:
    """All lifts of ``ag``; ``EMPTY`` means the form is not exact on the boundary."""
    return solve(intersection_matrix(ag), ag.area)


def _search_lift(solution: SolutionSet, strict_positive: bool) -> Optional[LiftVector]:
    if solution.kind == SolutionKind.EMPTY:
        return None
    z0 = solution.particular
    if solution.kind == SolutionKind.UNIQUE:
        ok = all(x > 0 for x in z0) if strict_positive else all(x <= 0 for x in z0)
        return LiftVector(z0) if ok else None

    # z = z0 + sum_j t_j * kernel_j
    basis = solution.kernel
    sign = 1 if strict_positive else -1
    constraints = [
        Inequality(tuple(sign * v[i] for v in basis), sign * z0[i], strict_positive)
        for i in range(len(z0))
    ]
    t = find_point(constraints, len(basis))
    if t is None:
        return None
    z = [z0[i] + sum((tj * v[i] for tj, v in zip(t, basis)), Fraction(0))
         for i in range(len(z0))]
    return LiftVector(tuple(z))


def positive_gs(ag: AugmentedGraph) -> Optional[LiftVector]:
    """
    Decide the positive GS criterion exactly.

    Args:
        ag: Augmented graph.

    Returns:
        A lift with every entry > 0, or None when no such lift exists
        (NotSatisfied). Affine solution sets are decided by an exact linear
        program over the kernel parameters.

    Example:
        >>> positive_gs(parse_graph("v1 g0 s2 a3; v2 g0 s1 a2; e v1 v2")).z
        (Fraction(1, 1), Fraction(1, 1))
    """
    return _search_lift(exact_on_boundary(ag), strict_positive=True)


def negative_gs(ag: AugmentedGraph) -> Optional[LiftVector]:
    """A lift with every entry <= 0, or None when the criterion fails."""
    return _search_lift(exact_on_boundary(ag), strict_positive=False)


def wrapping_numbers(z: LiftVector) -> Tuple[Fraction, ...]:
    return tuple(-x for x in z.z)


# ---------------------------------------------------------------------------
# Trichotomy witness
# ---------------------------------------------------------------------------

def _schur_eliminate(m: List[List[Fraction]], k: int) -> List[List[Fraction]]:
    keep = [i for i in range(len(m)) if i != k]
    pivot = m[k][k]
    return [[m[i][j] - m[i][k] * m[k][j] / pivot for j in keep] for i in keep]


def _trichotomy(m: List[List[Fraction]]) -> List[Fraction]:
    size = len(m)
    negative = next((i for i in range(size) if m[i][i] < 0), None)
    if negative is None:
        if any(all(x == 0 for x in row) for row in m):
            raise PreconditionFailed(PreconditionReason.NO_POSITIVE_IMAGE,
                                     "a zero row remains after reduction")
        return [Fraction(1)] * size

    k = negative
    reduced = _trichotomy(_schur_eliminate(m, k))
    others = [i for i in range(size) if i != k]
    weights = {i: -m[k][i] / m[k][k] for i in others}
    pull = sum((weights[i] * y for i, y in zip(others, reduced)), Fraction(0))
    if pull == 0:
        raise PreconditionFailed(PreconditionReason.DECOUPLED_NEGATIVE_VERTEX,
                                 "a negative vertex has no remaining neighbour")

    # (Q y)_k = q_kk * epsilon, so epsilon must be negative and close to 0
    epsilon = -pull / 2
    for _ in range(TRICHOTOMY_MAX_HALVINGS):
        y = list(reduced)
        y.insert(k, pull + epsilon)
        if y[k] > 0 and all(v > 0 for v in matvec(m, y)):
            return y
        epsilon /= 2
    raise PreconditionFailed(PreconditionReason.NO_POSITIVE_IMAGE,
                             "back-substitution did not reach a positive image")


def trichotomy_witness(Q: MatrixLike) -> Tuple[Fraction, ...]:
    """
    Construct ``z > 0`` with ``Q z > 0`` for a non-negative-definite Q.

    Induction on k: with all diagonal entries >= 0 the all-ones vector
    works (when no row vanishes); otherwise a vertex with ``q_kk < 0`` is
    eliminated by congruence, the reduced matrix is solved recursively and
    ``z_k`` is chosen just below ``sum_i l_i z_i`` with
    ``l_i = -q_ki / q_kk``.

    Args:
        Q: Symmetric matrix with non-negative off-diagonal entries.

    Returns:
        The witness vector z.

    Raises:
        PreconditionFailed: NEGATIVE_DEFINITE, NEGATIVE_OFF_DIAGONAL,
            NO_POSITIVE_IMAGE or DECOUPLED_NEGATIVE_VERTEX.

    Example:
        >>> trichotomy_witness([[2, 1], [1, 1]])
        (Fraction(1, 1), Fraction(1, 1))
    """
    rows = _rows(Q)
    if any(rows[i][j] < 0 for i in range(len(rows)) for j in range(len(rows)) if i != j):
        raise PreconditionFailed(PreconditionReason.NEGATIVE_OFF_DIAGONAL)
    if is_negative_definite(rows):
        raise PreconditionFailed(PreconditionReason.NEGATIVE_DEFINITE)
    z = _trichotomy([[Fraction(x) for x in row] for row in rows])
    return tuple(z)


# ---------------------------------------------------------------------------
# Flowchart
# ---------------------------------------------------------------------------

def classify_flowchart(ag: AugmentedGraph) -> FlowchartVerdict:
    """
    Walk the concave/convex flowchart.

    NotExactOnBoundary when ``Q z = a`` has no solution; otherwise
    ConvexNegativeDefinite when Q is negative definite; otherwise Concave
    when the positive GS criterion holds; otherwise DeformableToConcave
    with target area ``Q z_bar`` for the trichotomy witness ``z_bar``.
    """
    solution = exact_on_boundary(ag)
    if solution.kind == SolutionKind.EMPTY:
        return FlowchartVerdict(FlowchartKind.NOT_EXACT_ON_BOUNDARY)
    Q = intersection_matrix(ag)
    if is_negative_definite(Q):
        return FlowchartVerdict(FlowchartKind.CONVEX_NEGATIVE_DEFINITE)
    witness = positive_gs(ag)
    if witness is not None:
        return FlowchartVerdict(FlowchartKind.CONCAVE, witness=witness)
    z_bar = trichotomy_witness(Q)
    target = tuple(matvec(Q, z_bar))
    return FlowchartVerdict(FlowchartKind.DEFORMABLE_TO_CONCAVE,
                            witness=LiftVector(z_bar), target_area=target)


# ---------------------------------------------------------------------------
# Inflation path
# ---------------------------------------------------------------------------

def _staircase(start: Sequence[Fraction], end: Sequence[Fraction], steps: int):
    increments = [(e - s) / steps for s, e in zip(start, end)]
    waypoints = [tuple(start)]
    current = list(start)
    for _ in range(steps):
        for i, d in enumerate(increments):
            if d == 0:
                continue
            current[i] += d
            waypoints.append(tuple(current))
    return waypoints


def plan_inflation_path(ag: AugmentedGraph) -> InflationPath:
    """
    Plan a staircase path from a lift ``z`` to ``c * z_bar``.

    ``z_bar`` is the trichotomy witness and ``c`` is the least positive
    integer with ``c * z_bar > z`` entrywise. The path increases one
    coordinate per step; the number of round-robin rounds doubles until
    every waypoint after the first has a strictly positive image.

    Raises:
        PreconditionFailed: NOT_EXACT when there is no lift, or as in
            :func:`trichotomy_witness`.
        InflationRefinementExhausted: refinement cap reached.
    """
    solution = exact_on_boundary(ag)
    if solution.kind == SolutionKind.EMPTY:
        raise PreconditionFailed(PreconditionReason.NOT_EXACT)
    Q: IntersectionMatrix = intersection_matrix(ag)
    z = solution.particular
    z_bar = trichotomy_witness(Q)
    scale = max(1, math.floor(max(zi / zb for zi, zb in zip(z, z_bar))) + 1)
    target = tuple(scale * x for x in z_bar)

    steps = 1
    for attempt in range(INFLATION_MAX_REFINEMENTS):
        waypoints = _staircase(z, target, steps)
        if all(all(v > 0 for v in matvec(Q, w)) for w in waypoints[1:]):
            logger.debug("inflation path found with %d rounds after %d refinements",
                         steps, attempt)
            return InflationPath(tuple(waypoints))
        steps *= 2
    logger.info("inflation path planning gave up after %d refinements",
                INFLATION_MAX_REFINEMENTS)
    raise InflationRefinementExhausted(
        f"no positive staircase within {INFLATION_MAX_REFINEMENTS} refinements")


# ---------------------------------------------------------------------------
# Lifts after blow-ups
# ---------------------------------------------------------------------------

def lift_after_vertex_blow_up(ag: AugmentedGraph, z: LiftVector, vertex: str,
                              a0: Fraction) -> LiftVector:
    """Lift of the vertex blow-up at ``vertex`` with weight ``a0``.

    The new vertex is appended last and gets ``z_v - a0``; positive when
    ``a0 < z_v``.
    """
    index = ag.graph.index_of(vertex)
    return LiftVector(z.z + (z.z[index] - Fraction(a0),))


def lift_after_edge_blow_up(ag: AugmentedGraph, z: LiftVector, u: str, w: str,
                            a0: Fraction) -> LiftVector:
    """Lift of the edge blow-up at ``u-w``: the new vertex gets ``z_u + z_w - a0``."""
    zu = z.z[ag.graph.index_of(u)]
    zw = z.z[ag.graph.index_of(w)]
    return LiftVector(z.z + (zu + zw - Fraction(a0),))
