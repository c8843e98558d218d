from fractions import Fraction

import pytest

from conftest import chain, random_connected_matrix
from plumbing_calculus.exceptions import (
    DisconnectedGraphError,
    PreconditionFailed,
    PreconditionReason,
)
from plumbing_calculus.models import (
    AugmentedGraph,
    FlowchartKind,
    LiftVector,
    PlumbingGraph,
    SolutionKind,
    Vertex,
)
from plumbing_calculus.tools.graph_core import intersection_matrix
from plumbing_calculus.tools.gs_engine import (
    classify_flowchart,
    exact_on_boundary,
    lift_after_edge_blow_up,
    lift_after_vertex_blow_up,
    negative_gs,
    plan_inflation_path,
    positive_gs,
    trichotomy_witness,
    wrapping_numbers,
)
from plumbing_calculus.tools.linalg import inertia, is_negative_definite, matvec
from plumbing_calculus.tools.moves import blow_up_edge, blow_up_vertex


def _matrix_graph(m):
    """Graph whose intersection matrix is ``m`` (off-diagonals >= 0)."""
    ids = [f"v{i}" for i in range(1, len(m) + 1)]
    vertices = tuple(Vertex(vid, 0, m[i][i]) for i, vid in enumerate(ids))
    edges = tuple((ids[i], ids[j]) for i in range(len(m)) for j in range(i + 1, len(m))
                  for _ in range(m[i][j]))
    return PlumbingGraph(vertices, edges)


def test_exact_on_boundary():
    assert exact_on_boundary(chain(0, area=(1,))).kind == SolutionKind.EMPTY
    unique = exact_on_boundary(chain(2, 1, area=(3, 2)))
    assert unique.kind == SolutionKind.UNIQUE
    assert unique.particular == (1, 1)
    p1 = exact_on_boundary(chain(0, 0, area=(1, 1)))
    assert p1.particular == (1, 1)


def test_positive_gs():
    assert positive_gs(chain(2, 1, area=(3, 2))).z == (1, 1)
    assert positive_gs(chain(2, 1, area=(1, 2))) is None
    assert positive_gs(chain(0, 0, area=(2, 5))).z == (5, 2)


def test_positive_gs_on_affine_solution_set():
    g = PlumbingGraph((Vertex("v1", 0, 1), Vertex("v2", 0, 1)), (("v1", "v2"),))
    # Q = [[1, 1], [1, 1]]: lifts (2 - t, t)
    ag = AugmentedGraph(g, (2, 2))
    z = positive_gs(ag).z
    assert all(x > 0 for x in z)
    assert matvec(intersection_matrix(ag), z) == [2, 2]
    assert negative_gs(ag) is None


def test_negative_gs(e8):
    assert negative_gs(chain(-2, area=(1,))).z == (Fraction(-1, 2),)
    z = negative_gs(AugmentedGraph(e8, (1,) * 8)).z
    assert all(x < 0 for x in z)
    assert negative_gs(chain(2, 1, area=(3, 2))) is None


def test_wrapping_numbers_negate_the_lift():
    assert wrapping_numbers(LiftVector((Fraction(-1, 2), 3))) == (Fraction(1, 2), -3)


def test_negative_gs_matches_negative_definiteness(rng):
    checked = 0
    while checked < 1000:
        k = rng.randint(1, 6)
        m = [[0] * k for _ in range(k)]
        for i in range(k):
            m[i][i] = rng.randint(-4, 1)
            for j in range(i + 1, k):
                m[i][j] = m[j][i] = rng.choice((0, 0, 1, 1, 2))
        a = [rng.randint(1, 5) for _ in range(k)]
        try:
            graph = _matrix_graph(m)
        except DisconnectedGraphError:
            continue
        satisfied = negative_gs(AugmentedGraph(graph, a)) is not None
        assert satisfied == is_negative_definite(m), m
        checked += 1


def test_trichotomy_fixtures():
    assert trichotomy_witness([[1]]) == (1,)
    assert trichotomy_witness([[2, 1], [1, 1]]) == (1, 1)
    with pytest.raises(PreconditionFailed) as info:
        trichotomy_witness([[-1, 1], [1, -1]])
    assert info.value.reason == PreconditionReason.NO_POSITIVE_IMAGE


def test_trichotomy_rejects_its_preconditions(e8):
    with pytest.raises(PreconditionFailed) as info:
        trichotomy_witness(intersection_matrix(e8))
    assert info.value.reason == PreconditionReason.NEGATIVE_DEFINITE
    with pytest.raises(PreconditionFailed) as info:
        trichotomy_witness([[1, -1], [-1, 1]])
    assert info.value.reason == PreconditionReason.NEGATIVE_OFF_DIAGONAL


def test_trichotomy_is_sound(rng):
    checked = 0
    while checked < 1000:
        k = rng.randint(1, 6)
        m = random_connected_matrix(rng, k)
        if inertia(m).n_plus == 0:
            continue
        z = trichotomy_witness(m)
        assert all(x > 0 for x in z), m
        assert all(x > 0 for x in matvec(m, z)), m
        checked += 1


def test_flowchart_fixtures():
    concave = classify_flowchart(chain(2, area=(1,)))
    assert concave.kind == FlowchartKind.CONCAVE
    assert concave.witness.z == (Fraction(1, 2),)
    assert classify_flowchart(chain(0, area=(1,))).kind == FlowchartKind.NOT_EXACT_ON_BOUNDARY
    assert classify_flowchart(chain(-2, area=(1,))).kind == FlowchartKind.CONVEX_NEGATIVE_DEFINITE

    deformable = classify_flowchart(chain(2, 1, area=(1, 2)))
    assert deformable.kind == FlowchartKind.DEFORMABLE_TO_CONCAVE
    assert deformable.witness.z == (1, 1)
    assert deformable.target_area == (3, 2)


def test_example_is_concave(example21):
    verdict = classify_flowchart(example21)
    assert verdict.describe() == "Concave (positive GS witness z = 1,1)"


def test_inflation_path():
    ag = chain(2, 1, area=(1, 2))
    path = plan_inflation_path(ag)
    Q = intersection_matrix(ag)
    assert path.waypoints[0] == (-1, 3)
    assert path.waypoints[-1] == (4, 4)
    for waypoint in path.waypoints[1:]:
        assert all(x > 0 for x in matvec(Q, waypoint))
    for before, after in zip(path.waypoints, path.waypoints[1:]):
        assert sum(b != a for b, a in zip(before, after)) == 1
        assert all(a >= b for b, a in zip(before, after))


def test_inflation_path_needs_a_lift():
    with pytest.raises(PreconditionFailed) as info:
        plan_inflation_path(chain(0, area=(1,)))
    assert info.value.reason == PreconditionReason.NOT_EXACT


def test_lifts_follow_blow_ups(example21):
    z = positive_gs(example21)
    half = Fraction(1, 2)

    blown = blow_up_vertex(example21, "v1", half)
    lifted = lift_after_vertex_blow_up(example21, z, "v1", half)
    assert lifted.z == (1, 1, half)
    assert matvec(intersection_matrix(blown), lifted.z) == list(blown.area)

    blown = blow_up_edge(example21, "v1", "v2", half)
    lifted = lift_after_edge_blow_up(example21, z, "v1", "v2", half)
    assert lifted.z == (1, 1, Fraction(3, 2))
    assert matvec(intersection_matrix(blown), lifted.z) == list(blown.area)
