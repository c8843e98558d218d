import pytest

from conftest import chain
from plumbing_calculus.exceptions import InfinitePi1, NegativeDefinite, NotN3, VertexNotFound
from plumbing_calculus.models import (
    AugmentedGraph,
    CompactifyingKind,
    Mark,
    PlumbingGraph,
    RealizabilityKind,
    TypeName,
    Vertex,
)
from plumbing_calculus.tools.families import (
    b2_plus,
    capping_obstruction_spheres,
    compactifying_verdict,
    p5_realizable,
    realizable,
    vertex_mark,
)
from plumbing_calculus.tools.moves import dual_blow_up
from plumbing_calculus.tools.recognition import build_linear, build_p1, build_star
from plumbing_calculus.tools.tables import entry_graph, load_tables


def test_b2_plus(example21, e8, e8_cap):
    assert b2_plus(example21) == 2
    assert b2_plus(e8) == 0
    assert b2_plus(e8_cap) == 1


def test_capping_obstruction_spheres(e8):
    assert capping_obstruction_spheres(chain(2, 1)) == ("v1", "v2")
    assert capping_obstruction_spheres(chain(1, -2, 0)) == ("v1", "v3")
    assert capping_obstruction_spheres(chain(1, 1)) is None
    assert capping_obstruction_spheres(e8) is None


def test_vertex_marks(tetrahedral_t3):
    assert vertex_mark(tetrahedral_t3, "b1") == (Mark.Y, "tetrahedral table T3")
    assert vertex_mark(tetrahedral_t3, "o")[0] == Mark.X
    dihedral = build_star(2, (2, 1), (2, 1), (5, 2))
    assert vertex_mark(dihedral, "c1") == (Mark.Y, "dihedral rule")


def test_p5_realizable_on_tetrahedral(tetrahedral_t3):
    assert p5_realizable(tetrahedral_t3, "b1").kind == RealizabilityKind.YES
    assert p5_realizable(tetrahedral_t3, "a1").kind == RealizabilityKind.YES
    verdict = p5_realizable(tetrahedral_t3, "o")
    assert verdict.kind == RealizabilityKind.NO
    assert verdict.tag.name == TypeName.P5
    assert verdict.tag.vertex == "o"


def test_p5_on_e8_is_never_realizable(e8):
    for vid in e8.ids:
        assert p5_realizable(e8, vid).kind == RealizabilityKind.NO


def test_p5_away_from_y_two_is_realizable():
    star = build_star(3, (2, 1), (3, 2), (5, 4))
    for vid in star.ids:
        assert p5_realizable(star, vid).kind == RealizabilityKind.YES


def test_p5_dihedral_rule():
    first_three = build_star(2, (2, 1), (2, 1), (5, 2))
    assert p5_realizable(first_three, "c1").kind == RealizabilityKind.YES
    assert p5_realizable(first_three, "a1").kind == RealizabilityKind.YES
    assert p5_realizable(first_three, "o").kind == RealizabilityKind.NO
    first_two = build_star(2, (2, 1), (2, 1), (5, 3))
    assert p5_realizable(first_two, "c1").kind == RealizabilityKind.NO


def test_p5_errors(tetrahedral_t3):
    with pytest.raises(NotN3):
        p5_realizable(build_linear(7, 4), "d1")
    with pytest.raises(VertexNotFound):
        p5_realizable(tetrahedral_t3, "zz")


def test_realizable_yes(nonstandard):
    assert realizable(chain(0, 0)).kind == RealizabilityKind.YES
    assert realizable(chain(1)).kind == RealizabilityKind.YES
    verdict = realizable(nonstandard)
    assert verdict.kind == RealizabilityKind.YES
    assert verdict.tag.name == TypeName.P5


def test_realizable_no(tetrahedral_t3, example21):
    assert realizable(dual_blow_up(tetrahedral_t3, "o")).kind == RealizabilityKind.NO
    verdict = realizable(example21)
    assert verdict.kind == RealizabilityKind.NO
    assert "b2+ = 2" in verdict.reason


def test_realizable_preconditions(e8):
    with pytest.raises(NegativeDefinite):
        realizable(e8)
    with pytest.raises(InfinitePi1):
        realizable(build_star(2, (3, 1), (3, 1), (3, 1)))
    undecided = PlumbingGraph(
        (Vertex("o", 0, -2), Vertex("l1", 0, 2), Vertex("l2", 0, -3), Vertex("l3", 0, -3)),
        (("o", "l1"), ("o", "l2"), ("o", "l3")))
    assert realizable(undecided).kind == RealizabilityKind.UNKNOWN


def test_realizable_agrees_with_table_marks():
    for entry in load_tables().entries:
        graph, marks = entry_graph(entry)
        for vid in graph.ids:
            expected = RealizabilityKind.YES if marks[vid] == Mark.Y else RealizabilityKind.NO
            assert realizable(dual_blow_up(graph, vid)).kind == expected, (entry.name, vid)


def test_compactifying_verdicts(e8, example21):
    filling = compactifying_verdict(AugmentedGraph(e8, (1,) * 8))
    assert filling.kind == CompactifyingKind.FILLING_DIVISOR
    assert compactifying_verdict(example21).kind == CompactifyingKind.NEITHER
    capping = compactifying_verdict(AugmentedGraph(build_p1(), (1, 1)))
    assert capping.kind == CompactifyingKind.CAPPING_DIVISOR


def test_compactifying_needs_finite_group():
    ag = AugmentedGraph(build_star(2, (3, 1), (3, 1), (3, 1)), (1,) * 4)
    with pytest.raises(InfinitePi1):
        compactifying_verdict(ag)
