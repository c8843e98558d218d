import math

import pytest

from conftest import chain
from plumbing_calculus.exceptions import InvalidFraction, NoConjugateDefined, NotInFamily
from plumbing_calculus.models import ContinuedFraction, EquivalenceKind, TypeName, TypeTag
from plumbing_calculus.tools.graph_core import intersection_matrix, isomorphic
from plumbing_calculus.tools.linalg import inertia
from plumbing_calculus.tools.moves import claw_extend, dual_blow_up, equivalent_graphs
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
    recognize_candidates,
    recognize_type,
)

PLATONIC_LEGS = [
    ((2, 1), (3, 1), (3, 1)),
    ((2, 1), (3, 2), (3, 1)),
    ((2, 1), (3, 1), (4, 3)),
    ((2, 1), (3, 2), (5, 2)),
    ((2, 1), (3, 2), (5, 4)),
    ((2, 1), (2, 1), (7, 4)),
    ((2, 1), (2, 1), (2, 1)),
]


def _coprime_pairs(limit):
    return [(n, lam) for n in range(2, limit) for lam in range(1, n) if math.gcd(n, lam) == 1]


def test_hj_expand():
    assert hj_expand(7, 4).entries == (2, 4)
    assert hj_expand(3, 1).entries == (3,)
    assert hj_expand(5, 4).entries == (2, 2, 2, 2)
    with pytest.raises(InvalidFraction):
        hj_expand(4, 2)
    with pytest.raises(InvalidFraction):
        hj_expand(3, 3)
    with pytest.raises(InvalidFraction):
        ContinuedFraction((2, 1))


@pytest.mark.parametrize("n, lam", _coprime_pairs(25))
def test_continued_fraction_identities(n, lam):
    expansion = hj_expand(n, lam).entries
    assert hj_eval(expansion) == (n, lam)
    if n > 2:
        dual = hj_expand(n, n - lam).entries
        # lengths of a fraction and its dual: k + k' = sum(d) - k + 1
        assert len(expansion) + len(dual) == sum(expansion) - len(expansion) + 1
    assert (lam * dual_parameter(n, lam)) % n == 1 % n
    assert hj_eval(tuple(reversed(expansion))) == (n, dual_parameter(n, lam) or 1)


def test_builders():
    assert [v.self_int for v in build_linear(7, 4).vertices] == [-2, -4]
    star = build_star(2, (2, 1), (3, 2), (5, 4))
    assert star.ids == ("o", "a1", "b1", "b2", "c1", "c2", "c3", "c4")
    assert [v.self_int for v in build_p1().vertices] == [0, 0]


def test_recognize_named_graphs(e8, e8_cap):
    assert recognize_type(e8).describe() == "N3<2;2,1;3,2;5,4>"
    assert recognize_type(e8_cap).describe() == "P3<1;2,1;3,1;5,1>"
    assert recognize_type(build_linear(7, 4)) == TypeTag(TypeName.N2, legs=((7, 4),))
    assert recognize_type(build_p1()).name == TypeName.P1
    assert recognize_type(chain(1)).name == TypeName.NONE
    assert recognize_type(chain(-1, -2)).name == TypeName.NONE


@pytest.mark.parametrize("n, lam", _coprime_pairs(12))
def test_linear_round_trips(n, lam):
    assert recognize_type(build_linear(n, lam)) == TypeTag(TypeName.N2, legs=((n, lam),))
    p2 = TypeTag(TypeName.P2, legs=((n, lam),))
    assert recognize_type(build_type(p2)) == p2
    length = len(hj_expand(n, lam).entries)
    for j in range(2, length):
        graph = dual_blow_up(build_linear(n, lam), f"d{j}")
        tag = recognize_type(graph)
        assert tag.name == TypeName.P4
        assert isomorphic(build_type(tag), graph)


@pytest.mark.parametrize("legs", PLATONIC_LEGS)
def test_star_round_trips(legs):
    ordered = tuple(sorted(legs))
    for y in (2, 3, 5):
        assert recognize_type(build_star(y, *legs)) == TypeTag(TypeName.N3, y=y, legs=ordered)
    for y in (1, 0, -2):
        assert recognize_type(build_star(y, *legs)) == TypeTag(TypeName.P3, y=y, legs=ordered)
    star = build_star(2, *legs)
    for vid in star.ids:
        graph = dual_blow_up(star, vid)
        tag = recognize_type(graph)
        assert tag.name == TypeName.P5
        assert tag.base == TypeTag(TypeName.N3, y=2, legs=ordered)
        assert isomorphic(build_type(tag), graph)


def test_conjugates_are_involutive():
    e8_tag = TypeTag(TypeName.N3, y=2, legs=((2, 1), (3, 2), (5, 4)))
    cap = conjugate_of(e8_tag)
    assert cap.describe() == "P3<1;2,1;3,1;5,1>"
    assert conjugate_of(cap) == e8_tag
    n2 = TypeTag(TypeName.N2, legs=((7, 4),))
    assert conjugate_of(n2) == TypeTag(TypeName.P2, legs=((7, 4),))
    assert conjugate_of(conjugate_of(n2)) == n2
    with pytest.raises(NoConjugateDefined):
        conjugate_of(TypeTag(TypeName.P1))


def test_type_signatures(rng):
    """Type P graphs have b2+ = 1, type N graphs are negative definite."""
    pairs = _coprime_pairs(15)
    for _ in range(200):
        n, lam = rng.choice(pairs)
        legs = rng.choice(PLATONIC_LEGS)
        y = rng.randint(2, 6)
        linear = build_linear(n, lam)
        star = build_star(y, *legs)
        negative = [linear, star]
        positive = [
            build_type(TypeTag(TypeName.P2, legs=((n, lam),))),
            dual_blow_up(linear, rng.choice(linear.ids)),
            build_type(conjugate_of(recognize_type(star))),
            dual_blow_up(star, rng.choice(star.ids)),
            build_p1(),
        ]
        for graph in negative:
            assert inertia(intersection_matrix(graph)).n_plus == 0
        for graph in positive:
            assert inertia(intersection_matrix(graph)).n_plus == 1


@pytest.mark.parametrize("y, leg", [(0, (3, 1)), (-1, (7, 4)), (-2, (2, 1)), (1, (5, 2))])
def test_dihedral_forms_convert_back(y, leg):
    star = build_star(y, (2, 1), (2, 1), leg)
    c_form = dihedral_form_convert(star)
    assert c_form.vertex("o").self_int == -1
    assert isomorphic(dihedral_form_convert(c_form), star)
    result = equivalent_graphs(star, c_form, budget=1, depth=4)
    assert result.kind == EquivalenceKind.PROOF


def test_dihedral_convert_rejects_other_stars(e8):
    with pytest.raises(NotInFamily):
        dihedral_form_convert(e8)


def test_candidates_undo_claws(tetrahedral_t3):
    claw = claw_extend(tetrahedral_t3, "b1")
    assert recognize_type(claw).name == TypeName.NONE
    tag, form = recognize_candidates(claw)
    assert tag.name == TypeName.P5
    assert form in candidate_forms(claw)
    assert isomorphic(form, dual_blow_up(tetrahedral_t3, "b1"))
