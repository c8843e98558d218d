"""Continued fractions, family builders and structural type recognition.

Linear graphs are ``<n, lam>`` with self-intersections ``-d_i`` for
``n/lam = [d_1, ..., d_k]``. Stars are ``<y; n1,l1; n2,l2; n3,l3>`` with
centre ``-y`` and each leg read from the centre outward.
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

from plumbing_calculus.exceptions import (
    InvalidFraction,
    NoConjugateDefined,
    NotInFamily,
    NotUndoable,
)
from plumbing_calculus.models import (
    ContinuedFraction,
    PlumbingGraph,
    TypeName,
    TypeTag,
    Vertex,
)
from plumbing_calculus.tools.graph_core import (
    GraphLike,
    branch_points,
    branches_at,
    chain_order,
    degree,
    is_linear,
    is_tree,
    isomorphic,
    neighbors,
    plain,
)
from plumbing_calculus.tools.moves import (
    claw_to_dual,
    dual_blow_up,
    minimal_model,
    undo_dual_blow_up,
)

logger = logging.getLogger(__name__)

Leg = Tuple[int, int]

# second and third legs of non-dihedral stars; the first is always (2, 1)
PLATONIC_PAIRS = {(3, 3), (3, 4), (3, 5)}


# ---------------------------------------------------------------------------
# Hirzebruch-Jung continued fractions
# ---------------------------------------------------------------------------

def hj_expand(n: int, lam: int) -> ContinuedFraction:
    """
    Expand ``n/lam = d1 - 1/(d2 - 1/(...))`` with every ``d_i >= 2``.

    Args:
        n: Numerator.
        lam: Denominator with ``0 < lam < n`` and ``gcd(n, lam) = 1``.

    Returns:
        ContinuedFraction with the unique expansion.

    Raises:
        InvalidFraction: parameters out of range or not coprime.

    Example:
        >>> hj_expand(7, 4).entries
        (2, 4)
    """
    if not (0 < lam < n) or math.gcd(n, lam) != 1:
        raise InvalidFraction(f"need 0 < lam < n with gcd 1, got n={n}, lam={lam}")
    entries = []
    while True:
        d = -(-n // lam)
        entries.append(d)
        remainder = d * lam - n
        if remainder == 0:
            return ContinuedFraction(tuple(entries))
        n, lam = lam, remainder


def hj_eval(cf) -> Tuple[int, int]:
    """Evaluate a continued fraction (or a plain sequence of entries) to ``(n, lam)``."""
    entries = cf.entries if isinstance(cf, ContinuedFraction) else ContinuedFraction(tuple(cf)).entries
    p, q = entries[-1], 1
    for d in reversed(entries[:-1]):
        p, q = d * p - q, p
    return p, q


def dual_parameter(n: int, lam: int) -> int:
    """``lam*`` with ``lam * lam* = 1 mod n``: the chain read from the other end."""
    return pow(lam, -1, n) if n > 1 else 0


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build_linear(n: int, lam: int, prefix: str = "d") -> PlumbingGraph:
    """
    Chain ``(-d1) - (-d2) - ... - (-dk)`` for ``n/lam``, ids ``d1..dk``.

    Example:
        >>> [v.self_int for v in build_linear(7, 4).vertices]
        [-2, -4]
    """
    entries = hj_expand(n, lam).entries
    ids = [f"{prefix}{i}" for i in range(1, len(entries) + 1)]
    vertices = tuple(Vertex(vid, 0, -d) for vid, d in zip(ids, entries))
    return PlumbingGraph(vertices, tuple(zip(ids, ids[1:])))


def build_star(y: int, leg1: Leg, leg2: Leg, leg3: Leg) -> PlumbingGraph:
    """
    Star with centre ``o`` of self-intersection ``-y`` and three legs.

    Leg vertices are ``a1, a2, ...``, ``b1, ...`` and ``c1, ...`` numbered
    from the centre outward.
    """
    vertices = [Vertex("o", 0, -y)]
    edges = []
    for prefix, (n, lam) in zip("abc", (leg1, leg2, leg3)):
        previous = "o"
        for i, d in enumerate(hj_expand(n, lam).entries, start=1):
            vid = f"{prefix}{i}"
            vertices.append(Vertex(vid, 0, -d))
            edges.append((previous, vid))
            previous = vid
    return PlumbingGraph(tuple(vertices), tuple(edges))


def build_p1() -> PlumbingGraph:
    return PlumbingGraph((Vertex("d1", 0, 0), Vertex("d2", 0, 0)), (("d1", "d2"),))


def build_type(tag: TypeTag) -> PlumbingGraph:
    """
    Rebuild the graph a tag describes.

    P2(n, lam) is the dual blow up of ``<n, n - lam>`` at ``d1``; P4 and
    P5 dual blow up the base's built graph at ``tag.vertex``.

    Raises:
        NotInFamily: for ``TypeName.NONE`` or incomplete parameters.
    """
    name = tag.name
    if name == TypeName.N1:
        return PlumbingGraph()
    if name == TypeName.P1:
        return build_p1()
    if name == TypeName.N2 and len(tag.legs) == 1:
        return build_linear(*tag.legs[0])
    if name == TypeName.P2 and len(tag.legs) == 1:
        n, lam = tag.legs[0]
        return dual_blow_up(build_linear(n, n - lam), "d1")
    if name in (TypeName.N3, TypeName.P3) and len(tag.legs) == 3 and tag.y is not None:
        return build_star(tag.y, *tag.legs)
    if name in (TypeName.P4, TypeName.P5) and tag.base is not None and tag.vertex:
        return dual_blow_up(build_type(tag.base), tag.vertex)
    raise NotInFamily(f"cannot build a graph for {tag.describe()}")


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------

def _chain_fraction(graph: PlumbingGraph, ids: Sequence[str]) -> Optional[Leg]:
    entries = [-graph.vertex(vid).self_int for vid in ids]
    if any(d < 2 for d in entries):
        return None
    return hj_eval(entries)


def _star_legs(graph: PlumbingGraph) -> Optional[Tuple[str, List[Leg]]]:
    """Centre and leg fractions of a one-branch-point tree with three legs."""
    points = branch_points(graph)
    if len(points) != 1 or degree(graph, points[0]) != 3:
        return None
    center = points[0]
    legs = []
    for branch in branches_at(graph, center):
        start = next(vid for vid in neighbors(graph, center) if branch.has_vertex(vid))
        leg = _chain_fraction(graph, chain_order(branch, start))
        if leg is None:
            return None
        legs.append(leg)
    return center, sorted(legs)


def is_platonic(legs: Sequence[Leg]) -> bool:
    """Sorted legs of a quotient-singularity star: (2,1) first, then (2,n) or a platonic pair."""
    ns = sorted(n for n, _ in legs)
    return (len(ns) == 3 and ns[0] == 2
            and (ns[1] == 2 or (ns[1], ns[2]) in PLATONIC_PAIRS))


def is_dihedral(legs: Sequence[Leg]) -> bool:
    ns = sorted(n for n, _ in legs)
    return ns[0] == 2 and ns[1] == 2


def _recognize_negative(graph: PlumbingGraph) -> Optional[TypeTag]:
    if graph.k == 0:
        return TypeTag(TypeName.N1)
    if is_linear(graph):
        leg = _chain_fraction(graph, chain_order(graph))
        return None if leg is None else TypeTag(TypeName.N2, legs=(leg,))
    star = _star_legs(graph)
    if star is None:
        return None
    center, legs = star
    y = -graph.vertex(center).self_int
    if y >= 2 and is_platonic(legs):
        return TypeTag(TypeName.N3, y=y, legs=tuple(legs))
    return None


def _recognize_p3(graph: PlumbingGraph) -> Optional[TypeTag]:
    star = _star_legs(graph)
    if star is None:
        return None
    center, legs = star
    y = -graph.vertex(center).self_int
    if y <= 1 and is_platonic(legs):
        return TypeTag(TypeName.P3, y=y, legs=tuple(legs))
    return None


def dual_vertex(base: TypeTag, graph: GraphLike) -> Optional[str]:
    """First vertex of ``build_type(base)`` whose dual blow up is isomorphic to ``graph``."""
    built = build_type(base)
    for vid in built.ids:
        if isomorphic(dual_blow_up(built, vid), graph):
            return vid
    return None


def _recognize_dual(graph: PlumbingGraph) -> List[TypeTag]:
    """P2 / P4 / P5 readings of ``graph``, one per removable +1 leaf."""
    found = []
    for vertex in graph.vertices:
        try:
            base, v = undo_dual_blow_up(graph, vertex.id)
        except NotUndoable:
            continue
        base_tag = _recognize_negative(base)
        if base_tag is None or base_tag.name == TypeName.N1:
            continue
        if base_tag.name == TypeName.N2 and degree(base, v) <= 1:
            n, mu = _chain_fraction(base, chain_order(base, v))
            found.append(TypeTag(TypeName.P2, legs=((n, n - mu),)))
            continue
        name = TypeName.P4 if base_tag.name == TypeName.N2 else TypeName.P5
        vid = dual_vertex(base_tag, graph)
        if vid is not None:
            found.append(TypeTag(name, base=base_tag, vertex=vid))
    return found


def recognize_type(g: GraphLike) -> TypeTag:
    """
    Match a genus 0 tree against the eight type definitions.

    Clauses are tried in the order N1, N2, N3, P1, P2, P4, P3, P5. Only the
    literal shape is matched; equivalent graphs are the concern of
    :func:`plumbing_calculus.tools.families.realizable`.

    Returns:
        TypeTag with the recovered parameters, or ``TypeName.NONE``.

    Example:
        >>> recognize_type(build_star(2, (2, 1), (3, 2), (5, 4))).describe()
        'N3<2;2,1;3,2;5,4>'
    """
    graph = plain(g)
    if not is_tree(graph) or any(v.genus != 0 for v in graph.vertices):
        return TypeTag(TypeName.NONE)
    negative = _recognize_negative(graph)
    if negative is not None:
        return negative
    if graph.k == 2 and all(v.self_int == 0 for v in graph.vertices):
        return TypeTag(TypeName.P1)
    duals = _recognize_dual(graph)
    for name in (TypeName.P2, TypeName.P4):
        match = next((t for t in duals if t.name == name), None)
        if match is not None:
            return match
    p3 = _recognize_p3(graph)
    if p3 is not None:
        return p3
    match = next((t for t in duals if t.name == TypeName.P5), None)
    return match if match is not None else TypeTag(TypeName.NONE)


# ---------------------------------------------------------------------------
# Conjugates and the dihedral presentation
# ---------------------------------------------------------------------------

def conjugate_of(tag: TypeTag) -> TypeTag:
    """
    Conjugate type: N2(n, lam) <-> P2(n, lam) and
    N3(y; n_i, lam_i) <-> P3(3 - y; n_i, n_i - lam_i).

    Raises:
        NoConjugateDefined: for N1, P1, P4, P5 and None.

    Example:
        >>> conjugate_of(TypeTag(TypeName.N3, y=2, legs=((2, 1), (3, 2), (5, 4)))).describe()
        'P3<1;2,1;3,1;5,1>'
    """
    if tag.name == TypeName.N2:
        return TypeTag(TypeName.P2, legs=tag.legs)
    if tag.name == TypeName.P2:
        return TypeTag(TypeName.N2, legs=tag.legs)
    if tag.name in (TypeName.N3, TypeName.P3):
        legs = tuple(sorted((n, n - lam) for n, lam in tag.legs))
        name = TypeName.P3 if tag.name == TypeName.N3 else TypeName.N3
        return TypeTag(name, y=3 - tag.y, legs=legs)
    raise NoConjugateDefined(f"{tag.name.value} graphs have no conjugate type")


def _dihedral_shape(graph: PlumbingGraph):
    """Centre, the long leg's ids and entries of a star with two (-2) legs."""
    points = branch_points(graph)
    if (not is_tree(graph) or any(v.genus for v in graph.vertices)
            or len(points) != 1 or degree(graph, points[0]) != 3):
        return None
    center = points[0]
    legs = []
    for branch in branches_at(graph, center):
        start = next(vid for vid in neighbors(graph, center) if branch.has_vertex(vid))
        ids = chain_order(branch, start)
        legs.append((ids, [-graph.vertex(vid).self_int for vid in ids]))
    short = [leg for leg in legs if leg[1] == [2]]
    if len(short) < 2:
        return None
    long_leg = next((leg for leg in legs if leg[1] != [2]), short[-1])
    return center, long_leg[1]


def dihedral_form_convert(g: GraphLike) -> PlumbingGraph:
    """
    Switch between ``<y;2,1;2,1;n,lam>`` (``y <= 1``) and the
    ``(c, c1, ..., ck)`` presentation.

    The ``(c, ...)`` graph is a ``-1`` centre with two ``-2`` legs and a
    long leg ``-(c-1), -c1, ..., -ck``. The two correspond when
    ``[c, c1, ..., ck] = [2]*(1 - y) + [d1 + 1, d2, ..., dk]`` with
    ``n/lam = [d1, ..., dk]``. A long leg starting with a -1 vertex is read
    as the ``(c, ...)`` form; otherwise the star is read as the P3 form.
    For ``y = 1`` both forms are the same graph.

    Raises:
        NotInFamily: not a dihedral star of either form.
    """
    graph = plain(g)
    shape = _dihedral_shape(graph)
    if shape is None:
        raise NotInFamily("not a star with two (-2) legs")
    center, entries = shape
    y = -graph.vertex(center).self_int

    if y == 1 and entries[0] == 1:
        c_entries = [entries[0] + 1] + entries[1:]
        if any(d < 2 for d in c_entries):
            raise NotInFamily("(c, c1, ..., ck) entries must be >= 2")
        twos = 0
        while twos < len(c_entries) and c_entries[twos] == 2:
            twos += 1
        if twos == len(c_entries):
            raise NotInFamily("(c, c1, ..., ck) has no entry >= 3")
        d = [c_entries[twos] - 1] + c_entries[twos + 1:]
        return build_star(1 - twos, (2, 1), (2, 1), hj_eval(d))

    if y > 1 or any(d < 2 for d in entries):
        raise NotInFamily(f"centre -{y} and long leg {entries} is not a dihedral (P3) form")
    c_entries = [2] * (1 - y) + [entries[0] + 1] + entries[1:]
    long_leg = [c_entries[0] - 1] + c_entries[1:]
    vertices = [Vertex("o", 0, -1), Vertex("a1", 0, -2), Vertex("b1", 0, -2)]
    edges = [("o", "a1"), ("o", "b1")]
    previous = "o"
    for i, d in enumerate(long_leg, start=1):
        vertices.append(Vertex(f"c{i}", 0, -d))
        edges.append((previous, f"c{i}"))
        previous = f"c{i}"
    logger.debug("dihedral form y=%d converted to (c, ...) = %s", y, c_entries)
    return PlumbingGraph(tuple(vertices), tuple(edges))


# ---------------------------------------------------------------------------
# Recognition up to cheap rewrites
# ---------------------------------------------------------------------------

def candidate_forms(g: GraphLike) -> List[PlumbingGraph]:
    """
    ``g``, its minimal model, and both with every ``(0)-(0)`` claw turned
    into the equivalent dual blow up; dihedral ``(c, ...)`` stars are added
    in their P3 form.
    """
    graph = plain(g)
    forms = [graph]
    if is_tree(graph) and not any(v.genus for v in graph.vertices):
        reduced, trace = minimal_model(graph)
        if len(trace):
            forms.append(reduced)
    for form in list(forms):
        for vertex in form.vertices:
            try:
                converted, _ = claw_to_dual(form, vertex.id)
            except NotUndoable:
                continue
            forms.append(converted)
    for form in list(forms):
        try:
            forms.append(dihedral_form_convert(form))
        except NotInFamily:
            continue
    return forms


def recognize_candidates(g: GraphLike) -> Tuple[TypeTag, Optional[PlumbingGraph]]:
    """First type found among :func:`candidate_forms` and the form it was found on."""
    for form in candidate_forms(g):
        tag = recognize_type(form)
        if tag.name != TypeName.NONE:
            return tag, form
    return TypeTag(TypeName.NONE), None
