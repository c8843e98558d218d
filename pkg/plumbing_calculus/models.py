"""Data models for plumbing-calculus.

Every record is immutable after construction; ``to_dict`` produces the
JSON shape used by the CLI (rationals as ``{"num", "den"}`` strings).
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

import networkx as nx

from plumbing_calculus.config import DEFAULT_MAX_Y
from plumbing_calculus.exceptions import (
    DisconnectedGraphError,
    DuplicateVertexError,
    InvalidFraction,
    InvalidGraphError,
    NonPositiveAreaError,
    SelfLoopError,
    UnknownVertexError,
    VertexNotFound,
)

RationalVector = Tuple[Fraction, ...]


def rational_to_dict(value: Fraction) -> Dict[str, str]:
    value = Fraction(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def rational_from_dict(data: Mapping[str, str]) -> Fraction:
    return Fraction(int(data["num"]), int(data["den"]))


def format_rational(value: Fraction) -> str:
    """Render ``p/q`` (or ``p`` for integers); never a decimal."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_vector(values) -> str:
    return ",".join(format_rational(v) for v in values)


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Vertex:
    """A divisor component: genus and self-intersection number."""
    id: str
    genus: int = 0
    self_int: int = 0

    def __post_init__(self):
        if self.genus < 0:
            raise InvalidGraphError(f"vertex {self.id}: genus must be >= 0")

    def with_self_int(self, self_int: int) -> "Vertex":
        return Vertex(self.id, self.genus, self_int)

    def to_dict(self) -> dict:
        return {"id": self.id, "genus": self.genus, "self_int": self.self_int}


@dataclass(frozen=True)
class PlumbingGraph:
    """Connected multigraph without self-loops.

    Vertex order is declaration order and fixes matrix row order. Edges
    are normalized so equal graphs compare equal regardless of how the
    edge list was written.
    """
    vertices: Tuple[Vertex, ...] = ()
    edges: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        vertices = tuple(self.vertices)
        ids = [v.id for v in vertices]
        if len(set(ids)) != len(ids):
            duplicated = sorted({i for i in ids if ids.count(i) > 1})
            raise DuplicateVertexError(f"duplicate vertex ids: {', '.join(duplicated)}")
        index = {vid: i for i, vid in enumerate(ids)}

        normalized = []
        for u, w in self.edges:
            for end in (u, w):
                if end not in index:
                    raise UnknownVertexError(f"edge refers to unknown vertex {end}")
            if u == w:
                raise SelfLoopError(f"self-loop at vertex {u}")
            normalized.append((u, w) if index[u] < index[w] else (w, u))
        normalized.sort(key=lambda e: (index[e[0]], index[e[1]]))

        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(normalized))

        if len(vertices) > 1:
            skeleton = nx.Graph()
            skeleton.add_nodes_from(ids)
            skeleton.add_edges_from(normalized)
            if not nx.is_connected(skeleton):
                raise DisconnectedGraphError(
                    f"graph has {nx.number_connected_components(skeleton)} components")

    @property
    def k(self) -> int:
        return len(self.vertices)

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def has_vertex(self, vid: str) -> bool:
        return any(v.id == vid for v in self.vertices)

    def index_of(self, vid: str) -> int:
        for i, v in enumerate(self.vertices):
            if v.id == vid:
                return i
        raise VertexNotFound(f"vertex {vid} not in graph")

    def vertex(self, vid: str) -> Vertex:
        return self.vertices[self.index_of(vid)]

    def to_dict(self) -> dict:
        return {
            "vertices": [v.to_dict() for v in self.vertices],
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class AugmentedGraph:
    """A plumbing graph with a strictly positive area per vertex."""
    graph: PlumbingGraph
    area: RationalVector

    def __post_init__(self):
        area = tuple(Fraction(a) for a in self.area)
        if len(area) != self.graph.k:
            raise InvalidGraphError(
                f"{len(area)} areas given for {self.graph.k} vertices")
        for vid, a in zip(self.graph.ids, area):
            if a <= 0:
                raise NonPositiveAreaError(
                    f"vertex {vid}: area {format_rational(a)} is not positive")
        object.__setattr__(self, "area", area)

    @classmethod
    def from_map(cls, graph: PlumbingGraph, area: Mapping[str, Fraction]) -> "AugmentedGraph":
        missing = [vid for vid in graph.ids if vid not in area]
        extra = [vid for vid in area if not graph.has_vertex(vid)]
        if missing or extra:
            raise InvalidGraphError(
                f"area map mismatch (missing: {missing}, unknown: {extra})")
        return cls(graph, tuple(Fraction(area[vid]) for vid in graph.ids))

    def area_of(self, vid: str) -> Fraction:
        return self.area[self.graph.index_of(vid)]

    def area_map(self) -> Dict[str, Fraction]:
        return dict(zip(self.graph.ids, self.area))

    def to_dict(self) -> dict:
        data = self.graph.to_dict()
        for entry, a in zip(data["vertices"], self.area):
            entry["area"] = rational_to_dict(a)
        return data


@dataclass(frozen=True)
class IntersectionMatrix:
    entries: Tuple[Tuple[int, ...], ...]
    vertex_order: Tuple[str, ...]

    @property
    def k(self) -> int:
        return len(self.vertex_order)

    def rows(self) -> List[List[int]]:
        return [list(r) for r in self.entries]

    def to_dict(self) -> dict:
        return {"vertex_order": list(self.vertex_order),
                "entries": [list(r) for r in self.entries]}


# ---------------------------------------------------------------------------
# Linear algebra results
# ---------------------------------------------------------------------------

class SolutionKind(str, Enum):
    EMPTY = "empty"
    UNIQUE = "unique"
    AFFINE = "affine"


@dataclass(frozen=True)
class SolutionSet:
    """Solutions of ``Q z = a``: ``particular + span(kernel)``."""
    kind: SolutionKind
    particular: Optional[RationalVector] = None
    kernel: Tuple[RationalVector, ...] = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "particular": None if self.particular is None
            else [rational_to_dict(x) for x in self.particular],
            "kernel": [[rational_to_dict(x) for x in v] for v in self.kernel],
        }


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_zero: int
    n_minus: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.n_plus, self.n_zero, self.n_minus)

    def to_dict(self) -> dict:
        return {"n_plus": self.n_plus, "n_zero": self.n_zero, "n_minus": self.n_minus}


# ---------------------------------------------------------------------------
# GS engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LiftVector:
    """A lift ``z`` with ``Q z = a``; wrapping numbers are ``-z``."""
    z: RationalVector

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(Fraction(x) for x in self.z))

    def to_dict(self) -> dict:
        return {"z": [rational_to_dict(x) for x in self.z]}


class FlowchartKind(str, Enum):
    NOT_EXACT_ON_BOUNDARY = "not_exact_on_boundary"
    CONVEX_NEGATIVE_DEFINITE = "convex_negative_definite"
    CONCAVE = "concave"
    DEFORMABLE_TO_CONCAVE = "deformable_to_concave"


@dataclass(frozen=True)
class FlowchartVerdict:
    kind: FlowchartKind
    witness: Optional[LiftVector] = None
    target_area: Optional[RationalVector] = None

    def describe(self) -> str:
        if self.kind == FlowchartKind.NOT_EXACT_ON_BOUNDARY:
            return "NotExactOnBoundary (Q z = a has no solution)"
        if self.kind == FlowchartKind.CONVEX_NEGATIVE_DEFINITE:
            return "ConvexNegativeDefinite"
        if self.kind == FlowchartKind.CONCAVE:
            return f"Concave (positive GS witness z = {format_vector(self.witness.z)})"
        return (f"DeformableToConcave (target area {format_vector(self.target_area)}, "
                f"witness z = {format_vector(self.witness.z)})")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "witness": None if self.witness is None else self.witness.to_dict()["z"],
            "target_area": None if self.target_area is None
            else [rational_to_dict(x) for x in self.target_area],
        }


@dataclass(frozen=True)
class InflationPath:
    """Staircase from the lift to a scaled trichotomy witness."""
    waypoints: Tuple[RationalVector, ...]

    @property
    def segments(self) -> int:
        return max(len(self.waypoints) - 1, 0)

    def to_dict(self) -> dict:
        return {"waypoints": [[rational_to_dict(x) for x in w] for w in self.waypoints]}


# ---------------------------------------------------------------------------
# Moves
# ---------------------------------------------------------------------------

class MoveKind(str, Enum):
    BLOW_UP_VERTEX = "blow_up_vertex"
    BLOW_UP_EDGE = "blow_up_edge"
    BLOW_DOWN = "blow_down"
    CLAW_EXTEND = "claw_extend"
    DUAL_BLOW_UP = "dual_blow_up"


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    vertex: Optional[str] = None
    edge: Optional[Tuple[str, str]] = None
    weight: Optional[Fraction] = None

    def describe(self) -> str:
        target = self.vertex if self.edge is None else f"{self.edge[0]}-{self.edge[1]}"
        text = f"{self.kind.value} {target}"
        if self.weight is not None:
            text += f" weight {format_rational(self.weight)}"
        return text

    def to_dict(self) -> dict:
        return {
            "move": self.kind.value,
            "vertex": self.vertex,
            "edge": None if self.edge is None else list(self.edge),
            "weight": None if self.weight is None else rational_to_dict(self.weight),
        }


@dataclass(frozen=True)
class TraceStep:
    move: Move
    before: str  # canonical hash of the graph before the move
    after: str

    def to_dict(self) -> dict:
        data = self.move.to_dict()
        data.update({"before": self.before, "after": self.after})
        return data


@dataclass(frozen=True)
class MoveTrace:
    steps: Tuple[TraceStep, ...] = ()

    @property
    def moves(self) -> Tuple[Move, ...]:
        return tuple(s.move for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def extended(self, step: TraceStep) -> "MoveTrace":
        return MoveTrace(self.steps + (step,))

    def to_dict(self) -> dict:
        return {"steps": [s.to_dict() for s in self.steps]}


class EquivalenceKind(str, Enum):
    PROOF = "proof"
    NOT_EQUIVALENT = "not_equivalent"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class EquivalenceResult:
    """Outcome of a bounded equivalence search.

    For a proof, replaying ``forward`` on the first graph and ``backward``
    on the second graph yields isomorphic graphs.
    """
    kind: EquivalenceKind
    reason: str = ""
    forward: MoveTrace = field(default_factory=MoveTrace)
    backward: MoveTrace = field(default_factory=MoveTrace)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "reason": self.reason,
            "forward": self.forward.to_dict()["steps"],
            "backward": self.backward.to_dict()["steps"],
        }


# ---------------------------------------------------------------------------
# Boundary group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupPresentation:
    """Generators ``e1..en``.

    ``commutations`` holds ``(i, j, q_ij)`` for every pair ``i < j``
    (0-based); ``products[i]`` lists ``(j, q_ij)`` with ``q_ij != 0`` in
    vertex order, read as the relation ``prod_j e_j^q_ij = 1``.
    """
    generators: Tuple[str, ...]
    commutations: Tuple[Tuple[int, int, int], ...]
    products: Tuple[Tuple[Tuple[int, int], ...], ...]

    def to_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "commutations": [list(c) for c in self.commutations],
            "products": [[list(t) for t in p] for p in self.products],
        }


class FinitenessKind(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class FinitenessVerdict:
    kind: FinitenessKind
    reason: str
    order: Optional[int] = None
    cyclic: Optional[bool] = None

    def describe(self) -> str:
        if self.kind != FinitenessKind.FINITE:
            return f"{self.kind.value.capitalize()} ({self.reason})"
        shape = {True: "cyclic", False: "non-cyclic", None: ""}[self.cyclic]
        order = f", order {self.order}" if self.order is not None else ""
        return f"Finite {shape}{order} ({self.reason})".replace("  ", " ")

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "reason": self.reason,
                "order": self.order, "cyclic": self.cyclic}


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContinuedFraction:
    """Hirzebruch-Jung continued fraction ``[d1, ..., dk]``, all ``d_i >= 2``."""
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(d) for d in self.entries)
        if not entries or any(d < 2 for d in entries):
            raise InvalidFraction(f"continued fraction entries must be >= 2: {list(entries)}")
        object.__setattr__(self, "entries", entries)


class TypeName(str, Enum):
    N1 = "N1"
    N2 = "N2"
    N3 = "N3"
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"
    NONE = "None"


@dataclass(frozen=True)
class TypeTag:
    """Type of a graph with the parameters that rebuild it.

    N2 / P2 carry one leg ``(n, lam)``; N3 / P3 carry ``y`` and three legs
    as written in ``<y; n1,l1; n2,l2; n3,l3>``. P4 and P5 carry the base
    tag and the dual blown up vertex of the base's built graph.
    """
    name: TypeName
    y: Optional[int] = None
    legs: Tuple[Tuple[int, int], ...] = ()
    base: Optional["TypeTag"] = None
    vertex: Optional[str] = None

    @property
    def is_negative(self) -> bool:
        return self.name in (TypeName.N1, TypeName.N2, TypeName.N3)

    @property
    def is_positive(self) -> bool:
        return self.name in (TypeName.P1, TypeName.P2, TypeName.P3,
                             TypeName.P4, TypeName.P5)

    def describe(self) -> str:
        legs = ";".join(f"{n},{lam}" for n, lam in self.legs)
        if self.name in (TypeName.N2, TypeName.P2):
            return f"{self.name.value}<{legs}>"
        if self.name in (TypeName.N3, TypeName.P3):
            return f"{self.name.value}<{self.y};{legs}>"
        if self.name in (TypeName.P4, TypeName.P5):
            return f"{self.name.value}({self.base.describe()}, v={self.vertex})"
        return self.name.value

    def to_dict(self) -> dict:
        return {
            "name": self.name.value,
            "y": self.y,
            "legs": [list(leg) for leg in self.legs],
            "base": None if self.base is None else self.base.to_dict(),
            "vertex": self.vertex,
            "label": self.describe(),
        }


class RealizabilityKind(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RealizabilityVerdict:
    kind: RealizabilityKind
    reason: str
    tag: Optional[TypeTag] = None

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "reason": self.reason,
                "tag": None if self.tag is None else self.tag.to_dict()}


class CompactifyingKind(str, Enum):
    CAPPING_DIVISOR = "capping_divisor"
    FILLING_DIVISOR = "filling_divisor"
    NEITHER = "neither"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class CompactifyingVerdict:
    kind: CompactifyingKind
    reason: str

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "reason": self.reason}


class Mark(str, Enum):
    """Realizability mark of a y = 2 vertex: Y when ``T^(v)`` is realizable."""
    X = "X"
    Y = "Y"


MarkedVertex = Tuple[int, Mark]  # (self_int, mark)


@dataclass(frozen=True)
class TableEntry:
    """One marked graph of a realizability table, laid out as in its figure.

    ``left`` and ``right`` run along the top row from the centre outward,
    ``below`` hangs under the centre.
    """
    family: str
    name: str
    center: MarkedVertex
    left: Tuple[MarkedVertex, ...]
    right: Tuple[MarkedVertex, ...]
    below: Tuple[MarkedVertex, ...]


@dataclass(frozen=True)
class DihedralRule:
    claw_end: Mark
    center: Mark
    chain_if_first_at_least_3: Mark
    chain_if_first_is_2: Mark


@dataclass(frozen=True)
class RealizabilityTables:
    version: int
    entries: Tuple[TableEntry, ...]
    dihedral: DihedralRule
    source: str = ""


# ---------------------------------------------------------------------------
# Chern invariants and enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChernData:
    """``Q w = b`` with ``b_i = s_i + 2``; ``n = c1^2 + k``."""
    w: RationalVector
    c1_square: Fraction
    characterizing_number: Fraction

    def to_dict(self) -> dict:
        return {
            "w": [rational_to_dict(x) for x in self.w],
            "c1_square": rational_to_dict(self.c1_square),
            "characterizing_number": rational_to_dict(self.characterizing_number),
        }


class ExceptionKind(str, Enum):
    """Which characterizing total an enumeration looks for."""
    CONJUGATE = "conjugate"  # n^T + n^{T^(v)} = 10
    QHD = "qhd"  # n^{T^(v)} = 10


@dataclass(frozen=True)
class EnumerationBounds:
    max_y: int = DEFAULT_MAX_Y

    def doubled(self) -> "EnumerationBounds":
        return EnumerationBounds(self.max_y * 2)


@dataclass(frozen=True)
class ExceptionPair:
    """An (N3) graph ``T`` with a vertex ``v`` hitting a characterizing total."""
    base: TypeTag
    vertex: str
    base_number: Fraction  # n^T
    extended_number: Fraction  # n^{T^(v)}
    realizable: bool
    reason: str

    @property
    def central_self_int(self) -> int:
        return -self.base.y

    def to_dict(self) -> dict:
        return {
            "base": self.base.to_dict(),
            "vertex": self.vertex,
            "base_number": rational_to_dict(self.base_number),
            "extended_number": rational_to_dict(self.extended_number),
            "realizable": self.realizable,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class GraphReport:
    """Everything ``classify`` prints about one graph."""
    graph: PlumbingGraph
    area: Optional[RationalVector]
    determinant: int
    inertia: Inertia
    smith_factors: Tuple[int, ...]
    is_tree: bool
    is_minimal: Optional[bool]
    type_tag: Optional[TypeTag] = None
    finiteness: Optional[FinitenessVerdict] = None
    flowchart: Optional[FlowchartVerdict] = None
    realizability: Optional[RealizabilityVerdict] = None
    compactifying: Optional[CompactifyingVerdict] = None
    notes: Tuple[str, ...] = ()

    @property
    def has_unknown(self) -> bool:
        return any((
            self.finiteness is not None and self.finiteness.kind == FinitenessKind.UNKNOWN,
            self.realizability is not None and self.realizability.kind == RealizabilityKind.UNKNOWN,
            self.compactifying is not None and self.compactifying.kind == CompactifyingKind.UNKNOWN,
        ))

    def to_dict(self) -> dict:
        def maybe(value):
            return None if value is None else value.to_dict()

        return {
            "graph": self.graph.to_dict(),
            "area": None if self.area is None else [rational_to_dict(a) for a in self.area],
            "determinant": self.determinant,
            "inertia": self.inertia.to_dict(),
            "smith_factors": list(self.smith_factors),
            "is_tree": self.is_tree,
            "is_minimal": self.is_minimal,
            "type": maybe(self.type_tag),
            "finiteness": maybe(self.finiteness),
            "flowchart": maybe(self.flowchart),
            "realizability": maybe(self.realizability),
            "compactifying": maybe(self.compactifying),
            "notes": list(self.notes),
        }
