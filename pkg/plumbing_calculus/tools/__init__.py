"""Operations on plumbing graphs, one module per concern."""

from plumbing_calculus.tools.boundary_group import (
    abelianization_order,
    is_finite_pi1,
    pi1_presentation,
    relators,
)
from plumbing_calculus.tools.chern import (
    characterizing_number_after_claw,
    chern_data,
    conjugate_sum_check,
    qhd_obstruction,
)
from plumbing_calculus.tools.dsl import parse_graph, serialize_graph
from plumbing_calculus.tools.enumeration import (
    enumerate_conjugate_exceptions,
    enumerate_qhd_exceptions,
)
from plumbing_calculus.tools.families import (
    capping_obstruction_spheres,
    compactifying_verdict,
    p5_realizable,
    realizable,
)
from plumbing_calculus.tools.graph_core import intersection_matrix, is_minimal, is_tree
from plumbing_calculus.tools.gs_engine import (
    classify_flowchart,
    negative_gs,
    plan_inflation_path,
    positive_gs,
)
from plumbing_calculus.tools.moves import (
    blow_down,
    blow_up_edge,
    blow_up_vertex,
    claw_extend,
    dual_blow_up,
    equivalent_graphs,
    minimal_model,
)
from plumbing_calculus.tools.recognition import (
    build_linear,
    build_star,
    conjugate_of,
    dihedral_form_convert,
    hj_eval,
    hj_expand,
    recognize_type,
)

__all__ = [
    "abelianization_order",
    "blow_down",
    "blow_up_edge",
    "blow_up_vertex",
    "build_linear",
    "build_star",
    "capping_obstruction_spheres",
    "characterizing_number_after_claw",
    "chern_data",
    "classify_flowchart",
    "claw_extend",
    "compactifying_verdict",
    "conjugate_of",
    "conjugate_sum_check",
    "dihedral_form_convert",
    "dual_blow_up",
    "enumerate_conjugate_exceptions",
    "enumerate_qhd_exceptions",
    "equivalent_graphs",
    "hj_eval",
    "hj_expand",
    "intersection_matrix",
    "is_finite_pi1",
    "is_minimal",
    "is_tree",
    "minimal_model",
    "negative_gs",
    "p5_realizable",
    "parse_graph",
    "pi1_presentation",
    "plan_inflation_path",
    "positive_gs",
    "qhd_obstruction",
    "realizable",
    "recognize_type",
    "relators",
    "serialize_graph",
]
