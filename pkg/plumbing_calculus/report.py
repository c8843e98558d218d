"""
Combined classification report for one graph.

Runs every applicable check (intersection form, type recognition,
boundary group, flowchart, realizability, compactifying verdict) and
collects the outcomes in a :class:`GraphReport`. Checks whose
preconditions fail are skipped with a note instead of raising.
"""

import asyncio
import logging
from typing import List, Optional, Union

from plumbing_calculus.config import DEFAULT_BUDGET, DEFAULT_DEPTH
from plumbing_calculus.exceptions import InfinitePi1, NegativeDefinite
from plumbing_calculus.models import (
    AugmentedGraph,
    FinitenessKind,
    GraphReport,
    PlumbingGraph,
    RealizabilityTables,
)
from plumbing_calculus.tools.boundary_group import is_finite_pi1
from plumbing_calculus.tools.families import compactifying_verdict, realizable
from plumbing_calculus.tools.graph_core import intersection_matrix, is_minimal, is_tree, plain
from plumbing_calculus.tools.gs_engine import classify_flowchart
from plumbing_calculus.tools.linalg import determinant, inertia, smith_normal_form
from plumbing_calculus.tools.recognition import recognize_candidates

logger = logging.getLogger(__name__)


def build_report(g: Union[PlumbingGraph, AugmentedGraph],
                 budget: int = DEFAULT_BUDGET,
                 tables: Optional[RealizabilityTables] = None,
                 depth: int = DEFAULT_DEPTH) -> GraphReport:
    """
    Build the full report for a plain or augmented graph.

    Args:
        g: Graph to classify; areas enable the flowchart and the
            compactifying verdict.
        budget: Extra vertices allowed in equivalence searches.
        tables: Realizability tables; the packaged asset by default.
        depth: Move limit of equivalence searches.

    Returns:
        GraphReport: every verdict that applies, plus notes on skipped checks.
    """
    graph = plain(g)
    area = g.area if isinstance(g, AugmentedGraph) else None
    Q = intersection_matrix(graph)
    notes: List[str] = []
    tree = is_tree(graph)
    genus_zero = all(v.genus == 0 for v in graph.vertices)

    fields = dict(
        graph=graph,
        area=area,
        determinant=determinant(Q),
        inertia=inertia(Q),
        smith_factors=tuple(smith_normal_form(Q)),
        is_tree=tree,
        is_minimal=is_minimal(graph) if tree else None,
    )
    if isinstance(g, AugmentedGraph):
        fields["flowchart"] = classify_flowchart(g)

    if not (tree and genus_zero):
        notes.append("classification needs a genus 0 tree")
        return GraphReport(**fields, notes=tuple(notes))

    fields["type_tag"], _ = recognize_candidates(graph)
    finiteness = is_finite_pi1(graph)
    fields["finiteness"] = finiteness

    if finiteness.kind == FinitenessKind.INFINITE:
        notes.append("infinite boundary group: the classification does not apply")
        return GraphReport(**fields, notes=tuple(notes))

    try:
        fields["realizability"] = realizable(graph, budget, tables, depth)
    except NegativeDefinite:
        notes.append("negative definite: realizability applies to capping graphs only")
    except InfinitePi1 as exc:
        notes.append(f"infinite boundary group ({exc})")

    if isinstance(g, AugmentedGraph):
        fields["compactifying"] = compactifying_verdict(g, budget, tables, depth)

    report = GraphReport(**fields, notes=tuple(notes))
    logger.debug("report for %d-vertex graph: unknown=%s", graph.k, report.has_unknown)
    return report


async def build_report_async(g: Union[PlumbingGraph, AugmentedGraph],
                             budget: int = DEFAULT_BUDGET,
                             tables: Optional[RealizabilityTables] = None,
                             depth: int = DEFAULT_DEPTH) -> GraphReport:
    """:func:`build_report` in a worker thread, for use inside an event loop."""
    return await asyncio.to_thread(build_report, g, budget, tables, depth)


def render_report(report: GraphReport) -> str:
    """Text form of a report, one ``label: value`` line per verdict."""
    minimal = {True: "yes", False: "no", None: "n/a"}[report.is_minimal]
    lines = [
        f"vertices: {report.graph.k}, tree: {'yes' if report.is_tree else 'no'}, "
        f"minimal: {minimal}",
        f"determinant: {report.determinant}",
        "inertia (n+, n0, n-): {}, {}, {}".format(*report.inertia.as_tuple()),
        f"smith factors: {', '.join(str(d) for d in report.smith_factors) or '-'}",
    ]
    if report.flowchart is not None:
        lines.append(f"flowchart: {report.flowchart.describe()}")
    if report.type_tag is not None:
        lines.append(f"type: {report.type_tag.describe()}")
    if report.finiteness is not None:
        lines.append(f"boundary group: {report.finiteness.describe()}")
    if report.realizability is not None:
        lines.append(f"realizable: {report.realizability.kind.value} "
                     f"({report.realizability.reason})")
    if report.compactifying is not None:
        lines.append(f"compactifying: {report.compactifying.kind.value} "
                     f"({report.compactifying.reason})")
    lines.extend(f"note: {note}" for note in report.notes)
    return "\n".join(lines) + "\n"
