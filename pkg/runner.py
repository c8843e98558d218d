"""plumbing-calculus command line.

Every command reads a graph in the DSL from a file (``-`` for stdin) and
prints a deterministic text report, or JSON with ``--json``. Exit codes:
0 success, 2 invalid input, 3 an Unknown verdict.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from dotenv import load_dotenv

# Ensure project root is in path
sys.path.insert(0, str(Path(__file__).parent))

# Load environment variables before the package reads its configuration
load_dotenv(override=True)

from plumbing_calculus.config import (  # noqa: E402
    DEFAULT_BUDGET,
    DEFAULT_DEPTH,
    DEFAULT_JOBS,
    DEFAULT_MAX_Y,
    EXIT_INVALID,
    EXIT_OK,
    EXIT_UNKNOWN,
    LOG_LEVEL,
)
from plumbing_calculus.exceptions import (  # noqa: E402
    DslSyntaxError,
    InflationRefinementExhausted,
    InvalidGraphError,
    PlumbingError,
)
from plumbing_calculus.models import (  # noqa: E402
    AugmentedGraph,
    EnumerationBounds,
    EquivalenceKind,
    FinitenessKind,
    FlowchartKind,
    Move,
    MoveKind,
    format_rational,
    format_vector,
    rational_to_dict,
)
from plumbing_calculus.report import build_report, render_report  # noqa: E402
from plumbing_calculus.tools.boundary_group import (  # noqa: E402
    abelianization_order,
    is_finite_pi1,
    pi1_presentation,
    relators,
)
from plumbing_calculus.tools.chern import characterizing_number_after_claw, chern_data  # noqa: E402
from plumbing_calculus.tools.dsl import (  # noqa: E402
    GRAMMAR,
    Parsed,
    graph_to_dot,
    parse_area,
    parse_graph,
    serialize_graph,
)
from plumbing_calculus.tools.enumeration import (  # noqa: E402
    enumerate_conjugate_exceptions,
    enumerate_qhd_exceptions,
    render_exception_table,
)
from plumbing_calculus.tools.graph_core import plain  # noqa: E402
from plumbing_calculus.tools.gs_engine import (  # noqa: E402
    classify_flowchart,
    negative_gs,
    plan_inflation_path,
    positive_gs,
)
from plumbing_calculus.tools.moves import apply_move, equivalent_graphs, minimal_model  # noqa: E402
from plumbing_calculus.tools.recognition import dihedral_form_convert  # noqa: E402
from plumbing_calculus.tools.tables import load_tables, render_tables  # noqa: E402

logger = logging.getLogger("plumbing")

# (payload for --json, text for stdout, whether a verdict is Unknown)
Outcome = Tuple[dict, str, bool]


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the invalid-input code and show the DSL grammar."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n\n{GRAMMAR}\n")
        raise SystemExit(EXIT_INVALID)


def _read_graph(path: str, area: Optional[str] = None) -> Parsed:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    graph = parse_graph(text)
    if area:
        return AugmentedGraph(plain(graph), parse_area(area))
    return graph


def _trace_lines(trace) -> List[str]:
    return [f"  {move.describe()}" for move in trace.moves] or ["  (no moves)"]


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_classify(args) -> Outcome:
    graph = _read_graph(args.graph, args.area)
    report = build_report(graph, args.budget, load_tables(args.tables), args.depth)
    return report.to_dict(), render_report(report), report.has_unknown


def cmd_gs(args) -> Outcome:
    graph = _read_graph(args.graph, args.area)
    if not isinstance(graph, AugmentedGraph):
        raise InvalidGraphError("gs needs areas: give them in the graph or with --area")
    positive = positive_gs(graph)
    negative = negative_gs(graph)
    verdict = classify_flowchart(graph)
    lines = [
        "positive GS: " + ("not satisfied" if positive is None
                           else f"z = {format_vector(positive.z)}"),
        "negative GS: " + ("not satisfied" if negative is None
                           else f"z = {format_vector(negative.z)}"),
        f"flowchart: {verdict.describe()}",
    ]
    payload = {
        "positive": None if positive is None else positive.to_dict()["z"],
        "negative": None if negative is None else negative.to_dict()["z"],
        "flowchart": verdict.to_dict(),
        "inflation_path": None,
    }
    unknown = False
    if verdict.kind == FlowchartKind.DEFORMABLE_TO_CONCAVE:
        try:
            path = plan_inflation_path(graph)
            payload["inflation_path"] = path.to_dict()["waypoints"]
            lines.append(f"inflation path: {path.segments} segments")
            lines.extend(f"  {format_vector(w)}" for w in path.waypoints)
        except InflationRefinementExhausted as exc:
            lines.append(f"inflation path: unknown ({exc})")
            unknown = True
    return payload, "\n".join(lines) + "\n", unknown


def cmd_minimize(args) -> Outcome:
    graph = _read_graph(args.graph)
    reduced, trace = minimal_model(graph)
    text = serialize_graph(reduced) + "# moves:\n" + "\n".join(
        "#" + line for line in _trace_lines(trace)) + "\n"
    return {"graph": reduced.to_dict(), "trace": trace.to_dict()["steps"]}, text, False


def cmd_apply_move(args) -> Outcome:
    graph = _read_graph(args.graph, args.area)
    kind = MoveKind(args.move)
    weight = parse_area(args.weight)[0] if args.weight else None
    expected = 2 if kind == MoveKind.BLOW_UP_EDGE else 1
    if len(args.target) != expected:
        raise DslSyntaxError(f"{kind.value} takes {expected} vertex id(s), got {len(args.target)}")
    if kind == MoveKind.BLOW_UP_EDGE:
        move = Move(kind, edge=(args.target[0], args.target[1]), weight=weight)
    else:
        move = Move(kind, vertex=args.target[0], weight=weight)
    after = apply_move(graph, move)
    return {"move": move.to_dict(), "graph": after.to_dict()}, serialize_graph(after), False


def cmd_equivalent(args) -> Outcome:
    first = _read_graph(args.graph)
    second = _read_graph(args.other)
    result = equivalent_graphs(first, second, args.budget, args.depth)
    if result.kind == EquivalenceKind.PROOF:
        lines = [f"Proof ({result.reason})", "forward:"] + _trace_lines(result.forward) \
            + ["backward:"] + _trace_lines(result.backward)
    elif result.kind == EquivalenceKind.NOT_EQUIVALENT:
        lines = [f"NotEquivalent ({result.reason})"]
    else:
        lines = [f"Unknown ({result.reason})"]
    return result.to_dict(), "\n".join(lines) + "\n", result.kind == EquivalenceKind.UNKNOWN


def cmd_pi1(args) -> Outcome:
    graph = _read_graph(args.graph)
    presentation = pi1_presentation(graph)
    order = abelianization_order(graph)
    finiteness = is_finite_pi1(graph)
    lines = [f"generators: {', '.join(presentation.generators) or '-'}", "relators:"]
    lines.extend(f"  {r}" for r in relators(presentation))
    lines.append("abelianization infinite" if order is None else f"abelianization order {order}")
    lines.append(f"finiteness: {finiteness.describe()}")
    payload = {
        "presentation": presentation.to_dict(),
        "relators": relators(presentation),
        "abelianization_order": order,
        "finiteness": finiteness.to_dict(),
    }
    return payload, "\n".join(lines) + "\n", finiteness.kind == FinitenessKind.UNKNOWN


def cmd_chern(args) -> Outcome:
    graph = _read_graph(args.graph)
    data = chern_data(graph)
    lines = [
        f"w = {format_vector(data.w)}",
        f"c1^2 = {format_rational(data.c1_square)}",
        f"n = {format_rational(data.characterizing_number)}",
    ]
    payload = data.to_dict()
    if args.claw:
        extended = characterizing_number_after_claw(graph, args.claw)
        lines.append(f"n after claw at {args.claw} = {format_rational(extended)}")
        payload["after_claw"] = {"vertex": args.claw,
                               "characterizing_number": rational_to_dict(extended)}
    return payload, "\n".join(lines) + "\n", False


def cmd_enumerate(args) -> Outcome:
    tables = load_tables(args.tables)
    if args.what == "tables":
        return {"source": tables.source, "entries": len(tables.entries)}, render_tables(tables), False
    run = (enumerate_conjugate_exceptions if args.what == "conjugate-exceptions"
           else enumerate_qhd_exceptions)
    pairs = run(EnumerationBounds(args.max_y), tables, args.jobs)
    payload = {"pairs": [p.to_dict() for p in pairs],
               "realizable": sum(p.realizable for p in pairs)}
    return payload, render_exception_table(pairs), False


def cmd_convert(args) -> Outcome:
    converted = dihedral_form_convert(_read_graph(args.graph))
    return {"graph": converted.to_dict()}, serialize_graph(converted), False


def cmd_export_dot(args) -> Outcome:
    graph = _read_graph(args.graph, args.area)
    return {"dot": graph_to_dot(graph)}, graph_to_dot(graph), False


COMMANDS: Dict[str, Callable[[argparse.Namespace], Outcome]] = {
    "classify": cmd_classify,
    "gs": cmd_gs,
    "minimize": cmd_minimize,
    "apply-move": cmd_apply_move,
    "equivalent": cmd_equivalent,
    "pi1": cmd_pi1,
    "chern": cmd_chern,
    "enumerate": cmd_enumerate,
    "convert": cmd_convert,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="extra vertices allowed in equivalence searches")
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH,
                        help="moves allowed in equivalence searches")
    common.add_argument("--tables", default=None, help="realizability tables JSON")

    parser = _Parser(prog="plumbing", description=__doc__.splitlines()[0],
                     epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_command(name: str, help_text: str, area: bool = False,
                      stdin_default: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("graph", nargs="?" if stdin_default else None, default="-",
                       help="graph DSL file, '-' for stdin")
        if area:
            p.add_argument("--area", help="comma-separated areas, e.g. 3,2 or 1/2,3")
        return p

    graph_command("classify", "every verdict for one graph", area=True)
    graph_command("gs", "GS criteria, flowchart and inflation path", area=True)
    graph_command("minimize", "minimal model with its blow down trace")
    p = graph_command("apply-move", "apply one move", area=True, stdin_default=False)
    p.add_argument("move", choices=[k.value for k in MoveKind])
    p.add_argument("target", nargs="+", help="vertex id, or two ids for blow_up_edge")
    p.add_argument("--weight", help="area of the exceptional sphere")
    p = graph_command("equivalent", "search for a chain of moves between two graphs",
                      stdin_default=False)
    p.add_argument("other", help="second graph DSL file")
    graph_command("pi1", "boundary group presentation and finiteness")
    p = graph_command("chern", "first Chern class and characterizing number")
    p.add_argument("--claw", help="also report n after a claw extension at this vertex")
    p = sub.add_parser("enumerate", parents=[common], help="exceptional (P5) graphs or tables")
    p.add_argument("what", choices=["conjugate-exceptions", "qhd-exceptions", "tables"])
    p.add_argument("--max-y", type=int, default=DEFAULT_MAX_Y)
    p.add_argument("--jobs", type=int, default=DEFAULT_JOBS)
    graph_command("convert", "switch between the two dihedral presentations")
    graph_command("export-dot", "DOT rendering", area=True)
    return parser


def run(argv: List[str]) -> int:
    """Run one command; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID

    try:
        payload, text, unknown = COMMANDS[args.command](args)
    except DslSyntaxError as exc:
        sys.stderr.write(f"error: {exc}\n\n{GRAMMAR}\n")
        return EXIT_INVALID
    except PlumbingError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INVALID
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID

    if args.json:
        sys.stdout.write(json.dumps({"command": args.command, "result": payload},
                                    indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
    if unknown:
        logger.info("%s finished with an Unknown verdict", args.command)
        return EXIT_UNKNOWN
    return EXIT_OK


def main():
    """Main entry point."""
    logging.basicConfig(level=LOG_LEVEL, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
