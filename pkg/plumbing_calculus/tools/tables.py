"""Loader for the versioned X/Y realizability table asset.

The asset lists every y = 2 tetrahedral, octahedral and icosahedral graph
with a mark per vertex, plus the dihedral marking rule. ``render_entry``
lays an entry out the way its figure does, so a transcription can be
audited line by line.
"""

import json
import logging
import re
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from plumbing_calculus.config import TABLES_PATH, TABLES_VERSION
from plumbing_calculus.exceptions import InvalidFraction, TableFormatError
from plumbing_calculus.models import (
    DihedralRule,
    Mark,
    MarkedVertex,
    PlumbingGraph,
    RealizabilityTables,
    TableEntry,
    Vertex,
)
from plumbing_calculus.tools.recognition import Leg, hj_expand, hj_eval

logger = logging.getLogger(__name__)

_LABEL = re.compile(r"^(-?\d+)([XY])$")
FAMILIES = ("tetrahedral", "octahedral", "icosahedral")


def _marked(label: str, where: str) -> MarkedVertex:
    match = _LABEL.match(str(label))
    if match is None:
        raise TableFormatError(f"{where}: bad vertex label {label!r}, expected like '-2Y'")
    return int(match.group(1)), Mark(match.group(2))


def _mark(value: str, where: str) -> Mark:
    try:
        return Mark(value)
    except ValueError as exc:
        raise TableFormatError(f"{where}: bad mark {value!r}") from exc


def _parse(data: dict, source: str) -> RealizabilityTables:
    if data.get("version") != TABLES_VERSION:
        raise TableFormatError(
            f"{source}: table version {data.get('version')!r}, expected {TABLES_VERSION}")
    entries = []
    families = data.get("families")
    if not isinstance(families, dict):
        raise TableFormatError(f"{source}: missing 'families'")
    for family in FAMILIES:
        for raw in families.get(family, []):
            name = raw.get("name", "?")
            where = f"{source}: {family} {name}"
            try:
                entries.append(TableEntry(
                    family=family,
                    name=name,
                    center=_marked(raw["center"], where),
                    left=tuple(_marked(x, where) for x in raw["left"]),
                    right=tuple(_marked(x, where) for x in raw["right"]),
                    below=tuple(_marked(x, where) for x in raw["below"]),
                ))
            except KeyError as exc:
                raise TableFormatError(f"{where}: missing field {exc}") from exc
    rule = data.get("dihedral")
    if not isinstance(rule, dict):
        raise TableFormatError(f"{source}: missing 'dihedral' rule")
    try:
        dihedral = DihedralRule(
            claw_end=_mark(rule["claw_end"], source),
            center=_mark(rule["center"], source),
            chain_if_first_at_least_3=_mark(rule["chain_if_first_at_least_3"], source),
            chain_if_first_is_2=_mark(rule["chain_if_first_is_2"], source),
        )
    except KeyError as exc:
        raise TableFormatError(f"{source}: dihedral rule misses {exc}") from exc
    for entry in entries:
        entry_legs(entry)
    return RealizabilityTables(data["version"], tuple(entries), dihedral, source)


@lru_cache(maxsize=8)
def _load(path: str) -> RealizabilityTables:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as exc:
        raise TableFormatError(f"cannot read tables {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"{path}: invalid JSON ({exc})") from exc
    tables = _parse(data, path)
    logger.debug("loaded %d table entries from %s", len(tables.entries), path)
    return tables


def load_tables(path: Optional[Union[str, Path]] = None) -> RealizabilityTables:
    """
    Load (and cache) the realizability tables.

    Args:
        path: Asset path; defaults to ``config.TABLES_PATH``.

    Raises:
        TableFormatError: unreadable file, wrong version or malformed entry.
    """
    return _load(str(path or TABLES_PATH))


# ---------------------------------------------------------------------------
# Entries as graphs
# ---------------------------------------------------------------------------

def _leg_fraction(leg: Sequence[MarkedVertex], where: str) -> Leg:
    try:
        return hj_eval([-s for s, _ in leg])
    except InvalidFraction as exc:
        raise TableFormatError(f"{where}: leg {leg} is not a continued fraction") from exc


def entry_legs(entry: TableEntry) -> Tuple[Leg, Leg, Leg]:
    """Leg fractions ``(left, right, below)`` of a table entry."""
    where = f"{entry.family} {entry.name}"
    return tuple(_leg_fraction(leg, where) for leg in (entry.left, entry.right, entry.below))


def entry_graph(entry: TableEntry) -> Tuple[PlumbingGraph, Dict[str, Mark]]:
    """Star graph of an entry (centre ``o``; legs ``a``, ``b``, ``c``) and its marks."""
    vertices = [Vertex("o", 0, entry.center[0])]
    marks = {"o": entry.center[1]}
    edges = []
    for prefix, leg in zip("abc", (entry.left, entry.right, entry.below)):
        previous = "o"
        for i, (self_int, mark) in enumerate(leg, start=1):
            vid = f"{prefix}{i}"
            vertices.append(Vertex(vid, 0, self_int))
            marks[vid] = mark
            edges.append((previous, vid))
            previous = vid
    return PlumbingGraph(tuple(vertices), tuple(edges)), marks


def dihedral_marks(long_leg: Leg, rule: DihedralRule) -> Tuple[PlumbingGraph, Dict[str, Mark]]:
    """``<2; 2,1; 2,1; n,lam>`` with the dihedral rule's marks.

    The claw ends are ``a1`` and ``b1``; the chain ``c1..ck`` shares one
    mark decided by its first entry ``d1``.
    """
    entries = hj_expand(*long_leg).entries
    chain_mark = rule.chain_if_first_at_least_3 if entries[0] >= 3 else rule.chain_if_first_is_2
    vertices = [Vertex("o", 0, -2), Vertex("a1", 0, -2), Vertex("b1", 0, -2)]
    edges = [("o", "a1"), ("o", "b1")]
    marks = {"o": rule.center, "a1": rule.claw_end, "b1": rule.claw_end}
    previous = "o"
    for i, d in enumerate(entries, start=1):
        vid = f"c{i}"
        vertices.append(Vertex(vid, 0, -d))
        edges.append((previous, vid))
        marks[vid] = chain_mark
        previous = vid
    return PlumbingGraph(tuple(vertices), tuple(edges)), marks


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _label(vertex: MarkedVertex) -> str:
    return f"{vertex[0]}{vertex[1].value}"


def render_entry(entry: TableEntry) -> str:
    """
    Text layout of an entry: top row left leg, centre, right leg; the
    below leg hangs under the centre.

    Example:
        -3Y - -2X - -3Y
              |
              -2Y
    """
    row = [_label(v) for v in reversed(entry.left)] + [_label(entry.center)]
    column = len(" - ".join(row)) - len(row[-1])
    row += [_label(v) for v in entry.right]
    lines = [" - ".join(row)]
    for v in entry.below:
        lines.append(" " * column + "|")
        lines.append(" " * column + _label(v))
    return "\n".join(lines)


def render_tables(tables: RealizabilityTables) -> str:
    blocks: List[str] = []
    for family in FAMILIES:
        blocks.append(family.capitalize())
        for entry in tables.entries:
            if entry.family == family:
                blocks.append(f"[{entry.name}]\n{render_entry(entry)}")
    return "\n\n".join(blocks) + "\n"
