import json
from collections import Counter

import pytest

from plumbing_calculus.exceptions import TableFormatError
from plumbing_calculus.models import Mark
from plumbing_calculus.tools.enumeration import non_dihedral_legs
from plumbing_calculus.tools.graph_core import canonical_key
from plumbing_calculus.tools.recognition import build_star
from plumbing_calculus.tools.tables import (
    dihedral_marks,
    entry_graph,
    entry_legs,
    load_tables,
    render_entry,
    render_tables,
)


def _entry(name):
    return next(e for e in load_tables().entries if e.name == name)


def _write(tmp_path, data):
    path = tmp_path / "tables.json"
    path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
    return path


def _minimal_tables(**overrides):
    data = {
        "version": 1,
        "families": {"tetrahedral": [
            {"name": "T3", "center": "-2X", "left": ["-3Y"], "right": ["-3Y"], "below": ["-2Y"]},
        ]},
        "dihedral": {"claw_end": "Y", "center": "X",
                     "chain_if_first_at_least_3": "Y", "chain_if_first_is_2": "X"},
    }
    data.update(overrides)
    return data


def test_packaged_tables():
    tables = load_tables()
    assert tables.version == 1
    assert len(tables.entries) == 15
    assert Counter(e.family for e in tables.entries) == {
        "tetrahedral": 3, "octahedral": 4, "icosahedral": 8}
    assert tables.dihedral.center == Mark.X
    assert load_tables() is tables


def test_entries_cover_every_non_dihedral_star():
    from_tables = {canonical_key(entry_graph(e)[0]) for e in load_tables().entries}
    from_legs = {canonical_key(build_star(2, *legs)) for legs in non_dihedral_legs()}
    assert from_tables == from_legs


def test_entry_graph_and_legs():
    entry = _entry("I2")
    assert sorted(entry_legs(entry)) == [(2, 1), (3, 2), (5, 3)]
    graph, marks = entry_graph(entry)
    assert graph.ids == ("o", "a1", "a2", "b1", "b2", "c1")
    assert set(marks.values()) == {Mark.X}


def test_render_entry():
    assert render_entry(_entry("T3")) == "-3Y - -2X - -3Y\n      |\n      -2Y"
    assert render_entry(_entry("T2")) == "-2Y - -2X - -2X - -3Y\n            |\n            -2Y"


def test_render_tables_lists_every_entry():
    text = render_tables(load_tables())
    assert text.startswith("Tetrahedral\n\n[T1]")
    assert text.count("[") == 15
    assert "Icosahedral" in text


def test_dihedral_marks():
    rule = load_tables().dihedral
    graph, marks = dihedral_marks((5, 2), rule)
    assert [v.self_int for v in graph.vertices] == [-2, -2, -2, -3, -2]
    assert marks == {"o": Mark.X, "a1": Mark.Y, "b1": Mark.Y, "c1": Mark.Y, "c2": Mark.Y}
    _, marks = dihedral_marks((5, 3), rule)
    assert marks["c1"] == Mark.X


@pytest.mark.parametrize("data, message", [
    (_minimal_tables(version=2), "version"),
    (_minimal_tables(dihedral=None), "dihedral"),
    (_minimal_tables(families=[]), "families"),
    (_minimal_tables(families={"tetrahedral": [
        {"name": "T9", "center": "-2Z", "left": [], "right": [], "below": []}]}), "label"),
    (_minimal_tables(families={"tetrahedral": [{"name": "T9", "center": "-2X"}]}), "missing"),
    (_minimal_tables(families={"tetrahedral": [
        {"name": "T9", "center": "-2X", "left": ["-1X"], "right": ["-3Y"], "below": ["-2Y"]}]}),
     "continued fraction"),
])
def test_malformed_tables(tmp_path, data, message):
    with pytest.raises(TableFormatError) as info:
        load_tables(_write(tmp_path, data))
    assert message in str(info.value)


def test_unreadable_tables(tmp_path):
    with pytest.raises(TableFormatError):
        load_tables(_write(tmp_path, "{not json"))
    with pytest.raises(TableFormatError):
        load_tables(tmp_path / "missing.json")


def test_custom_tables_are_loaded(tmp_path):
    tables = load_tables(_write(tmp_path, _minimal_tables()))
    assert [e.name for e in tables.entries] == ["T3"]
    assert tables.source.endswith("tables.json")
