import pytest

from plumbing_calculus.config import CHARACTERIZING_TOTAL, STABILITY_MAX_Y
from plumbing_calculus.models import EnumerationBounds
from plumbing_calculus.tools.enumeration import (
    enumerate_conjugate_exceptions,
    enumerate_conjugate_exceptions_async,
    enumerate_qhd_exceptions,
    enumerate_qhd_exceptions_async,
    non_dihedral_legs,
    render_exception_table,
)


def test_non_dihedral_legs():
    legs = list(non_dihedral_legs())
    assert len(legs) == 15
    assert len(set(legs)) == 15
    assert all(triple[0] == (2, 1) and list(triple) == sorted(triple) for triple in legs)


def test_conjugate_exceptions():
    pairs = enumerate_conjugate_exceptions()
    assert len(pairs) == 7
    assert sum(p.realizable for p in pairs) == 4
    assert sorted(p.base.y for p in pairs if p.realizable) == [3, 4, 7, 8]
    for pair in pairs:
        assert pair.base_number + pair.extended_number == CHARACTERIZING_TOTAL


def test_qhd_exceptions():
    pairs = enumerate_qhd_exceptions()
    assert len(pairs) == 4
    assert sorted(p.base.y for p in pairs if p.realizable) == [2, 2, 6]
    (blocked,) = [p for p in pairs if not p.realizable]
    assert blocked.base.describe() == "N3<2;2,1;3,2;5,4>"
    assert blocked.central_self_int == -2
    assert all(p.extended_number == CHARACTERIZING_TOTAL for p in pairs)


def test_results_are_stable_past_the_default_bound():
    wide = EnumerationBounds(STABILITY_MAX_Y)
    assert enumerate_conjugate_exceptions(wide) == enumerate_conjugate_exceptions()
    assert enumerate_qhd_exceptions(wide) == enumerate_qhd_exceptions()


def test_worker_processes_do_not_change_the_result():
    bounds = EnumerationBounds(10)
    assert enumerate_qhd_exceptions(bounds, jobs=2) == enumerate_qhd_exceptions(bounds, jobs=1)


@pytest.mark.asyncio
async def test_async_enumeration():
    conjugate = await enumerate_conjugate_exceptions_async()
    qhd = await enumerate_qhd_exceptions_async()
    assert (len(conjugate), len(qhd)) == (7, 4)


def test_render_exception_table():
    pairs = enumerate_qhd_exceptions()
    text = render_exception_table(pairs)
    lines = text.splitlines()
    assert lines[0].split() == ["T", "v", "n^T", "n^T(v)"]
    assert lines[-1] == "4 pairs, 3 realizable"
    assert sum(line.startswith("*") for line in lines) == 3
