"""Enumerate (P5) graphs whose characterizing numbers hit 10.

The search space is every non-dihedral (N3) star
``<y; 2,1; n2,l2; n3,l3>`` with ``(n2, n3)`` a platonic pair, ``2 <= y <=
max_y`` and every vertex ``v`` of the star. Results are counted up to
isomorphism of the claw extension ``T^(v)``.
"""

import asyncio
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from plumbing_calculus.config import CHARACTERIZING_TOTAL, DEFAULT_JOBS, NON_DIHEDRAL_PAIRS
from plumbing_calculus.models import (
    EnumerationBounds,
    ExceptionKind,
    ExceptionPair,
    RealizabilityKind,
    RealizabilityTables,
    TypeName,
    TypeTag,
)
from plumbing_calculus.tools.chern import characterizing_numbers_after_claw, chern_data
from plumbing_calculus.tools.families import p5_realizable
from plumbing_calculus.tools.graph_core import canonical_key
from plumbing_calculus.tools.moves import claw_extend
from plumbing_calculus.tools.recognition import Leg, build_star

logger = logging.getLogger(__name__)

Hit = Tuple[TypeTag, str, Fraction, Fraction]


def _coprime(n: int) -> List[int]:
    return [lam for lam in range(1, n) if math.gcd(n, lam) == 1]


def non_dihedral_legs() -> Iterator[Tuple[Leg, Leg, Leg]]:
    """Sorted leg triples ``(2,1), (n2,l2), (n3,l3)``, each star once."""
    for n2, n3 in NON_DIHEDRAL_PAIRS:
        for lam2 in _coprime(n2):
            for lam3 in _coprime(n3):
                if n2 == n3 and lam2 > lam3:
                    continue
                yield tuple(sorted(((2, 1), (n2, lam2), (n3, lam3))))


def _scan_y(y: int, kind: ExceptionKind) -> List[Hit]:
    """Every ``(T, v)`` with central self-intersection ``-y`` hitting the total."""
    hits: List[Hit] = []
    for legs in non_dihedral_legs():
        star = build_star(y, *legs)
        base_number = chern_data(star).characterizing_number
        for vid, extended in zip(star.ids, characterizing_numbers_after_claw(star)):
            total = extended if kind == ExceptionKind.QHD else base_number + extended
            if total == CHARACTERIZING_TOTAL:
                hits.append((TypeTag(TypeName.N3, y=y, legs=legs), vid, base_number, extended))
    return hits


def _collect(hits: List[Hit], tables: Optional[RealizabilityTables]) -> List[ExceptionPair]:
    seen = set()
    pairs = []
    for tag, vid, base_number, extended in hits:
        star = build_star(tag.y, *tag.legs)
        key = canonical_key(claw_extend(star, vid))
        if key in seen:
            continue
        seen.add(key)
        verdict = p5_realizable(star, vid, tables)
        pairs.append(ExceptionPair(tag, vid, base_number, extended,
                                   verdict.kind == RealizabilityKind.YES, verdict.reason))
    return pairs


async def enumerate_exceptions_async(kind: ExceptionKind,
                                     bounds: EnumerationBounds = EnumerationBounds(),
                                     tables: Optional[RealizabilityTables] = None,
                                     jobs: int = DEFAULT_JOBS) -> List[ExceptionPair]:
    """
    Scan ``y = 2..bounds.max_y`` for exceptional pairs.

    With ``jobs > 1`` each ``y`` is scanned in a worker process; results
    are gathered in ``y`` order so the output is the same for any ``jobs``.

    Args:
        kind: CONJUGATE (``n^T + n^{T^(v)} = 10``) or QHD (``n^{T^(v)} = 10``).
        bounds: Upper bound on ``y``.
        tables: Realizability tables; the packaged asset by default.
        jobs: Worker processes.

    Returns:
        One ExceptionPair per isomorphism class of ``T^(v)``, ordered by
        ``y``, legs and the position of ``v`` in the star.
    """
    ys = range(2, bounds.max_y + 1)
    if jobs > 1:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = await asyncio.gather(
                *(loop.run_in_executor(pool, _scan_y, y, kind) for y in ys))
    else:
        chunks = [_scan_y(y, kind) for y in ys]
    hits = [hit for chunk in chunks for hit in chunk]
    pairs = _collect(hits, tables)
    logger.info("%s enumeration up to y = %d: %d pairs, %d realizable",
                kind.value, bounds.max_y, len(pairs), sum(p.realizable for p in pairs))
    return pairs


async def enumerate_conjugate_exceptions_async(bounds: EnumerationBounds = EnumerationBounds(),
                                               tables: Optional[RealizabilityTables] = None,
                                               jobs: int = DEFAULT_JOBS) -> List[ExceptionPair]:
    return await enumerate_exceptions_async(ExceptionKind.CONJUGATE, bounds, tables, jobs)


async def enumerate_qhd_exceptions_async(bounds: EnumerationBounds = EnumerationBounds(),
                                         tables: Optional[RealizabilityTables] = None,
                                         jobs: int = DEFAULT_JOBS) -> List[ExceptionPair]:
    return await enumerate_exceptions_async(ExceptionKind.QHD, bounds, tables, jobs)


def enumerate_conjugate_exceptions(bounds: EnumerationBounds = EnumerationBounds(),
                                   tables: Optional[RealizabilityTables] = None,
                                   jobs: int = DEFAULT_JOBS) -> List[ExceptionPair]:
    """
    (P5) graphs ``T^(v)`` with ``n^T + n^{T^(v)} = 10``.

    This is a convenience wrapper around the async function.

    Example:
        >>> pairs = enumerate_conjugate_exceptions()
        >>> len(pairs), sum(p.realizable for p in pairs)
        (7, 4)
    """
    return asyncio.run(enumerate_conjugate_exceptions_async(bounds, tables, jobs))


def enumerate_qhd_exceptions(bounds: EnumerationBounds = EnumerationBounds(),
                             tables: Optional[RealizabilityTables] = None,
                             jobs: int = DEFAULT_JOBS) -> List[ExceptionPair]:
    """
    (P5) graphs with ``n^{T^(v)} = 10``, the candidates for compactifying
    a rational homology disk.

    Example:
        >>> pairs = enumerate_qhd_exceptions()
        >>> len(pairs), sum(p.realizable for p in pairs)
        (4, 3)
    """
    return asyncio.run(enumerate_qhd_exceptions_async(bounds, tables, jobs))


def render_exception_table(pairs: List[ExceptionPair]) -> str:
    """Fixed-width table, one row per pair, realizable rows marked ``*``."""
    header = ("", "T", "v", "n^T", "n^T(v)")
    rows = [header] + [
        ("*" if p.realizable else "", p.base.describe(), p.vertex,
         str(p.base_number), str(p.extended_number))
        for p in pairs
    ]
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.append(f"{len(pairs)} pairs, {sum(p.realizable for p in pairs)} realizable")
    return "\n".join(lines) + "\n"
