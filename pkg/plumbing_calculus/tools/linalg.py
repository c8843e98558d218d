"""Exact linear algebra over symmetric integer matrices.

All elimination runs on sympy ``DomainMatrix`` over ``ZZ`` or ``QQ``;
results come back as ints and ``Fraction``s. There is no floating point
path. Functions accept an ``IntersectionMatrix`` or a plain list of rows.
"""

from fractions import Fraction
from typing import List, Sequence, Union

from sympy import QQ, ZZ
from sympy.polys.matrices import DM, DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.matrices.normalforms import smith_normal_form as _sympy_smith_normal_form

from plumbing_calculus.exceptions import DegenerateIntersectionForm
from plumbing_calculus.models import (
    Inertia,
    IntersectionMatrix,
    SolutionKind,
    SolutionSet,
)

MatrixLike = Union[IntersectionMatrix, Sequence[Sequence[int]]]


def _rows(Q: MatrixLike) -> List[List]:
    if isinstance(Q, IntersectionMatrix):
        return Q.rows()
    return [list(r) for r in Q]


def _qq(rows: Sequence[Sequence]) -> DomainMatrix:
    return DM([[(Fraction(x).numerator, Fraction(x).denominator) for x in row] for row in rows],
              QQ)


def _fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def matvec(Q: MatrixLike, z: Sequence) -> List[Fraction]:
    return [sum((Fraction(q) * Fraction(x) for q, x in zip(row, z)), Fraction(0))
            for row in _rows(Q)]


def determinant(Q: MatrixLike) -> int:
    """
    Exact integer determinant.

    Args:
        Q: Square integer matrix; the 0x0 matrix has determinant 1.

    Returns:
        The integer determinant.

    Example:
        >>> determinant([[2, 1], [1, 1]])
        1
    """
    rows = [[int(x) for x in row] for row in _rows(Q)]
    if not rows:
        return 1
    return int(DM(rows, ZZ).det())


def rank(Q: MatrixLike) -> int:
    rows = _rows(Q)
    if not rows:
        return 0
    return _qq(rows).rank()


def solve(Q: MatrixLike, a: Sequence) -> SolutionSet:
    """
    Classify the solutions of ``Q z = a`` exactly.

    Args:
        Q: k x k integer matrix.
        a: Right-hand side of length k (ints or Fractions).

    Returns:
        SolutionSet: ``EMPTY``; ``UNIQUE`` with ``particular``; or ``AFFINE``
        with the particular solution whose free variables are 0 and a basis
        of the kernel of Q (one vector per free column, that column set to 1).

    Example:
        >>> solve([[2, 1], [1, 1]], [3, 2]).particular
        (Fraction(1, 1), Fraction(1, 1))
    """
    rows = _rows(Q)
    k = len(rows)
    if len(a) != k:
        raise ValueError(f"right-hand side has length {len(a)}, expected {k}")
    if k == 0:
        return SolutionSet(SolutionKind.UNIQUE, ())
    reduced, pivots = _qq([list(row) + [b] for row, b in zip(rows, a)]).rref()
    if k in pivots:
        return SolutionSet(SolutionKind.EMPTY)

    entries = reduced.to_list()
    particular = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        particular[col] = _fraction(entries[r][k])
    if len(pivots) == k:
        return SolutionSet(SolutionKind.UNIQUE, tuple(particular))

    q_reduced, q_pivots = _qq(rows).rref()
    kernel = q_reduced.nullspace_from_rref(q_pivots).to_list()
    return SolutionSet(SolutionKind.AFFINE, tuple(particular),
                       tuple(tuple(_fraction(x) for x in v) for v in kernel))


def inverse(Q: MatrixLike) -> List[List[Fraction]]:
    rows = _rows(Q)
    if not rows:
        return []
    try:
        inv = _qq(rows).inv()
    except DMNonInvertibleMatrixError:
        raise DegenerateIntersectionForm("matrix is singular") from None
    return [[_fraction(x) for x in row] for row in inv.to_list()]


def inertia(Q: MatrixLike) -> Inertia:
    """
    Signature by symmetric congruence diagonalization over ``QQ``.

    A nonzero diagonal pivot is eliminated by a Schur complement. When every
    remaining diagonal entry is zero but some ``q_ij != 0``, row/column j is
    added to row/column i, turning the hyperbolic block into one with
    diagonal ``2 q_ij``.

    Example:
        >>> inertia([[0, 1], [1, 0]]).as_tuple()
        (1, 0, 1)
    """
    rows = _rows(Q)
    k = len(rows)
    if k == 0:
        return Inertia(0, 0, 0)
    m = _qq(rows)
    plus = minus = 0
    while m.shape[0]:
        n = m.shape[0]
        entries = m.to_list()
        pivot = next((i for i in range(n) if entries[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in range(n) for j in range(n)
                         if i != j and entries[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            shear = DM([[int(r == c or (r, c) == (i, j)) for c in range(n)] for r in range(n)], QQ)
            m = shear * m * shear.transpose()
            continue
        p = entries[pivot][pivot]
        if p > 0:
            plus += 1
        else:
            minus += 1
        rest = [i for i in range(n) if i != pivot]
        if not rest:
            break
        column = m.extract(rest, [pivot])
        m = m.extract(rest, rest) - column * column.transpose() * (QQ.one / p)
    return Inertia(plus, k - plus - minus, minus)


def is_negative_definite(Q: MatrixLike) -> bool:
    """True iff inertia is (0, 0, k); the empty matrix counts as negative definite."""
    k = len(_rows(Q))
    return inertia(Q).as_tuple() == (0, 0, k)


def leading_minors(Q: MatrixLike) -> List[int]:
    rows = _rows(Q)
    return [determinant([r[:n] for r in rows[:n]]) for n in range(1, len(rows) + 1)]


def smith_normal_form(Q: MatrixLike) -> List[int]:
    """
    Invariant factors ``d1 | d2 | ... | dk`` (zeros last).

    Example:
        >>> smith_normal_form([[-2, 0], [0, -2]])
        [2, 2]
    """
    rows = [[int(x) for x in r] for r in _rows(Q)]
    if not rows:
        return []
    snf = _sympy_smith_normal_form(DM(rows, ZZ)).to_Matrix()
    diagonal = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = sorted(d for d in diagonal if d != 0)
    return nonzero + [0] * (len(rows) - len(nonzero))
