"""Exact feasibility of mixed strict / non-strict linear inequalities.

Solved as one rational linear program with sympy's simplex: strict rows
must clear a common slack ``s <= 1`` and the system is strictly feasible
iff the largest such ``s`` is positive. Systems are small (the number of
variables is the nullity of an intersection matrix).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import Add, Rational, Symbol, symbols
from sympy.solvers.simplex import InfeasibleLPError, lpmax

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Inequality:
    """``coeffs . t + const > 0`` when strict, ``>= 0`` otherwise."""
    coeffs: Tuple[Fraction, ...]
    const: Fraction
    strict: bool

    def holds(self, point: Sequence[Fraction]) -> bool:
        value = sum((c * x for c, x in zip(self.coeffs, point)), Fraction(0)) + self.const
        return value > 0 if self.strict else value >= 0


def _rational(x) -> Rational:
    x = Fraction(x)
    return Rational(x.numerator, x.denominator)


def _fraction(x) -> Fraction:
    r = Rational(x)
    return Fraction(int(r.p), int(r.q))


def _lhs(ineq: Inequality, variables: Sequence[Symbol]):
    return Add(*(_rational(c) * v for c, v in zip(ineq.coeffs, variables) if c),
               _rational(ineq.const))


def find_point(constraints: Sequence[Inequality], n: int) -> Optional[Tuple[Fraction, ...]]:
    """
    Find a point satisfying every inequality, or None if there is none.

    Args:
        constraints: Inequalities over ``n`` variables.
        n: Number of variables.

    Returns:
        A witness tuple of length ``n`` (verified by substitution) or None.
        Among the feasible points it is one that maximizes the smallest
        strict margin, capped at 1.

    Example:
        >>> x_pos = Inequality((Fraction(1),), Fraction(0), True)
        >>> x_lt_1 = Inequality((Fraction(-1),), Fraction(1), True)
        >>> find_point([x_pos, x_lt_1], 1)
        (Fraction(1, 2),)
    """
    constraints = [Inequality(tuple(Fraction(c) for c in ineq.coeffs), Fraction(ineq.const),
                              ineq.strict) for ineq in constraints]
    # rows without variables are decided on the spot
    constant = [c for c in constraints if not any(c.coeffs)]
    if not all(c.holds(()) for c in constant):
        return None
    rows = [c for c in constraints if any(c.coeffs)]
    if n == 0 or not rows:
        return (Fraction(0),) * n

    variables = symbols(f"t0:{n}")
    slack = Symbol("s")
    system: List = [slack <= 1]
    for row in rows:
        system.append(_lhs(row, variables) >= (slack if row.strict else 0))
    try:
        margin, values = lpmax(slack, system)
    except InfeasibleLPError:
        margin = None
    if margin is None or margin <= 0:
        logger.debug("system of %d inequalities in %d variables is infeasible",
                     len(constraints), n)
        return None

    point = tuple(_fraction(values.get(v, 0)) for v in variables)
    if not all(c.holds(point) for c in constraints):
        raise ArithmeticError("simplex witness does not satisfy the system")
    return point
