"""
Exact polyhedral computations on top of cddlib (pycddlib, fraction mode).

cdd writes an inequality row as [b, a_1, ..., a_n] meaning b + <a, x> >= 0,
and a generator row as [1, v...] for a point or [0, r...] for a ray.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import cdd

from utils.rational import primitive_integer_vector

NUMBER_TYPE = "fraction"

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_STATUS = {
    cdd.LPStatusType.OPTIMAL: OPTIMAL,
    cdd.LPStatusType.INCONSISTENT: INFEASIBLE,
    cdd.LPStatusType.STRUC_INCONSISTENT: INFEASIBLE,
    cdd.LPStatusType.DUAL_INCONSISTENT: UNBOUNDED,
    cdd.LPStatusType.STRUC_DUAL_INCONSISTENT: UNBOUNDED,
}


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[tuple] = None
    objective: Optional[Fraction] = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _rows(matrix) -> List[Tuple[Fraction, ...]]:
    return [tuple(Fraction(v) for v in matrix[i]) for i in range(matrix.row_size)]


def orthant_hull_inequalities(points: Sequence[Sequence], dimension: int) -> List[Tuple[Tuple[Fraction, ...], Fraction]]:
    """
    Irredundant H-description of conv(points) + R_+^n.

    Args:
        points: The generating points, each of length `dimension`.
        dimension: The ambient dimension n.

    Returns:
        list: (normal, offset) pairs for <normal, x> >= offset, scaled to
        coprime integers and sorted. The trivial row 1 >= 0 is dropped.

    Raises:
        ValueError: If there are no points.
    """
    if not points:
        raise ValueError("Cannot describe the hull of an empty point set.")
    generators = [[1] + [Fraction(x) for x in point] for point in points]
    generators += [[0] + [int(i == j) for j in range(dimension)] for i in range(dimension)]
    matrix = cdd.Matrix(generators, number_type=NUMBER_TYPE)
    matrix.rep_type = cdd.RepType.GENERATOR
    inequalities = cdd.Polyhedron(matrix).get_inequalities()

    facets = set()
    for row in _rows(inequalities):
        scaled = primitive_integer_vector(row[1:] + row[:1])
        normal, shift = scaled[:dimension], scaled[dimension]
        if not any(normal):
            continue
        facets.add((tuple(normal), -shift))
    return sorted(facets)


def linprog_exact(
    c: Sequence,
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
) -> LPResult:
    """
    Solves  min c^T x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0  exactly.

    Returns:
        LPResult: status plus, when optimal, the primal solution and objective.
    """
    n = len(c)
    rows = [[Fraction(0)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rows += [[Fraction(b)] + [-Fraction(a) for a in coeffs] for coeffs, b in zip(A_ub, b_ub)]
    matrix = cdd.Matrix(rows, number_type=NUMBER_TYPE)
    if len(A_eq):
        matrix.extend(
            [[Fraction(b)] + [-Fraction(a) for a in coeffs] for coeffs, b in zip(A_eq, b_eq)],
            linear=True,
        )
    matrix.rep_type = cdd.RepType.INEQUALITY
    matrix.obj_type = cdd.LPObjType.MIN
    matrix.obj_func = tuple([Fraction(0)] + [Fraction(v) for v in c])

    lp = cdd.LinProg(matrix)
    lp.solve()
    status = _STATUS.get(lp.status)
    if status is None:
        raise RuntimeError(f"cddlib returned an undecided LP status: {lp.status!r}")
    if status != OPTIMAL:
        return LPResult(status)
    solution = tuple(Fraction(v) for v in lp.primal_solution)
    return LPResult(OPTIMAL, solution, Fraction(lp.obj_value))


def is_feasible(A_eq=(), b_eq=(), A_ub=(), b_ub=(), n: Optional[int] = None) -> bool:
    """Feasibility test: a zero objective over the same constraint set."""
    if n is None:
        rows = list(A_eq) or list(A_ub)
        n = len(rows[0]) if rows else 0
    return linprog_exact([0] * n, A_eq, b_eq, A_ub, b_ub).feasible
