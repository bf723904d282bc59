from fractions import Fraction
from typing import Sequence

from sympy import Matrix, Rational


def _to_matrix(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    return Matrix([[Rational(v.numerator, v.denominator) for v in map(Fraction, row)] for row in rows])


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank of a rational matrix given as a list of rows."""
    if not rows or not rows[0]:
        return 0
    return _to_matrix(rows).rank()


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))
