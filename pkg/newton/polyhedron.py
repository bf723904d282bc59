# newton/polyhedron.py
"""
Newton polyhedra N(f) = conv(exponents) + R_+^n, built exactly.

Vertices come from exact LP membership tests, facets from the cddlib
H-description of the vertices plus the coordinate rays.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from poly.polynomial import ExponentVector, Polynomial, StarFunction
from utils.exact_linalg import dot
from utils.polyhedral import is_feasible, linprog_exact, orthant_hull_inequalities


@dataclass(frozen=True)
class Facet:
    """The inequality <normal, x> >= offset, tight on the facet."""

    normal: Tuple[Fraction, ...]
    offset: Fraction

    def value(self, point: Sequence) -> Fraction:
        return dot(self.normal, point)

    def is_tight(self, point: Sequence) -> bool:
        return self.value(point) == self.offset

    def holds(self, point: Sequence) -> bool:
        return self.value(point) >= self.offset


@dataclass(frozen=True)
class NewtonPolyhedron:
    dimension: int
    candidate_points: Tuple[ExponentVector, ...]
    vertices: Tuple[ExponentVector, ...]
    facets: Tuple[Facet, ...]

    def satisfies_facets(self, point: Sequence) -> bool:
        return all(f.holds(point) for f in self.facets)

    def contains(self, point: Sequence) -> bool:
        """Exact membership via LP: point = sum lambda_i v_i + s, lambda in simplex, s >= 0."""
        return in_hull_plus_orthant(point, self.vertices)


def in_hull_plus_orthant(point: Sequence, generators: Sequence[ExponentVector]) -> bool:
    """Is `point` in conv(generators) + R_+^n?  Solved as an exact feasibility LP."""
    if not generators:
        return False
    n = len(point)
    k = len(generators)
    # sum_i lambda_i v_i <= point  (the slack is the orthant part), sum lambda = 1
    A_ub = [[Fraction(generators[i][j]) for i in range(k)] for j in range(n)]
    b_ub = [Fraction(x) for x in point]
    A_eq = [[Fraction(1)] * k]
    return is_feasible(A_eq, [Fraction(1)], A_ub, b_ub, n=k)


def _dominated(point: ExponentVector, others: Sequence[ExponentVector]) -> bool:
    return any(all(o_i <= p_i for o_i, p_i in zip(other, point)) for other in others)


def _minimal_vertices(points: Sequence[ExponentVector]) -> Tuple[ExponentVector, ...]:
    vertices = []
    for index, point in enumerate(points):
        others = points[:index] + points[index + 1:]
        # Coordinatewise domination is the cheap special case of hull membership.
        if _dominated(point, others) or in_hull_plus_orthant(point, others):
            continue
        vertices.append(point)
    return tuple(sorted(vertices))


def _facets(vertices: Sequence[ExponentVector], dimension: int) -> Tuple[Facet, ...]:
    facets = [Facet(normal, offset) for normal, offset in orthant_hull_inequalities(vertices, dimension)]
    return tuple(sorted(facets, key=lambda f: (f.normal, f.offset)))


def build_newton_polyhedron(p: Polynomial) -> NewtonPolyhedron:
    """
    Builds N(p): the minimal vertex set and a complete H-description of
    conv(exponents) + R_+^n, both in lexicographic order.

    Raises:
        ValueError: If p has no terms.
    """
    if p.is_zero:
        raise ValueError("The Newton polyhedron of the zero polynomial is empty.")
    return polyhedron_from_points(p.exponents, p.dimension)


def polyhedron_from_points(points: Sequence[ExponentVector], dimension: int) -> NewtonPolyhedron:
    candidates = tuple(sorted(set(tuple(Fraction(x) for x in point) for point in points)))
    vertices = _minimal_vertices(candidates)
    return NewtonPolyhedron(dimension, candidates, vertices, _facets(vertices, dimension))


def star_function(p: Polynomial) -> StarFunction:
    """S*: the sum of |t^v| over the vertices v of N(p)."""
    return StarFunction(p.dimension, build_newton_polyhedron(p).vertices)


def star_polyhedron(s: StarFunction) -> NewtonPolyhedron:
    return polyhedron_from_points(s.vertex_exponents, s.dimension)


def minimalize_star(s: StarFunction) -> StarFunction:
    """Drops exponents that are not vertices of the Newton polyhedron they generate."""
    return StarFunction(s.dimension, star_polyhedron(s).vertices)


def newton_distance(np_: NewtonPolyhedron) -> Fraction:
    """
    d = min{c : (c, ..., c) in N(f)}, solved as the exact LP

        minimize c  s.t.  c·1 - sum lambda_i v_i - s = 0,  sum lambda_i = 1,
                          lambda, s, c >= 0.
    """
    if not np_.vertices:
        raise ValueError("Newton distance of an empty polyhedron is undefined.")
    n, k = np_.dimension, len(np_.vertices)
    # variable order: lambda_1..lambda_k, s_1..s_n, c
    A_eq = []
    for j in range(n):
        row = [-Fraction(v[j]) for v in np_.vertices]
        row += [Fraction(-1) if i == j else Fraction(0) for i in range(n)]
        row.append(Fraction(1))
        A_eq.append(row)
    A_eq.append([Fraction(1)] * k + [Fraction(0)] * (n + 1))
    b_eq = [Fraction(0)] * n + [Fraction(1)]
    cost = [Fraction(0)] * (k + n) + [Fraction(1)]
    result = linprog_exact(cost, A_eq, b_eq)
    return result.objective


def diagonal_point(np_: NewtonPolyhedron) -> ExponentVector:
    d = newton_distance(np_)
    return (d,) * np_.dimension
