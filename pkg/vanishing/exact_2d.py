# vanishing/exact_2d.py
"""
Exact o(f) in two variables.

On a compact edge with primitive direction (p, -q) the face polynomial is
t1^a1 t2^a2 · g(w) with w = t1^p / t2^q, so a torus zero of order k is a
nonzero real root of g of multiplicity k. Each of the four sign charts
(t1, t2) -> (±x, ±y), x, y > 0 turns this into a question about positive roots,
answered with a square-free decomposition and Sturm root counting.
"""
import math
from itertools import product
from typing import List

from sympy import Poly, Rational, Symbol

from errors import ExactModeUnavailableError
from newton.faces import Face, enumerate_compact_faces
from newton.polyhedron import build_newton_polyhedron
from poly.polynomial import Polynomial
from vanishing import register_strategy
from vanishing.strategy import EXACT_2D, VanishingOrderResult, VanishingOrderStrategy, Witness

_w = Symbol("w")


def _edge_roots(p: Polynomial, edge: Face) -> List[Witness]:
    (a1, a2), (b1, b2) = sorted(edge.generating_vertices)
    a1, a2, b1, b2 = (int(x) for x in (a1, a2, b1, b2))
    steps = math.gcd(b1 - a1, a2 - b2)
    dp, dq = (b1 - a1) // steps, (a2 - b2) // steps
    coefficients = [p.coefficient((a1 + k * dp, a2 - k * dq)) for k in range(steps + 1)]

    witnesses = []
    for s1, s2 in product((1, -1), repeat=2):
        signed = [
            c * s1 ** (a1 + k * dp) * s2 ** (a2 - k * dq)
            for k, c in enumerate(coefficients)
        ]
        g = Poly([Rational(c.numerator, c.denominator) for c in reversed(signed)], _w, domain="QQ")
        _, factors = g.sqf_list()
        for factor, multiplicity in factors:
            # g(0) = c_0 != 0 (a vertex term), so counting on [0, oo) counts positive roots.
            if factor.count_roots(0) == 0:
                continue
            for root in factor.real_roots():
                if root > 0:
                    x = float(root) ** (1.0 / dp)
                    witnesses.append(
                        Witness(edge.generating_vertices, (s1 * x, float(s2)), int(multiplicity))
                    )
    return witnesses


def vanishing_order_exact_2d(p: Polynomial) -> VanishingOrderResult:
    """
    o(p) for n = 2 with integer exponents: the maximal multiplicity of a
    nonzero real root of any compact edge polynomial. Vertices contribute 0.

    Raises:
        ExactModeUnavailableError: If n != 2 or some exponent is not an integer.
    """
    if p.dimension != 2:
        raise ExactModeUnavailableError("Exact vanishing order is only available for n = 2.")
    if not p.has_integer_exponents:
        raise ExactModeUnavailableError("Exact vanishing order needs integer exponents; use sampled mode.")
    polyhedron = build_newton_polyhedron(p)
    witnesses = []
    for face in enumerate_compact_faces(polyhedron):
        if face.dim == 1:
            witnesses.extend(_edge_roots(p, face))
    value = max((w.multiplicity for w in witnesses), default=0)
    attained = sorted(
        (w for w in witnesses if w.multiplicity == value),
        key=lambda w: (w.face, w.location),
    )
    return VanishingOrderResult(value, EXACT_2D, attained if value else [])


@register_strategy(EXACT_2D)
class Exact2DStrategy(VanishingOrderStrategy):
    """
    Exact computation through edge polynomials; n = 2 only.
    """

    def compute(self, p: Polynomial) -> VanishingOrderResult:
        return vanishing_order_exact_2d(p)
