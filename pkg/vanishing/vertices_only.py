# vanishing/vertices_only.py
from errors import ExactModeUnavailableError
from newton.faces import enumerate_compact_faces
from newton.polyhedron import build_newton_polyhedron
from poly.polynomial import Polynomial
from vanishing import register_strategy
from vanishing.strategy import EXACT_VERTICES_ONLY, VanishingOrderResult, VanishingOrderStrategy


def vanishing_order_vertices_only(p: Polynomial) -> VanishingOrderResult:
    """
    o(p) = 0 when every compact face of N(p) is a vertex: each face polynomial
    is then a single monomial, which has no zeros on the torus.

    Raises:
        ExactModeUnavailableError: If N(p) has a compact face of positive dimension.
    """
    faces = enumerate_compact_faces(build_newton_polyhedron(p))
    if any(face.dim > 0 for face in faces):
        raise ExactModeUnavailableError("N(p) has compact faces of positive dimension.")
    return VanishingOrderResult(0, EXACT_VERTICES_ONLY, [])


@register_strategy(EXACT_VERTICES_ONLY)
class VerticesOnlyStrategy(VanishingOrderStrategy):
    def compute(self, p: Polynomial) -> VanishingOrderResult:
        return vanishing_order_vertices_only(p)
