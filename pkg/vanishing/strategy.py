# vanishing/strategy.py
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from errors import NotAFaceError
from newton.faces import Face
from newton.polyhedron import build_newton_polyhedron
from poly.polynomial import Polynomial
from utils.exact_linalg import dot

EXACT_2D = "exact_2d"
EXACT_VERTICES_ONLY = "exact_vertices_only"
SAMPLED_LOWER_BOUND = "sampled_lower_bound"
USER_OVERRIDE = "user_override"


@dataclass(frozen=True)
class Witness:
    """Where an order was attained: the face, a torus point (or edge root), and the order."""

    face: Tuple
    location: Tuple[float, ...]
    multiplicity: int
    interval: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class VanishingOrderResult:
    value: int
    mode: str
    witnesses: List[Witness] = field(default_factory=list)

    @property
    def o_clamped(self) -> int:
        """max(o(S), 2), the form in which o enters the boundedness region."""
        return max(self.value, 2)


def face_polynomial(p: Polynomial, F: Face) -> Polynomial:
    """
    f_F: the terms of p whose exponents lie on the compact face F.

    Membership is exact: alpha is on F iff <w, alpha> attains the minimum of
    <w, .> over N(p), w being F's normal witness.

    Raises:
        NotAFaceError: If F is not compact or is not a face of N(p).
    """
    if not F.is_compact or any(w <= 0 for w in F.normal_witness):
        raise NotAFaceError("Face polynomials are defined for compact faces only.")
    vertices = build_newton_polyhedron(p).vertices
    w = F.normal_witness
    minimum = min(dot(w, e) for e in p.exponents)
    exposed = tuple(v for v in vertices if dot(w, v) == minimum)
    if exposed != tuple(F.generating_vertices):
        raise NotAFaceError("The given face is not a face of the polynomial's Newton polyhedron.")
    return p.restrict(e for e in p.exponents if dot(w, e) == minimum)


class VanishingOrderStrategy(ABC):
    """
    Abstract base class for ways of computing o(f), the maximal order of a
    zero of a compact-face polynomial on the torus (R - {0})^n.
    """

    mode = None

    @abstractmethod
    def compute(self, p: Polynomial) -> VanishingOrderResult:
        """
        Computes o(p).

        Args:
            p (Polynomial): The phase.

        Returns:
            VanishingOrderResult: value, provenance mode and witnesses.
        """
        pass
