# newton/faces.py
"""
Faces of a Newton polyhedron, represented by the set of facets active on them.
"""
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from newton.polyhedron import Facet, NewtonPolyhedron, newton_distance
from poly.polynomial import ExponentVector
from utils.exact_linalg import rank


@dataclass(frozen=True)
class Face:
    generating_vertices: Tuple[ExponentVector, ...]
    recession_directions: Tuple[int, ...]
    dim: int
    is_compact: bool
    normal_witness: Tuple[Fraction, ...]
    active_facets: Tuple[Facet, ...] = ()

    def contains(self, point: Sequence) -> bool:
        """For a point of the polyhedron: does it lie on this face?"""
        return all(f.is_tight(point) for f in self.active_facets)


def _affine_dimension(vertices: Sequence[ExponentVector], directions: Sequence[int], n: int) -> int:
    if not vertices:
        return 0
    base = vertices[0]
    spanning = [[a - b for a, b in zip(v, base)] for v in vertices[1:]]
    spanning += [[Fraction(int(i == j)) for j in range(n)] for i in directions]
    return rank(spanning) if spanning else 0


def face_from_active(np_: NewtonPolyhedron, active: Sequence[Facet]) -> Face:
    """
    The face cut out by a set of facets: vertices tight on all of them, and the
    coordinate directions every active normal ignores.
    """
    active = tuple(sorted(active, key=lambda f: (f.normal, f.offset)))
    vertices = tuple(v for v in np_.vertices if all(f.is_tight(v) for f in active))
    directions = tuple(i for i in range(np_.dimension) if all(f.normal[i] == 0 for f in active))
    witness = tuple(sum((f.normal[i] for f in active), Fraction(0)) for i in range(np_.dimension))
    dim = max(_affine_dimension(vertices, directions, np_.dimension), 0)
    return Face(vertices, directions, dim, not directions, witness, active)


def _closure(np_: NewtonPolyhedron, vertices: Sequence[ExponentVector], directions: Sequence[int]) -> Tuple[Facet, ...]:
    """All facets containing the given vertices and recession directions."""
    return tuple(
        f
        for f in np_.facets
        if all(f.is_tight(v) for v in vertices) and all(f.normal[i] == 0 for i in directions)
    )


def active_facets(np_: NewtonPolyhedron, point: Sequence) -> Tuple[Facet, ...]:
    return tuple(f for f in np_.facets if f.is_tight(point))


def minimal_face_at_diagonal(np_: NewtonPolyhedron) -> Face:
    """
    The unique minimal face containing (d, ..., d), d the Newton distance:
    the intersection of every facet tight at that point. Compact or not.
    """
    d = newton_distance(np_)
    return face_from_active(np_, active_facets(np_, (d,) * np_.dimension))


def enumerate_faces(np_: NewtonPolyhedron) -> List[Face]:
    """
    Every proper nonempty face, found by intersecting facets breadth-first and
    closing each intersection under the facets that contain it.
    """
    seen: dict = {}
    queue = deque()
    for facet in np_.facets:
        queue.append((facet,))
    while queue:
        active = queue.popleft()
        face = face_from_active(np_, active)
        if not face.generating_vertices:
            continue
        key = (face.generating_vertices, face.recession_directions)
        if key in seen:
            continue
        closed = _closure(np_, face.generating_vertices, face.recession_directions)
        face = face_from_active(np_, closed)
        seen[key] = face
        for facet in np_.facets:
            if facet not in closed:
                queue.append(closed + (facet,))
    return sorted(seen.values(), key=lambda f: (f.dim, f.generating_vertices, f.recession_directions))


def enumerate_compact_faces(np_: NewtonPolyhedron) -> List[Face]:
    """
    Faces whose normal cone meets the open positive orthant, vertices included.
    """
    return [face for face in enumerate_faces(np_) if face.is_compact]
