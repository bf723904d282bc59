# newton/__init__.py
from newton.faces import (
    Face,
    enumerate_compact_faces,
    enumerate_faces,
    face_from_active,
    minimal_face_at_diagonal,
)
from newton.majorization import MajorizationReport, check_star_majorization
from newton.polyhedron import (
    Facet,
    NewtonPolyhedron,
    build_newton_polyhedron,
    minimalize_star,
    newton_distance,
    polyhedron_from_points,
    star_function,
    star_polyhedron,
)
