# vanishing/order.py
from typing import Optional

from newton.faces import enumerate_compact_faces
from newton.polyhedron import build_newton_polyhedron
from poly.polynomial import Polynomial
from vanishing import create_strategy
from vanishing.strategy import (
    EXACT_2D,
    EXACT_VERTICES_ONLY,
    SAMPLED_LOWER_BOUND,
    USER_OVERRIDE,
    VanishingOrderResult,
)


def select_mode(p: Polynomial, override: Optional[int] = None) -> str:
    """
    Picks the most exact mode available for p.

    Args:
        p (Polynomial): The phase.
        override (int, optional): A user-supplied o(S).

    Returns:
        str: The strategy mode.
    """
    if override is not None:
        return USER_OVERRIDE
    if p.dimension == 2 and p.has_integer_exponents:
        return EXACT_2D
    faces = enumerate_compact_faces(build_newton_polyhedron(p))
    if all(face.dim == 0 for face in faces):
        return EXACT_VERTICES_ONLY
    return SAMPLED_LOWER_BOUND


def order_of_S(
    p: Polynomial,
    override: Optional[int] = None,
    grid: int = 64,
    seed: int = 0,
) -> VanishingOrderResult:
    """
    o(S) with provenance: override if given, exact when decidable, sampled otherwise.
    The result's o_clamped is max(o, 2).
    """
    mode = select_mode(p, override)
    if mode == USER_OVERRIDE:
        strategy = create_strategy(mode, value=override)
    elif mode == SAMPLED_LOWER_BOUND:
        strategy = create_strategy(mode, grid=grid, seed=seed)
    else:
        strategy = create_strategy(mode)
    return strategy.compute(p)
