# vanishing/sampled.py
"""
Heuristic o(f) for any dimension: find approximate torus zeros of each
positive-dimensional compact face polynomial along random lines, then read the
order off the log-log slope of |f_F| along random directions through each
zero. The result can only under-report.
"""
import math
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from newton.faces import enumerate_compact_faces
from newton.polyhedron import build_newton_polyhedron
from poly.polynomial import Polynomial
from utils.sampling import sobol_points
from vanishing import register_strategy
from vanishing.strategy import (
    SAMPLED_LOWER_BOUND,
    VanishingOrderResult,
    VanishingOrderStrategy,
    Witness,
    face_polynomial,
)

TORUS_MARGIN = 0.15
ZERO_TOLERANCE = 1e-9
MAX_ZEROS_PER_FACE = 8
SLOPE_STEPS = np.logspace(-4.0, -1.0, 13)  # three decades
SLOPE_DIRECTIONS = 3
ROUNDING_SLACK = 0.25


def _on_torus_section(points: np.ndarray) -> np.ndarray:
    return np.all((np.abs(points) >= TORUS_MARGIN) & (np.abs(points) <= 1.0), axis=-1)


def _locate_zeros(f: Polynomial, grid: int, seed: int) -> List[np.ndarray]:
    n = f.dimension
    bases = 2.0 * sobol_points(grid, n, seed) - 1.0
    rng = np.random.default_rng(seed)
    directions = rng.standard_normal((grid, n))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    s = np.linspace(-1.0, 1.0, 4 * grid)

    candidates: List[Tuple[float, np.ndarray]] = []
    for base, direction in zip(bases, directions):
        line = base[None, :] + s[:, None] * direction[None, :]
        values = np.abs(f.evaluate_array(line))
        scale = values.max()
        if scale == 0:
            continue
        for i in range(1, len(s) - 1):
            if not (values[i] <= values[i - 1] and values[i] <= values[i + 1]):
                continue
            result = minimize_scalar(
                lambda h: abs(f.evaluate_array(base + h * direction)[0]),
                bounds=(s[i - 1], s[i + 1]),
                method="bounded",
                options={"xatol": 1e-14},
            )
            point = base + result.x * direction
            residual = abs(f.evaluate_array(point)[0])
            if residual <= ZERO_TOLERANCE * scale and _on_torus_section(point):
                candidates.append((residual, point))
    candidates.sort(key=lambda c: c[0])
    return [point for _, point in candidates[:MAX_ZEROS_PER_FACE]]


def _estimate_order(f: Polynomial, zero: np.ndarray, seed: int) -> Tuple[float, Optional[Tuple[int, int]]]:
    """Median slope over a few random directions, and an interval when it is not near an integer."""
    rng = np.random.default_rng(seed)
    slopes = []
    for _ in range(SLOPE_DIRECTIONS):
        u = rng.standard_normal(zero.shape[0])
        u /= np.linalg.norm(u)
        values = np.abs(f.evaluate_array(zero[None, :] + SLOPE_STEPS[:, None] * u[None, :]))
        if np.all(values == 0):
            continue  # the line lies inside the zero set
        values = np.maximum(values, np.finfo(float).tiny)
        slope, _ = np.polyfit(np.log(SLOPE_STEPS), np.log(values), 1)
        slopes.append(slope)
    if not slopes:
        return 0.0, None
    slope = float(np.median(slopes))
    nearest = round(slope)
    if abs(slope - nearest) <= ROUNDING_SLACK:
        return float(nearest), None
    return float(math.floor(slope)), (math.floor(slope), math.ceil(slope))


def vanishing_order_sampled(p: Polynomial, grid: int = 64, seed: int = 0) -> VanishingOrderResult:
    """
    Lower-bound estimate of o(p) from sampled torus zeros of face polynomials.

    Raises:
        ValueError: If n < 2 (in one variable every compact face is a vertex).
    """
    if p.dimension < 2:
        raise ValueError("Sampled vanishing order needs n >= 2.")
    witnesses = []
    for index, face in enumerate(enumerate_compact_faces(build_newton_polyhedron(p))):
        if face.dim == 0:
            continue
        f = face_polynomial(p, face)
        for zero in _locate_zeros(f, grid, seed + index):
            order, interval = _estimate_order(f, zero, seed + index)
            if order >= 1:
                witnesses.append(
                    Witness(face.generating_vertices, tuple(float(x) for x in zero), int(order), interval)
                )
    value = max((w.multiplicity for w in witnesses), default=0)
    attained = [w for w in witnesses if w.multiplicity == value] if value else []
    return VanishingOrderResult(value, SAMPLED_LOWER_BOUND, attained)


@register_strategy(SAMPLED_LOWER_BOUND)
class SampledStrategy(VanishingOrderStrategy):
    """
    Sampling estimator; any n >= 2, any rational exponents.
    """

    def __init__(self, grid: int = 64, seed: int = 0):
        self.grid = grid
        self.seed = seed

    def compute(self, p: Polynomial) -> VanishingOrderResult:
        return vanishing_order_sampled(p, self.grid, self.seed)
