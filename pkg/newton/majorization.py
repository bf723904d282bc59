from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from poly.polynomial import Polynomial, StarFunction
from utils.sampling import sobol_points

DYADIC_SHELLS = 12
UNBOUNDED_RATIO = 1e8
STABILITY_FACTOR = 1.5


@dataclass(frozen=True)
class MajorizationReport:
    constant: float
    refined_constant: float
    passed: bool
    counterexample: Optional[Tuple[float, ...]] = None


def _max_ratio(p: Polynomial, s: StarFunction, r: float, count: int, seed: int):
    per_shell = max(1, count // DYADIC_SHELLS)
    unit = 2.0 * sobol_points(per_shell, p.dimension, seed) - 1.0
    # Shells r·2^-k sample the neighbourhood of the origin, where the bound matters.
    points = np.concatenate([unit * r * 2.0 ** -k for k in range(DYADIC_SHELLS)])
    f = np.abs(p.evaluate_array(points))
    star = s.evaluate_array(points)
    bad = (star == 0) & (f != 0)
    if bad.any():
        return np.inf, tuple(points[np.argmax(bad)])
    mask = star > 0
    if not mask.any():
        return 0.0, None
    ratios = f[mask] / star[mask]
    worst = int(np.argmax(ratios))
    return float(ratios[worst]), tuple(points[mask][worst])


def check_star_majorization(
    p: Polynomial, s: StarFunction, sample_box: float, count: int, seed: int = 0
) -> MajorizationReport:
    """
    Estimates C in |f(t)| <= C f*(t) on (-r, r)^n by sampling, then repeats
    with twice the samples. Passes when both estimates are finite and the
    refined one has not grown by more than half.

    Raises:
        ValueError: If the box radius is outside (0, 1].
    """
    if not 0 < sample_box <= 1:
        raise ValueError(f"Sample box radius must lie in (0, 1], got {sample_box}.")
    constant, point = _max_ratio(p, s, sample_box, count, seed)
    refined, refined_point = _max_ratio(p, s, sample_box, 2 * count, seed + 1)
    finite = np.isfinite(constant) and np.isfinite(refined)
    passed = bool(finite and refined <= STABILITY_FACTOR * constant + 1e-12 and refined < UNBOUNDED_RATIO)
    counterexample = None
    if not passed:
        counterexample = refined_point if refined >= constant else point
    return MajorizationReport(constant, refined, passed, counterexample)
