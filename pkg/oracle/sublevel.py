# oracle/sublevel.py
"""
Weighted sublevel measures

    mu(eps) = integral over (0, r)^n of 1{S*(t) < eps} prod_k |t_k|^(-alpha_k) dt

by dyadic stratification. S* is nondecreasing in every coordinate on the
positive orthant, so a box lies inside the sublevel set when S* at its upper
corner is below eps and outside when S* at its lower corner is not. Only the
boxes in between are bisected and then sampled with shifted Sobol points.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from errors import BudgetExceededError
from oracle.dyadic import bisect, default_depth, dyadic_edges, map_to_boxes, product_boxes, volumes
from poly.polynomial import BlockStructure, StarFunction
from utils.sampling import random_shifts, shifted, sobol_points

QMC_POINTS = 32
MAX_REFINEMENT = 24
CHUNK = 4096


@dataclass(frozen=True)
class SublevelEstimate:
    measure: float
    rel_err: float
    evaluations: int
    refinement_depth: int


def _split(star: StarFunction, lo: np.ndarray, hi: np.ndarray, eps: float):
    inside = star.evaluate_array(hi) < eps
    outside = star.evaluate_array(lo) >= eps
    mixed = ~(inside | outside)
    return inside, mixed


def _separable(b: BlockStructure) -> bool:
    return all(len(block) == 1 for block in b.blocks)


def _exact_weight_integral(b: BlockStructure, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Integral of prod_i t_i^(-alpha_i) over each box, singleton blocks only."""
    total = np.ones(lo.shape[0])
    for block, alpha in zip(b.blocks, b.alphas):
        i, power = block[0], 1.0 - float(alpha)
        total = total * (hi[:, i] ** power - lo[:, i] ** power) / power
    return total


def _sampled_integral(
    star: StarFunction,
    b: BlockStructure,
    lo: np.ndarray,
    hi: np.ndarray,
    eps: Optional[float],
    base: np.ndarray,
    seed: int,
) -> Tuple[float, float]:
    """
    Sum over boxes of vol · mean(weight · indicator) on shifted Sobol points,
    and the summed variance of those box estimates. eps=None drops the indicator.
    """
    shifts = random_shifts(lo.shape[0], lo.shape[1], seed)
    total, variance = 0.0, 0.0
    for start in range(0, lo.shape[0], CHUNK):
        stop = start + CHUNK
        unit = shifted(base[None, :, :], shifts[start:stop, None, :])
        points = map_to_boxes(unit, lo[start:stop], hi[start:stop])
        flat = points.reshape(-1, lo.shape[1])
        values = b.weight_array(flat)
        if eps is not None:
            values = values * (star.evaluate_array(flat) < eps)
        values = values.reshape(points.shape[0], points.shape[1])
        vol = volumes(lo[start:stop], hi[start:stop])
        total += float(np.sum(vol * values.mean(axis=1)))
        variance += float(np.sum((vol * values.std(axis=1)) ** 2 / values.shape[1]))
    return total, variance


def estimate_sublevel(
    star: StarFunction,
    b: BlockStructure,
    eps: float,
    r: float,
    budget: int,
    seed: int,
    qmc_points: int = QMC_POINTS,
    depth: Optional[int] = None,
) -> SublevelEstimate:
    """
    Estimates the weighted measure of {t in (0, r)^n : S*(t) < eps}.

    Args:
        star (StarFunction): The majorant S*.
        b (BlockStructure): Kernel blocks and exponents.
        eps (float): Level, 0 < eps < 1/2.
        r (float): Box radius, 0 < r < 1.
        budget (int): Maximal number of sampled S* evaluations.
        seed (int): Seed for the Sobol scramble and the per-box shifts.
        qmc_points (int): Points per sampled box.
        depth (int, optional): Finest dyadic scale; defaults by dimension.

    Returns:
        SublevelEstimate: measure, relative standard error, evaluations spent
        and the bisection depth reached on boundary boxes.

    Raises:
        ValueError: If eps or r is out of range.
        BudgetExceededError: If the budget cannot cover one sample per boundary box.
    """
    if not 0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}.")
    if not 0 < r < 1:
        raise ValueError(f"r must lie in (0, 1), got {r}.")
    n = star.dimension
    depth = default_depth(n) if depth is None else depth
    exact_weights = all(alpha == 0 for alpha in b.alphas) or _separable(b)

    lo, hi = product_boxes(dyadic_edges(r, depth), n)
    inside, mixed = _split(star, lo, hi, eps)
    inside_lo, inside_hi = [lo[inside]], [hi[inside]]
    mixed_lo, mixed_hi = lo[mixed], hi[mixed]

    sampled_inside = 0 if exact_weights else int(inside.sum())
    if (sampled_inside + mixed_lo.shape[0]) * qmc_points > budget:
        raise BudgetExceededError(
            f"Budget {budget} cannot cover {mixed_lo.shape[0]} boundary boxes at depth {depth} "
            f"with {qmc_points} points each."
        )

    level = 0
    while (
        level < MAX_REFINEMENT
        and mixed_lo.shape[0]
        and (sampled_inside + mixed_lo.shape[0] * 2 ** n) * qmc_points <= budget
    ):
        child_lo, child_hi = bisect(mixed_lo, mixed_hi)
        inside, mixed = _split(star, child_lo, child_hi, eps)
        inside_lo.append(child_lo[inside])
        inside_hi.append(child_hi[inside])
        if not exact_weights:
            sampled_inside += int(inside.sum())
        mixed_lo, mixed_hi = child_lo[mixed], child_hi[mixed]
        level += 1

    inside_lo = np.concatenate(inside_lo)
    inside_hi = np.concatenate(inside_hi)
    base = sobol_points(qmc_points, n, seed)

    if all(alpha == 0 for alpha in b.alphas):
        measure, variance = float(np.sum(volumes(inside_lo, inside_hi))), 0.0
    elif exact_weights:
        measure, variance = float(np.sum(_exact_weight_integral(b, inside_lo, inside_hi))), 0.0
    else:
        measure, variance = _sampled_integral(star, b, inside_lo, inside_hi, None, base, seed + 1)

    boundary, boundary_variance = _sampled_integral(star, b, mixed_lo, mixed_hi, eps, base, seed)
    measure += boundary
    variance += boundary_variance
    evaluations = (sampled_inside + mixed_lo.shape[0]) * qmc_points
    rel_err = float(np.sqrt(variance) / measure) if measure > 0 else float("inf")
    return SublevelEstimate(measure, rel_err, evaluations, level)


def estimate_sublevel_measure(
    star: StarFunction,
    b: BlockStructure,
    eps: float,
    r: float,
    budget: int,
    seed: int,
) -> float:
    """The measure alone; see `estimate_sublevel`."""
    return estimate_sublevel(star, b, eps, r, budget, seed).measure
