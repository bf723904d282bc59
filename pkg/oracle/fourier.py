# oracle/fourier.py
"""
nu(lambda) = integral of exp(i(lambda'·t + lambda_{n+1} S(t))) K(t) dt over (-r, r)^n,
K(t) = prod_k |t_k|^(-alpha_k) phi(|t| / r), phi(s) = exp(1 - 1/(1 - s^2)) on |s| < 1.

Boxes start on the signed dyadic grid and are halved along the axes the
phase varies most on, until it varies by at most pi across a 3^n test
lattice. Each accepted box gets a tensor Gauss-Legendre rule, with a
lower-order rule on the same box as the error estimate.
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from errors import BudgetExceededError
from oracle.dyadic import default_depth, product_boxes, signed_dyadic_edges, split_along
from oracle.fitting import DecayFit, fit_decay_table, geometric_grid
from poly.polynomial import BlockStructure, Polynomial

GAUSS_NODES = 6
CHECK_NODES = 4
MAX_PHASE_RANGE = np.pi
MAX_SUBDIVISION = 40
CHUNK = 8192
NOISE_FLOOR = 1e-9
# Fits start once lambda turns the phase through this many radians across the support.
ASYMPTOTIC_PHASE = 2 * np.pi


@dataclass(frozen=True)
class FourierEstimate:
    value: complex
    rel_err: float
    evaluations: int
    unreliable: bool


def bump(s: np.ndarray) -> np.ndarray:
    """phi(s) = exp(1 - 1/(1 - s^2)) for |s| < 1, else 0; phi(0) = 1."""
    s = np.abs(np.asarray(s, dtype=float))
    out = np.zeros_like(s)
    inner = s < 1.0
    out[inner] = np.exp(1.0 - 1.0 / (1.0 - s[inner] ** 2))
    return out


def _tensor_rule(nodes: int, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes on [0, 1]^n and their weights (summing to 1)."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    x, w = 0.5 * (x + 1.0), 0.5 * w
    grids = np.meshgrid(*[x] * n, indexing="ij")
    weights = np.meshgrid(*[w] * n, indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=-1)
    return points, np.prod(np.stack([g.ravel() for g in weights], axis=-1), axis=1)


class _Integrand:
    def __init__(self, S: Polynomial, b: BlockStructure, lam: Sequence[float], r: float):
        self.S = S
        self.b = b
        self.linear = np.asarray(lam[: S.dimension], dtype=float)
        self.quadratic = float(lam[S.dimension])
        self.r = r

    def phase(self, points: np.ndarray) -> np.ndarray:
        theta = points @ self.linear
        if self.quadratic:
            theta = theta + self.quadratic * self.S.evaluate_array(points)
        return theta

    def kernel(self, points: np.ndarray) -> np.ndarray:
        radius = np.sqrt(np.sum(points ** 2, axis=1))
        return self.b.weight_array(points) * bump(radius / self.r)

    def values(self, points: np.ndarray) -> np.ndarray:
        return np.exp(1j * self.phase(points)) * self.kernel(points)


def _phase_ranges(f: _Integrand, lo: np.ndarray, hi: np.ndarray, lattice: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Phase range over the 3^n test lattice of each box, and per axis the
    largest range along a lattice line parallel to that axis.
    """
    n = lo.shape[1]
    ranges = np.empty(lo.shape[0])
    axis_ranges = np.empty(lo.shape)
    for start in range(0, lo.shape[0], CHUNK):
        l, h = lo[start:start + CHUNK], hi[start:start + CHUNK]
        points = l[:, None, :] + lattice[None, :, :] * (h - l)[:, None, :]
        theta = f.phase(points.reshape(-1, n)).reshape(points.shape[:2])
        ranges[start:start + CHUNK] = theta.max(axis=1) - theta.min(axis=1)
        grid = theta.reshape((theta.shape[0],) + (3,) * n)
        for axis in range(n):
            spread = grid.max(axis=1 + axis) - grid.min(axis=1 + axis)
            axis_ranges[start:start + CHUNK, axis] = spread.reshape(theta.shape[0], -1).max(axis=1)
    return ranges, axis_ranges


def _outside_support(lo: np.ndarray, hi: np.ndarray, r: float) -> np.ndarray:
    nearest = np.where((lo <= 0) & (hi >= 0), 0.0, np.minimum(np.abs(lo), np.abs(hi)))
    return np.sqrt(np.sum(nearest ** 2, axis=1)) >= r


def _integrate(f: _Integrand, lo: np.ndarray, hi: np.ndarray, rule, check_rule) -> Tuple[complex, complex]:
    n = lo.shape[1]
    total, check = 0j, 0j
    for start in range(0, lo.shape[0], CHUNK):
        l, h = lo[start:start + CHUNK], hi[start:start + CHUNK]
        vol = np.prod(h - l, axis=1)
        for (nodes, weights), is_check in ((rule, False), (check_rule, True)):
            points = l[:, None, :] + nodes[None, :, :] * (h - l)[:, None, :]
            values = f.values(points.reshape(-1, n)).reshape(points.shape[:2])
            contribution = complex(np.sum(vol * (values @ weights)))
            if is_check:
                check += contribution
            else:
                total += contribution
    return total, check


def estimate_fourier(
    S: Polynomial,
    b: BlockStructure,
    lam: Sequence[float],
    r: float,
    budget: int,
    depth: Optional[int] = None,
) -> FourierEstimate:
    """
    Estimates nu(lambda) with a relative error estimate.

    Args:
        S (Polynomial): The phase; exponents must be integers.
        b (BlockStructure): Kernel blocks and exponents.
        lam (Sequence[float]): lambda in R^(n+1); the last entry multiplies S.
        r (float): Cutoff radius, 0 < r < 1.
        budget (int): Maximal number of integrand evaluations.
        depth (int, optional): Finest dyadic scale of the starting grid.

    Returns:
        FourierEstimate: value, |I_6 - I_4| / |I_6|, evaluations, and whether
        some box was still oscillating at the subdivision cap.

    Raises:
        ValueError: On fractional exponents, a wrong lambda length or r out of range.
        BudgetExceededError: If the subdivision needs more evaluations than `budget`.
    """
    n = S.dimension
    if not S.has_integer_exponents:
        raise ValueError("The Fourier oracle needs a phase with integer exponents.")
    if len(lam) != n + 1:
        raise ValueError(f"lambda must have {n + 1} entries, got {len(lam)}.")
    if not 0 < r < 1:
        raise ValueError(f"r must lie in (0, 1), got {r}.")
    depth = default_depth(n) if depth is None else depth
    f = _Integrand(S, b, lam, r)
    lattice = np.array(np.meshgrid(*[[0.0, 0.5, 1.0]] * n, indexing="ij")).reshape(n, -1).T
    rule = _tensor_rule(GAUSS_NODES, n)
    check_rule = _tensor_rule(CHECK_NODES, n)
    per_box = rule[0].shape[0] + check_rule[0].shape[0]

    lo, hi = product_boxes(signed_dyadic_edges(r, depth), n)
    keep = ~_outside_support(lo, hi, r)
    lo, hi = lo[keep], hi[keep]

    value, check = 0j, 0j
    evaluations, unreliable, level = 0, False, 0
    while lo.shape[0]:
        ranges, axis_ranges = _phase_ranges(f, lo, hi, lattice)
        evaluations += lo.shape[0] * lattice.shape[0]
        accept = ranges <= MAX_PHASE_RANGE
        if level == MAX_SUBDIVISION:
            unreliable = unreliable or not accept.all()
            accept[:] = True
        evaluations += int(accept.sum()) * per_box
        if evaluations > budget:
            raise BudgetExceededError(
                f"Oscillatory quadrature at lambda = {list(lam)} needs more than {budget} evaluations."
            )
        total, estimate = _integrate(f, lo[accept], hi[accept], rule, check_rule)
        value += total
        check += estimate
        axes = axis_ranges[~accept] > MAX_PHASE_RANGE / n
        axes[np.arange(axes.shape[0]), axis_ranges[~accept].argmax(axis=1)] = True
        lo, hi = split_along(lo[~accept], hi[~accept], axes)
        if lo.shape[0]:
            keep = ~_outside_support(lo, hi, r)
            lo, hi = lo[keep], hi[keep]
        level += 1
    rel_err = abs(value - check) / abs(value) if value != 0 else float("inf")
    return FourierEstimate(value, float(rel_err), evaluations, unreliable)


def estimate_fourier_transform(
    S: Polynomial, b: BlockStructure, lam: Sequence[float], r: float, budget: int
) -> complex:
    """The transform value alone; see `estimate_fourier`."""
    return estimate_fourier(S, b, lam, r, budget).value


def kernel_mass(S: Polynomial, b: BlockStructure, r: float, budget: int) -> float:
    """Integral of K, i.e. nu(0)."""
    return estimate_fourier(S, b, [0.0] * (S.dimension + 1), r, budget).value.real


def direction_vector(direction, dimension: int, seed: int = 0) -> np.ndarray:
    """
    Unit vector in R^(n+1) for a 1-based axis index, or a seeded random
    direction for "random".

    Raises:
        ValueError: If the axis index is outside 1..n+1.
    """
    if direction == "random":
        v = np.random.default_rng(seed).standard_normal(dimension + 1)
        return v / np.linalg.norm(v)
    k = int(direction)
    if not 1 <= k <= dimension + 1:
        raise ValueError(f"direction must be in 1..{dimension + 1} or 'random', got {direction}.")
    v = np.zeros(dimension + 1)
    v[k - 1] = 1.0
    return v


def phase_variation(S: Polynomial, e: np.ndarray, r: float, points: int = 64) -> float:
    """max - min of e'·t + e_{n+1} S(t) over a grid on the support |t| < r."""
    n = S.dimension
    axis = np.linspace(-r, r, points + 1)
    grid = np.stack(np.meshgrid(*[axis] * n, indexing="ij"), axis=-1).reshape(-1, n)
    grid = grid[np.sum(grid ** 2, axis=1) < r * r]
    theta = grid @ np.asarray(e[:n], dtype=float)
    if e[n]:
        theta = theta + float(e[n]) * S.evaluate_array(grid)
    return float(theta.max() - theta.min())


def asymptotic_lambda(S: Polynomial, e: np.ndarray, r: float) -> float:
    """Smallest lambda at which the phase turns through ASYMPTOTIC_PHASE across the support."""
    variation = phase_variation(S, e, r)
    return ASYMPTOTIC_PHASE / variation if variation > 0 else float("inf")


def fit_decay_exponent(
    S: Polynomial,
    b: BlockStructure,
    direction,
    lambda_range: Tuple[float, float, int],
    budget: int,
    r: float = 0.5,
    seed: int = 0,
    log_power: int = 0,
) -> DecayFit:
    """
    Fits the decay of |nu(lambda · e)| over a geometric lambda grid.

    Args:
        direction: 1-based axis index (n+1 is the S direction) or "random".
        lambda_range: (lambda_min, lambda_max, points) with at least 8 points.
        budget (int): Evaluation budget per grid point.
        log_power (int): Power of log(lambda) divided out before fitting.

    Raises:
        InconclusiveNumericsError: When fewer than four grid points past
            `asymptotic_lambda` clear the noise floor.
    """
    low, high, points = lambda_range
    grid = geometric_grid(low, high, points)
    e = direction_vector(direction, S.dimension, seed)
    mass = kernel_mass(S, b, r, budget)
    estimates = [estimate_fourier(S, b, lam * e, r, budget) for lam in grid]
    return fit_decay_table(
        grid,
        [abs(est.value) for est in estimates],
        [est.rel_err for est in estimates],
        direction,
        NOISE_FLOOR * mass,
        log_power,
        any(est.unreliable for est in estimates),
        asymptotic_lambda(S, e, r),
    )
