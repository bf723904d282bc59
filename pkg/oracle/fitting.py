# oracle/fitting.py
"""
Least-squares scaling fits on log-log tables.
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from errors import InconclusiveNumericsError
from oracle.sublevel import estimate_sublevel
from poly.polynomial import BlockStructure, StarFunction

PRE_ASYMPTOTIC = 3
MAX_REL_ERR = 0.10
MIN_SCALES = 10
MIN_FIT_POINTS = 4
# Relative noise allowance when checking that mu(eps) decreases with eps.
MONOTONE_SLACK = 3.0


@dataclass(frozen=True)
class SublevelFit:
    js: Tuple[int, ...]
    epsilons: Tuple[float, ...]
    measures: Tuple[float, ...]
    rel_errs: Tuple[float, ...]
    used: Tuple[bool, ...]
    fitted_a: float
    fitted_d: float
    intercept: float
    residual: float
    monotone: bool
    r: float
    sample_budget: int
    seed: int
    free_a: float = np.nan
    free_d: float = np.nan
    predicted_a: Optional[float] = None


@dataclass(frozen=True)
class DecayFit:
    lambdas: Tuple[float, ...]
    magnitudes: Tuple[float, ...]
    rel_errs: Tuple[float, ...]
    used: Tuple[bool, ...]
    fitted_slope: float
    intercept: float
    residual: float
    direction: object
    log_power: int = 0
    unreliable: bool = False
    asymptotic_from: float = 0.0

    @property
    def beta_hat(self) -> float:
        """Decay rate: |nu(lambda)| ~ lambda^(-beta_hat)."""
        return -self.fitted_slope


def _is_monotone(measures: Sequence[float], rel_errs: Sequence[float]) -> bool:
    for (m0, e0), (m1, e1) in zip(zip(measures, rel_errs), zip(measures[1:], rel_errs[1:])):
        slack = MONOTONE_SLACK * max(e0, e1) if np.isfinite(max(e0, e1)) else np.inf
        if m1 > m0 * (1.0 + slack) + 1e-300:
            return False
    return True


def _least_squares(design: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, float]:
    coeffs, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    return coeffs, float(np.sqrt(np.mean((design @ coeffs - y) ** 2)))


def select_log_power(js: Sequence[float], log_measures: Sequence[float], predicted_a: float, max_log_power: int) -> int:
    """
    The integer d in 0..max_log_power for which log2 mu + a·j - d·log2(max(j, 2))
    is flattest at the predicted rate a.

    Over a finite j window a free log coefficient also absorbs power-law
    corrections such as eps^(1/4) against eps^(1/2); d is an integer, so the
    candidates are compared one by one instead.
    """
    j = np.asarray(js, dtype=float)
    shifted = np.asarray(log_measures, dtype=float) + predicted_a * j
    log_j = np.log2(np.maximum(j, 2.0))
    spreads = [float(np.std(shifted - d * log_j)) for d in range(max_log_power + 1)]
    return int(np.argmin(spreads))


def fit_sublevel_table(
    js: Sequence[int],
    measures: Sequence[float],
    rel_errs: Sequence[float],
    r: float = 0.5,
    sample_budget: int = 0,
    seed: int = 0,
    predicted_a: Optional[float] = None,
    max_log_power: int = 0,
) -> SublevelFit:
    """
    Fits log2 mu = -a·j + d·log2(max(j, 2)) + c over eps = 2^-j.

    The three largest eps are treated as pre-asymptotic, and points whose
    relative error exceeds 10% are left out. Without `predicted_a` all three
    coefficients are free. With it, d is the integer picked by
    `select_log_power` and a, c are refitted with d held there; the free
    coefficients are kept as `free_a` and `free_d` either way.

    Raises:
        InconclusiveNumericsError: With fewer than four usable points; the
            payload is the table with NaN exponents.
    """
    js = tuple(int(j) for j in js)
    order = np.argsort(js)
    js = tuple(js[i] for i in order)
    measures = tuple(float(measures[i]) for i in order)
    rel_errs = tuple(float(rel_errs[i]) for i in order)
    used = tuple(
        index >= PRE_ASYMPTOTIC and m > 0 and e <= MAX_REL_ERR
        for index, (m, e) in enumerate(zip(measures, rel_errs))
    )
    monotone = _is_monotone(measures, rel_errs)
    common = dict(
        js=js,
        epsilons=tuple(2.0 ** -j for j in js),
        measures=measures,
        rel_errs=rel_errs,
        used=used,
        monotone=monotone,
        r=r,
        sample_budget=sample_budget,
        seed=seed,
        predicted_a=predicted_a,
    )
    if sum(used) < MIN_FIT_POINTS:
        table = SublevelFit(fitted_a=np.nan, fitted_d=np.nan, intercept=np.nan, residual=np.nan, **common)
        raise InconclusiveNumericsError(f"Only {sum(used)} usable sublevel measures; need {MIN_FIT_POINTS}.", table)

    j = np.array([jj for jj, keep in zip(js, used) if keep], dtype=float)
    y = np.log2([m for m, keep in zip(measures, used) if keep])
    log_j = np.log2(np.maximum(j, 2.0))
    free, free_residual = _least_squares(np.column_stack((-j, log_j, np.ones_like(j))), y)
    if predicted_a is None:
        return SublevelFit(
            fitted_a=float(free[0]),
            fitted_d=float(free[1]),
            intercept=float(free[2]),
            residual=free_residual,
            free_a=float(free[0]),
            free_d=float(free[1]),
            **common,
        )

    d = select_log_power(j, y, float(predicted_a), max_log_power)
    coeffs, residual = _least_squares(np.column_stack((-j, np.ones_like(j))), y - d * log_j)
    return SublevelFit(
        fitted_a=float(coeffs[0]),
        fitted_d=float(d),
        intercept=float(coeffs[1]),
        residual=residual,
        free_a=float(free[0]),
        free_d=float(free[1]),
        **common,
    )


def fit_growth_exponents(
    star: StarFunction,
    b: BlockStructure,
    r: float,
    j_range: Tuple[int, int],
    budget: int,
    seed: int,
    predicted_a: Optional[float] = None,
    max_log_power: int = 0,
) -> SublevelFit:
    """
    Estimates mu(2^-j) for every j in the inclusive range and fits (a, d).

    The budget is shared evenly between the levels. `predicted_a` and
    `max_log_power` are passed on to `fit_sublevel_table`.

    Raises:
        ValueError: If the range spans fewer than ten dyadic scales.
    """
    j_min, j_max = j_range
    if j_max - j_min + 1 < MIN_SCALES:
        raise ValueError(f"j range [{j_min}, {j_max}] spans fewer than {MIN_SCALES} dyadic scales.")
    js = list(range(j_min, j_max + 1))
    per_level = budget // len(js)
    estimates = [estimate_sublevel(star, b, 2.0 ** -j, r, per_level, seed) for j in js]
    return fit_sublevel_table(
        js, [e.measure for e in estimates], [e.rel_err for e in estimates], r, budget, seed, predicted_a, max_log_power
    )


def fit_decay_table(
    lambdas: Sequence[float],
    magnitudes: Sequence[float],
    rel_errs: Sequence[float],
    direction: object,
    noise_floor: float,
    log_power: int = 0,
    unreliable: bool = False,
    asymptotic_from: float = 0.0,
) -> DecayFit:
    """
    Slope of log|nu| - log_power·log(log lambda) against log lambda.

    Grid points below `asymptotic_from` are pre-asymptotic and left out.
    Beyond it, points below `noise_floor` or with relative error above 10%
    are left out, and so is everything after the first such point: once the
    transform sinks into quadrature noise it does not come back.

    Raises:
        InconclusiveNumericsError: With fewer than four usable points.
    """
    lambdas = tuple(float(x) for x in lambdas)
    magnitudes = tuple(float(x) for x in magnitudes)
    rel_errs = tuple(float(x) for x in rel_errs)
    used, alive = [], True
    for lam, m, e in zip(lambdas, magnitudes, rel_errs):
        if lam < asymptotic_from:
            used.append(False)
            continue
        alive = alive and m > noise_floor and e <= MAX_REL_ERR
        used.append(alive)
    used = tuple(used)
    common = dict(
        lambdas=lambdas,
        magnitudes=magnitudes,
        rel_errs=rel_errs,
        used=used,
        direction=direction,
        log_power=log_power,
        unreliable=unreliable,
        asymptotic_from=float(asymptotic_from),
    )
    if sum(used) < MIN_FIT_POINTS:
        table = DecayFit(fitted_slope=np.nan, intercept=np.nan, residual=np.nan, **common)
        raise InconclusiveNumericsError(
            f"Only {sum(used)} usable transform values from lambda = {asymptotic_from:g} on; need {MIN_FIT_POINTS}.", table
        )
    x = np.log([lam for lam, keep in zip(lambdas, used) if keep])
    y = np.log([m for m, keep in zip(magnitudes, used) if keep]) - log_power * np.log(x)
    (slope, intercept), residuals, _, _, _ = np.polyfit(x, y, 1, full=True)
    residual = float(np.sqrt(residuals[0] / len(x))) if len(residuals) else 0.0
    return DecayFit(fitted_slope=float(slope), intercept=float(intercept), residual=residual, **common)


def geometric_grid(low: float, high: float, points: int) -> np.ndarray:
    """
    Raises:
        ValueError: If the grid is not strictly increasing or has fewer than 8 points.
    """
    if points < 8:
        raise ValueError(f"Decay fits need at least 8 grid points, got {points}.")
    if not 0 < low < high:
        raise ValueError(f"Need 0 < lambda_min < lambda_max, got {low}, {high}.")
    return np.geomspace(low, high, points)


def within(value: float, target: float, tolerance: float) -> bool:
    return bool(np.isfinite(value)) and abs(value - target) <= tolerance


def rounded(value: Optional[float]) -> Optional[int]:
    if value is None or not np.isfinite(value):
        return None
    return int(round(value))
