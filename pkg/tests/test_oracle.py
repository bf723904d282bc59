import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import gamma

from errors import BudgetExceededError, InconclusiveNumericsError, UnsupportedScaleError
from newton import star_function
from oracle import (
    estimate_fourier,
    estimate_sublevel,
    estimate_sublevel_measure,
    fit_decay_exponent,
    fit_decay_table,
    fit_growth_exponents,
    fit_sublevel_table,
    kernel_mass,
)
from oracle.dyadic import (
    bisect,
    default_depth,
    dyadic_edges,
    map_to_boxes,
    product_boxes,
    signed_dyadic_edges,
    split_along,
    volumes,
)
from oracle.fitting import geometric_grid, rounded, select_log_power, within
from oracle.fourier import asymptotic_lambda, bump, direction_vector, phase_variation
from poly import BlockStructure, parse_polynomial

HALF = Fraction(1, 2)
BUDGET = 2_000_000


def star(text, n):
    return star_function(parse_polynomial(text, n))


def bump_integral(weight=lambda s: 1.0):
    return quad(lambda s: weight(s) * math.exp(1.0 - 1.0 / (1.0 - s * s)), 0.0, 1.0, limit=200)[0]


def test_dyadic_edges():
    assert list(dyadic_edges(1.0, 3)) == [0.0, 0.125, 0.25, 0.5, 1.0]
    assert list(signed_dyadic_edges(1.0, 2)) == [-1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0]


def test_product_boxes_tile_the_cube():
    lo, hi = product_boxes(dyadic_edges(0.5, 4), 2)
    assert lo.shape == hi.shape == (25, 2)
    assert volumes(lo, hi).sum() == pytest.approx(0.25)


def test_bisect_keeps_volume():
    lo, hi = np.array([[0.0, 0.0, 0.0]]), np.array([[1.0, 2.0, 4.0]])
    child_lo, child_hi = bisect(lo, hi)
    assert child_lo.shape == (8, 3)
    assert volumes(child_lo, child_hi) == pytest.approx([1.0] * 8)
    assert child_lo.min(axis=0) == pytest.approx([0, 0, 0])
    assert child_hi.max(axis=0) == pytest.approx([1, 2, 4])


def test_split_along_flagged_axes_only():
    lo, hi = np.zeros((2, 2)), np.array([[1.0, 2.0], [1.0, 2.0]])
    axes = np.array([[True, True], [False, False]])
    child_lo, child_hi = split_along(lo, hi, axes)
    assert child_lo.shape == (5, 2)
    np.testing.assert_allclose(volumes(child_lo, child_hi), [0.5, 0.5, 0.5, 0.5, 2.0])
    np.testing.assert_allclose(child_lo[-1], [0.0, 0.0])
    np.testing.assert_allclose(child_hi[-1], [1.0, 2.0])


def test_split_along_one_axis_makes_strips():
    lo, hi = np.zeros((1, 2)), np.ones((1, 2))
    child_lo, child_hi = split_along(lo, hi, np.array([[False, True]]))
    np.testing.assert_allclose(child_lo, [[0.0, 0.0], [0.0, 0.5]])
    np.testing.assert_allclose(child_hi, [[1.0, 0.5], [1.0, 1.0]])


def test_map_to_boxes():
    lo, hi = np.array([[0.0, 1.0], [2.0, 2.0]]), np.array([[1.0, 3.0], [4.0, 3.0]])
    points = map_to_boxes(np.array([[0.5, 0.5]]), lo, hi)
    assert points.shape == (2, 1, 2)
    np.testing.assert_allclose(points[:, 0, :], [[0.5, 2.0], [3.0, 2.5]])


def test_numeric_oracles_stop_at_three_variables():
    assert default_depth(2) == 26
    with pytest.raises(UnsupportedScaleError):
        default_depth(4)


def test_sublevel_measure_of_quarter_disk():
    eps = 2.0 ** -10
    estimate = estimate_sublevel(star("t1^2 + t2^2", 2), BlockStructure.singletons(2), eps, 0.5, BUDGET, 0)
    assert estimate.measure == pytest.approx(math.pi * eps / 4, rel=0.01)
    assert estimate.rel_err < 0.01
    assert 0 < estimate.evaluations <= BUDGET
    assert estimate.refinement_depth > 0


def test_sublevel_measure_of_hyperbola():
    delta = 2.0 ** -10
    measure = estimate_sublevel_measure(star("t1^2*t2^2", 2), BlockStructure.singletons(2), delta ** 2, 0.5, BUDGET, 0)
    assert measure == pytest.approx(delta * (1 + 8 * math.log(2)), rel=0.02)


def test_sublevel_measure_with_one_dimensional_weight():
    b = BlockStructure.singletons(1, [HALF])
    measure = estimate_sublevel_measure(star("t1^2", 1), b, 2.0 ** -8, 0.5, BUDGET, 0)
    assert measure == pytest.approx(0.5, rel=0.01)


def test_sublevel_measure_with_separable_weights():
    rho = 2.0 ** -5
    b = BlockStructure.singletons(2, [HALF, HALF])
    measure = estimate_sublevel_measure(star("t1^2 + t2^2", 2), b, rho ** 2, 0.5, BUDGET, 0)
    assert measure == pytest.approx(rho * gamma(0.25) ** 2 / (2 * math.sqrt(math.pi)), rel=0.02)


def test_sublevel_measure_with_block_norm_weight():
    rho = 2.0 ** -5
    b = BlockStructure.create([[0, 1]], [1])
    measure = estimate_sublevel_measure(star("t1^2 + t2^2", 2), b, rho ** 2, 0.5, BUDGET, 0)
    assert measure == pytest.approx(math.pi * rho / 2, rel=0.05)


def test_sublevel_is_deterministic_in_seed():
    s, b = star("t1^2 + t1*t2^3 + t2^4", 2), BlockStructure.singletons(2, [Fraction(1, 3), 0])
    first = estimate_sublevel(s, b, 2.0 ** -12, 0.5, 200_000, 7)
    second = estimate_sublevel(s, b, 2.0 ** -12, 0.5, 200_000, 7)
    assert first == second


def test_sublevel_measure_decreases_with_eps():
    s, b = star("t1^2*t2^4 + t1^6", 2), BlockStructure.singletons(2)
    measures = [estimate_sublevel_measure(s, b, 2.0 ** -j, 0.5, 200_000, 0) for j in range(4, 16, 2)]
    assert measures == sorted(measures, reverse=True)


@pytest.mark.parametrize("eps, r", [(0.0, 0.5), (0.5, 0.5), (0.01, 0.0), (0.01, 1.0)])
def test_sublevel_rejects_out_of_range(eps, r):
    with pytest.raises(ValueError):
        estimate_sublevel(star("t1^2", 1), BlockStructure.singletons(1), eps, r, BUDGET, 0)


def test_sublevel_budget():
    with pytest.raises(BudgetExceededError):
        estimate_sublevel(star("t1^2 + t2^2", 2), BlockStructure.singletons(2), 2.0 ** -10, 0.5, 10, 0)


def test_fit_recovers_synthetic_exponents():
    js = list(range(6, 25))
    measures = [2.0 ** (-0.75 * j) * j ** 2 for j in js]
    fit = fit_sublevel_table(js, measures, [0.01] * len(js))
    assert fit.fitted_a == pytest.approx(0.75, abs=1e-9)
    assert fit.fitted_d == pytest.approx(2.0, abs=1e-9)
    assert fit.used[:3] == (False, False, False)
    assert all(fit.used[3:])
    assert fit.monotone


def test_select_log_power():
    js = np.arange(6, 25)
    log_measures = -0.75 * js + 2 * np.log2(js)
    assert select_log_power(js, log_measures, 0.75, 2) == 2
    assert select_log_power(js, log_measures, 0.75, 1) == 1
    assert select_log_power(js, -0.75 * js, 0.75, 2) == 0


def test_fit_at_predicted_rate_keeps_free_coefficients():
    js = list(range(6, 25))
    measures = [2.0 ** (-0.75 * j) * j ** 2 for j in js]
    fit = fit_sublevel_table(js, measures, [0.01] * len(js), predicted_a=0.75, max_log_power=2)
    assert fit.fitted_d == 2
    assert fit.fitted_a == pytest.approx(0.75, abs=1e-9)
    assert fit.free_a == pytest.approx(0.75, abs=1e-9)
    assert fit.predicted_a == 0.75


def test_fit_separates_power_correction_from_log_term():
    # |t1 t2^2| < delta on [0, 1/2]^2 with delta = eps^(1/2) has measure sqrt(2 delta) - 2 delta.
    js = list(range(6, 25))
    deltas = [2.0 ** (-j / 2) for j in js]
    measures = [math.sqrt(2 * d) - 2 * d for d in deltas]
    fit = fit_sublevel_table(js, measures, [0.01] * len(js), predicted_a=0.25, max_log_power=1)
    assert fit.fitted_d == 0
    assert within(fit.fitted_a, 0.25, 0.05)
    assert fit.residual < 0.1


def test_fit_keeps_genuine_log_term():
    # |t1 t2| < delta on [0, 1/2]^2.
    js = list(range(6, 25))
    deltas = [2.0 ** (-j / 2) for j in js]
    measures = [d * (1 + math.log(0.25 / d)) for d in deltas]
    fit = fit_sublevel_table(js, measures, [0.01] * len(js), predicted_a=0.5, max_log_power=1)
    assert fit.fitted_d == 1
    assert within(fit.fitted_a, 0.5, 0.05)


def test_fit_skips_noisy_points():
    js = list(range(6, 25))
    measures = [2.0 ** -j for j in js]
    rel_errs = [0.5 if j % 2 else 0.01 for j in js]
    fit = fit_sublevel_table(js, measures, rel_errs)
    assert not any(used for used, j in zip(fit.used, js) if j % 2)
    assert fit.fitted_a == pytest.approx(1.0, abs=1e-9)


def test_fit_flags_non_monotone_table():
    js = list(range(6, 16))
    measures = [2.0 ** -j for j in js]
    measures[6] = 1.0
    assert not fit_sublevel_table(js, measures, [0.001] * len(js)).monotone


def test_fit_with_too_few_points_is_inconclusive():
    with pytest.raises(InconclusiveNumericsError) as excinfo:
        fit_sublevel_table([6, 7, 8, 9, 10, 11], [2.0 ** -j for j in range(6, 12)], [0.01] * 6)
    assert math.isnan(excinfo.value.payload.fitted_a)
    assert len(excinfo.value.payload.js) == 6


def test_growth_fit_needs_ten_scales():
    with pytest.raises(ValueError):
        fit_growth_exponents(star("t1^2", 1), BlockStructure.singletons(1), 0.5, (6, 14), BUDGET, 0)


def test_decay_fit_of_power_law():
    lambdas = geometric_grid(32, 4096, 8)
    fit = fit_decay_table(lambdas, lambdas ** -0.5, [0.001] * 8, 2, 1e-12)
    assert fit.beta_hat == pytest.approx(0.5, abs=1e-9)
    assert all(fit.used)


def test_decay_fit_divides_out_log_power():
    lambdas = geometric_grid(32, 4096, 8)
    fit = fit_decay_table(lambdas, np.log(lambdas) / lambdas, [0.001] * 8, 2, 1e-12, log_power=1)
    assert fit.beta_hat == pytest.approx(1.0, abs=1e-9)


def test_decay_fit_stops_at_noise_floor():
    lambdas = geometric_grid(32, 4096, 8)
    magnitudes = list(lambdas ** -1.0)
    magnitudes[5] = 1e-15
    fit = fit_decay_table(lambdas, magnitudes, [0.001] * 8, 1, 1e-10)
    assert fit.used == (True,) * 5 + (False,) * 3
    assert fit.beta_hat == pytest.approx(1.0, abs=1e-9)


def test_decay_fit_below_noise_floor_is_inconclusive():
    lambdas = geometric_grid(32, 4096, 8)
    with pytest.raises(InconclusiveNumericsError):
        fit_decay_table(lambdas, [1e-15] * 8, [0.001] * 8, 1, 1e-10)


def test_decay_fit_skips_pre_asymptotic_lambdas():
    lambdas = geometric_grid(32, 4096, 8)
    magnitudes = list(lambdas ** -0.5)
    magnitudes[:2] = [1.0, 1.0]
    fit = fit_decay_table(lambdas, magnitudes, [0.001] * 8, 3, 1e-12, asymptotic_from=100.0)
    assert fit.used == (False, False) + (True,) * 6
    assert fit.beta_hat == pytest.approx(0.5, abs=1e-9)
    assert fit.asymptotic_from == 100.0


def test_decay_fit_with_short_asymptotic_tail_is_inconclusive():
    lambdas = geometric_grid(32, 4096, 8)
    with pytest.raises(InconclusiveNumericsError) as excinfo:
        fit_decay_table(lambdas, lambdas ** -0.5, [0.001] * 8, 3, 1e-12, asymptotic_from=1500.0)
    assert sum(excinfo.value.payload.used) == 2


def test_phase_variation_and_asymptotic_lambda():
    S = parse_polynomial("t1^2", 1)
    along_s = np.array([0.0, 1.0])
    assert phase_variation(S, along_s, 0.5) == pytest.approx((0.5 - 1 / 64) ** 2)
    assert phase_variation(S, np.array([1.0, 0.0]), 0.5) == pytest.approx(2 * (0.5 - 1 / 64))
    assert asymptotic_lambda(S, along_s, 0.5) == pytest.approx(2 * math.pi / (0.5 - 1 / 64) ** 2)
    assert asymptotic_lambda(S, np.zeros(2), 0.5) == math.inf


def test_asymptotic_lambda_of_degenerate_phase_is_late():
    # t1^2 t2^2 peaks at r^4 / 4 on the disk, so lambda must reach about 8 pi / r^4.
    S = parse_polynomial("t1^2*t2^2", 2)
    lam = asymptotic_lambda(S, np.array([0.0, 0.0, 1.0]), 0.5)
    assert 400 < lam < 512


@pytest.mark.parametrize("low, high, points", [(32, 4096, 7), (0, 4096, 8), (64, 32, 8)])
def test_geometric_grid_rejects_bad_ranges(low, high, points):
    with pytest.raises(ValueError):
        geometric_grid(low, high, points)


def test_within_and_rounded():
    assert within(0.98, 1.0, 0.05)
    assert not within(float("nan"), 1.0, 0.05)
    assert rounded(1.08) == 1
    assert rounded(float("nan")) is None
    assert rounded(None) is None


def test_bump():
    assert bump(np.array([0.0, 0.5, 1.0, 2.0])) == pytest.approx([1.0, math.exp(-1.0 / 3.0), 0.0, 0.0])


def test_direction_vector():
    assert list(direction_vector(2, 1)) == [0.0, 1.0]
    assert list(direction_vector("1", 2)) == [1.0, 0.0, 0.0]
    v = direction_vector("random", 2, seed=3)
    assert np.linalg.norm(v) == pytest.approx(1.0)
    assert direction_vector("random", 2, seed=3) == pytest.approx(v)
    for bad in (0, 3):
        with pytest.raises(ValueError):
            direction_vector(bad, 1)


def test_kernel_mass_in_one_dimension():
    r = 0.5
    mass = kernel_mass(parse_polynomial("t1^2", 1), BlockStructure.singletons(1), r, BUDGET)
    assert mass == pytest.approx(2 * r * bump_integral(), rel=1e-2)


def test_kernel_mass_with_weight():
    r = 0.5
    b = BlockStructure.singletons(1, [HALF])
    mass = kernel_mass(parse_polynomial("t1^2", 1), b, r, BUDGET)
    expected = 2 * math.sqrt(r) * bump_integral(lambda s: s ** -0.5)
    assert mass == pytest.approx(expected, rel=2e-2)


def test_kernel_mass_in_two_dimensions():
    r = 0.5
    mass = kernel_mass(parse_polynomial("t1^2 + t2^2", 2), BlockStructure.singletons(2), r, 50_000_000)
    assert mass == pytest.approx(2 * math.pi * r ** 2 * bump_integral(lambda s: s), rel=0.02)


def test_transform_of_even_kernel_is_real():
    estimate = estimate_fourier(parse_polynomial("t1^2", 1), BlockStructure.singletons(1), [40.0, 0.0], 0.5, BUDGET)
    assert abs(estimate.value.imag) < 1e-8
    assert not estimate.unreliable


def test_fresnel_decay():
    lam = 256.0
    estimate = estimate_fourier(parse_polynomial("t1^2", 1), BlockStructure.singletons(1), [0.0, lam], 0.5, 50_000_000)
    assert abs(estimate.value) == pytest.approx(math.sqrt(math.pi / lam), rel=0.02)
    assert estimate.rel_err < 0.01


@pytest.mark.slow
def test_quadratic_decay_in_two_dimensions():
    lam = 256.0
    S = parse_polynomial("t1^2 + t2^2", 2)
    estimate = estimate_fourier(S, BlockStructure.singletons(2), [0.0, 0.0, lam], 0.5, 500_000_000)
    assert abs(estimate.value) == pytest.approx(math.pi / lam, rel=0.05)


def test_fourier_rejects_bad_input():
    b = BlockStructure.singletons(1)
    with pytest.raises(ValueError):
        estimate_fourier(parse_polynomial("t1^(3/2)", 1), b, [0.0, 1.0], 0.5, BUDGET)
    with pytest.raises(ValueError):
        estimate_fourier(parse_polynomial("t1^2", 1), b, [1.0], 0.5, BUDGET)
    with pytest.raises(ValueError):
        estimate_fourier(parse_polynomial("t1^2", 1), b, [0.0, 1.0], 1.5, BUDGET)


def test_fourier_budget():
    with pytest.raises(BudgetExceededError):
        estimate_fourier(parse_polynomial("t1^2", 1), BlockStructure.singletons(1), [0.0, 1000.0], 0.5, 10)


@pytest.mark.slow
def test_growth_fit_of_quarter_disk():
    fit = fit_growth_exponents(star("t1^2 + t2^2", 2), BlockStructure.singletons(2), 0.5, (6, 24), 10_000_000, 0)
    assert within(fit.fitted_a, 1.0, 0.05)
    assert rounded(fit.fitted_d) == 0


@pytest.mark.slow
def test_growth_fit_of_hyperbola():
    fit = fit_growth_exponents(star("t1^2*t2^2", 2), BlockStructure.singletons(2), 0.5, (6, 24), 10_000_000, 0)
    assert within(fit.fitted_a, 0.5, 0.05)
    assert rounded(fit.fitted_d) == 1


@pytest.mark.slow
def test_fresnel_decay_rate():
    fit = fit_decay_exponent(parse_polynomial("t1^2", 1), BlockStructure.singletons(1), 2, (64, 4096, 8), 50_000_000)
    assert within(fit.beta_hat, 0.5, 0.05)
    assert not fit.unreliable


@pytest.mark.slow
@pytest.mark.parametrize(
    "text, n, blocks, alphas, a",
    [
        ("t1^4 + t2^4", 2, [[0], [1]], [HALF, HALF], 0.25),
        ("t1^2 + t2^2", 2, [[0], [1]], [HALF, HALF], 0.5),
        ("t1^2 + t2^2", 2, [[0, 1]], [1], 0.5),
        ("t1^2*t2^4", 2, [[0], [1]], [0, 0], 0.25),
        ("t1^2 + t2^2 + t3^2", 3, [[0], [1], [2]], [0, 0, 0], 1.5),
    ],
)
def test_growth_fit_at_predicted_rate(text, n, blocks, alphas, a):
    b = BlockStructure.create(blocks, alphas)
    fit = fit_growth_exponents(star(text, n), b, 0.5, (6, 24), 10_000_000, 0, predicted_a=a, max_log_power=n - 1)
    assert within(fit.fitted_a, a, 0.05)
    assert fit.fitted_d == 0
    assert fit.residual < 0.1


@pytest.mark.slow
def test_quadratic_decay_rate_in_two_dimensions():
    S = parse_polynomial("t1^2 + t2^2", 2)
    fit = fit_decay_exponent(S, BlockStructure.singletons(2), 3, (32, 4096, 8), 500_000_000)
    assert all(fit.used)
    assert within(fit.beta_hat, 1.0, 0.15)


@pytest.mark.slow
def test_hyperbolic_decay_rate_with_log_power():
    S = parse_polynomial("t1^2*t2^2", 2)
    fit = fit_decay_exponent(S, BlockStructure.singletons(2), 3, (64, 4096, 8), 500_000_000, r=0.9, log_power=1)
    assert within(fit.beta_hat, 0.5, 0.1)
