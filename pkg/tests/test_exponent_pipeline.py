import asyncio
from fractions import Fraction
from itertools import permutations

import pytest

from errors import UnsupportedScaleError
from exponent_pipeline import (
    aggregate_exponents,
    analyze_all_permutations,
    analyze_permutation,
    beta_exponents,
    block_maxima,
    compute_exponents,
    substituted_star,
)
from newton import build_newton_polyhedron, newton_distance, star_function
from poly import BlockStructure, StarFunction, parse_polynomial

HALF = Fraction(1, 2)

UNWEIGHTED_CATALOG = [
    ("t1^2 + t2^2", 2),
    ("t1^2*t2^2", 2),
    ("t1^4 + t1*t2 + t2^4", 2),
    ("t1^2 - 2*t1*t2 + t2^2 + t1^5", 2),
    ("t1^2*t2^4", 2),
    ("t1^3 + t2^5", 2),
    ("t1^6 + t1^2*t2^2 + t2^6", 2),
    ("t1^2 + t2^2 + t3^2", 3),
    ("t1^2*t2^2*t3^2", 3),
    ("t1^2 + t2^3*t3^3", 3),
    ("t1*t2 + t3^4", 3),
]


def star(text, n):
    return star_function(parse_polynomial(text, n))


def exponents(text, n, blocks=None, alphas=None):
    b = BlockStructure.create(blocks, alphas) if blocks is not None else BlockStructure.singletons(n, alphas)
    return compute_exponents(star(text, n), b)


def test_block_maxima():
    assert block_maxima((0, 1), BlockStructure.singletons(2)) == (0, 1)
    assert block_maxima((0, 1), BlockStructure.create([[0, 1]])) == (1,)
    # u1 = t3, u2 = t1, u3 = t2
    assert block_maxima((2, 0, 1), BlockStructure.create([[0, 2], [1]])) == (1, 2)


def test_block_maxima_rejects_non_permutation():
    with pytest.raises(ValueError):
        block_maxima((0, 0), BlockStructure.singletons(2))


@pytest.mark.parametrize(
    "blocks, alphas, beta",
    [
        ([[0], [1]], [0, 0], (0, -1)),
        ([[0], [1]], [HALF, HALF], (HALF, 0)),
        ([[0, 1]], [HALF], (0, -HALF)),
        ([[0, 1]], [1], (0, 0)),
    ],
)
def test_beta_exponents(blocks, alphas, beta):
    assert beta_exponents((0, 1), BlockStructure.create(blocks, alphas)) == beta


def test_beta_rejects_non_integrable_weight():
    with pytest.raises(ValueError):
        beta_exponents((0,), BlockStructure.singletons(1, [1]))


def test_substituted_star_drops_dominated_exponents():
    W, X, reduced = substituted_star(star("t1^2 + t2^2", 2), (0, 1), (0, -1))
    assert set(W) == {(2, 2), (0, 2)}
    assert set(X) == {(2, 1), (0, 1)}
    assert reduced.vertex_exponents == ((0, 1),)


def test_substituted_star_of_monomial():
    W, X, reduced = substituted_star(StarFunction(2, ((Fraction(2), Fraction(2)),)), (0, 1), (0, -1))
    assert W == ((2, 4),)
    assert X == ((2, 2),)


def test_substituted_star_with_weights():
    _, X, reduced = substituted_star(star("t1^2 + t2^2", 2), (0, 1), (HALF, 0))
    assert set(X) == {(4, 2), (0, 2)}
    assert reduced.vertex_exponents == ((0, 2),)


def test_substituted_star_follows_prefix_sums():
    s = star("t1^3*t2 + t1*t3^2 + t2^4 + t3^5", 3)
    sigma = (2, 0, 1)
    beta = beta_exponents(sigma, BlockStructure.singletons(3))
    W, X, _ = substituted_star(s, sigma, beta)
    for v, w_row, x_row in zip(s.vertex_exponents, W, X):
        permuted = [v[sigma[pos]] for pos in range(3)]
        assert list(w_row) == [sum(permuted[: j + 1]) for j in range(3)]
        assert list(x_row) == [w_row[j] / (1 - beta[j]) for j in range(3)]


def test_analyze_permutation_of_sum_of_squares():
    record = analyze_permutation(star("t1^2 + t2^2", 2), BlockStructure.singletons(2), (0, 1))
    assert (record.d_l, record.a_l, record.log_dim, record.d_l_log) == (1, 1, 1, 0)
    assert record.s_triple_star.vertex_exponents == ((0, 1),)


def test_analyze_permutation_of_monomial():
    record = analyze_permutation(star("t1^2*t2^2", 2), BlockStructure.singletons(2), (0, 1))
    assert (record.d_l, record.a_l, record.d_l_log) == (2, HALF, 1)
    assert record.diagonal_face_compact


def test_analyze_permutation_flags_noncompact_diagonal_face():
    b = BlockStructure.singletons(2, [HALF, HALF])
    record = analyze_permutation(star("t1^2 + t2^2", 2), b, (0, 1))
    assert (record.d_l, record.a_l, record.d_l_log) == (2, HALF, 0)
    assert not record.diagonal_face_compact


@pytest.mark.parametrize(
    "text, n, a0, d0",
    [
        ("t1^2 + t2^2", 2, Fraction(1), 0),
        ("t1^2*t2^2", 2, HALF, 1),
        ("t1^2 + t2^2 + t3^2", 3, Fraction(3, 2), 0),
        ("t1^2*t2^2*t3^2", 3, HALF, 2),
        ("t1^2", 1, HALF, 0),
    ],
)
def test_aggregate_exponents(text, n, a0, d0):
    result = exponents(text, n)
    assert (result.a0, result.d0) == (a0, d0)
    assert len(result.per_permutation) == len(list(permutations(range(n))))


@pytest.mark.parametrize("text, n", UNWEIGHTED_CATALOG)
def test_unweighted_exponent_is_reciprocal_newton_distance(text, n):
    p = parse_polynomial(text, n)
    assert exponents(text, n).a0 == 1 / newton_distance(build_newton_polyhedron(p))


@pytest.mark.parametrize(
    "text, alphas, a0",
    [
        ("t1^2 + t2^2", [HALF, HALF], HALF),
        ("t1^4 + t2^4", [HALF, HALF], Fraction(1, 4)),
        ("t1^2 + t2^4", [HALF, 0], HALF),
    ],
)
def test_singleton_blocks_match_rescaled_exponents(text, alphas, a0):
    s = star(text, 2)
    rescaled = StarFunction(2, tuple(tuple(v[i] / (1 - alphas[i]) for i in range(2)) for v in s.vertex_exponents))
    expected = 1 / newton_distance(build_newton_polyhedron(rescaled.as_polynomial()))
    result = exponents(text, 2, alphas=alphas)
    assert result.a0 == expected == a0
    assert result.d0 == 0


def test_single_block_with_norm_weight():
    result = exponents("t1^2 + t2^2", 2, blocks=[[0, 1]], alphas=[1])
    assert (result.a0, result.d0) == (HALF, 0)
    assert result.a0 <= Fraction(2 - 1, 2)


def test_relabeling_variables_keeps_exponents():
    first = exponents("t1^2*t2^4 + t1^5", 2, alphas=[Fraction(1, 3), 0])
    second = exponents("t2^2*t1^4 + t2^5", 2, alphas=[0, Fraction(1, 3)])
    assert (first.a0, first.d0) == (second.a0, second.d0)


def test_larger_weights_never_increase_a0():
    values = [exponents("t1^2 + t2^4", 2, alphas=[alpha, 0]).a0 for alpha in (0, Fraction(1, 4), HALF, Fraction(3, 4))]
    assert values == sorted(values, reverse=True)


def test_records_satisfy_structural_bounds():
    result = exponents("t1^2 + t2^3*t3^3", 3, blocks=[[0, 2], [1]], alphas=[1, HALF])
    for record in result.per_permutation:
        assert all(b < 1 for b in record.beta)
        assert record.a_l > 0
        assert 0 <= record.d_l_log <= 2


def test_aggregate_rejects_empty_input():
    with pytest.raises(ValueError):
        aggregate_exponents([])


def test_dimension_cap():
    with pytest.raises(UnsupportedScaleError):
        compute_exponents(star("t1^2 + t2^2 + t3^2", 3), BlockStructure.singletons(3), max_dimension=2)


@pytest.mark.parametrize("concurrency", [1, 4])
def test_concurrent_analysis_matches_sequential(concurrency):
    s, b = star("t1^4 + t2^2*t3 + t3^3", 3), BlockStructure.singletons(3)
    sequential = compute_exponents(s, b)
    concurrent = asyncio.run(analyze_all_permutations(s, b, concurrency))
    assert concurrent == sequential
