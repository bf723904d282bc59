# exponent_pipeline.py
"""
Growth exponents (a0, d0) of the weighted sublevel measure

    mu{t in (0, r)^n : S*(t) < eps} ~ eps^a0 |ln eps|^d0.

(0, r)^n is split into the n! regions t_sigma(1) < ... < t_sigma(n). On each
one the substitutions u_k = t_sigma(k), u_k = prod_{i >= k} y_i and
z_j = y_j^(1 - beta_j) turn the measure into the plain Lebesgue measure of a
sublevel set of a new star function S*** in z, whose growth is read off its
Newton polyhedron: a_l is the reciprocal Newton distance and d_l counts the
codimension of the minimal face through the diagonal point.

Indices are 0-based: sigma[pos] is the variable sitting at u-position pos.
"""
import asyncio
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Dict, List, Sequence, Tuple

from errors import UnsupportedScaleError
from newton.faces import minimal_face_at_diagonal
from newton.polyhedron import minimalize_star, newton_distance, star_polyhedron
from poly.polynomial import BlockStructure, ExponentVector, StarFunction

MAX_DIMENSION = 5

Permutation = Tuple[int, ...]


@dataclass(frozen=True)
class PermutationRecord:
    sigma: Permutation
    block_maxima: Tuple[int, ...]
    beta: Tuple[Fraction, ...]
    W: Tuple[ExponentVector, ...]
    X: Tuple[ExponentVector, ...]
    s_triple_star: StarFunction
    d_l: Fraction
    a_l: Fraction
    log_dim: int
    d_l_log: int
    diagonal_face_compact: bool


@dataclass(frozen=True)
class ExponentResult:
    a0: Fraction
    d0: int
    per_permutation: Tuple[PermutationRecord, ...] = field(repr=False)
    noncompact_flag: bool = False


def block_maxima(sigma: Sequence[int], b: BlockStructure) -> Tuple[int, ...]:
    """
    For each block, the largest u-position among its variables. On the region
    fixed by sigma, |t_k| is comparable to u at that position.

    Raises:
        ValueError: If sigma is not a permutation of range(n).
    """
    n = b.dimension
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"{tuple(sigma)} is not a permutation of {n} variables.")
    position = {variable: pos for pos, variable in enumerate(sigma)}
    return tuple(max(position[v] for v in block) for block in b.blocks)


def beta_exponents(sigma: Sequence[int], b: BlockStructure) -> Tuple[Fraction, ...]:
    """
    beta_j = sum of alpha_k over blocks with b_k <= j, minus j (0-based j).

    The Jacobian of u_k = prod_{i >= k} y_i is prod_j y_j^j, and the kernel
    weight prod_k u_{b_k}^(-alpha_k) pulls back to
    prod_j y_j^(-sum_{b_k <= j} alpha_k); beta_j collects both.

    Raises:
        ValueError: If some beta_j >= 1, i.e. the weight is not integrable.
    """
    maxima = block_maxima(sigma, b)
    beta = []
    for j in range(b.dimension):
        weight = sum((alpha for alpha, bk in zip(b.alphas, maxima) if bk <= j), Fraction(0))
        beta.append(weight - j)
    if any(value >= 1 for value in beta):
        raise ValueError(
            f"Non-integrable configuration: beta = {[str(v) for v in beta]} has an entry >= 1."
        )
    return tuple(beta)


def substituted_star(
    star: StarFunction, sigma: Sequence[int], beta: Sequence[Fraction]
) -> Tuple[Tuple[ExponentVector, ...], Tuple[ExponentVector, ...], StarFunction]:
    """
    Carries S* through the substitutions.

    Returns:
        tuple: (W, X, S***) where W are the exponents in y (prefix sums of the
        sigma-permuted vertices), X = W / (1 - beta) the exponents in z, and
        S*** the re-minimalized star function over z.
    """
    if not star.vertex_exponents:
        raise ValueError("Cannot substitute into an empty star function.")
    n = star.dimension
    W, X = [], []
    for v in star.vertex_exponents:
        w = [v[sigma[pos]] for pos in range(n)]
        prefix, running = [], Fraction(0)
        for entry in w:
            running += entry
            prefix.append(running)
        W.append(tuple(prefix))
        X.append(tuple(Wj / (1 - bj) for Wj, bj in zip(prefix, beta)))
    reduced = minimalize_star(StarFunction(n, tuple(X)))
    return tuple(W), tuple(X), reduced


def _growth_of(star: StarFunction) -> Tuple[Fraction, int, bool]:
    """(d, dim of the minimal diagonal face, compactness) for a star function."""
    polyhedron = star_polyhedron(star)
    face = minimal_face_at_diagonal(polyhedron)
    return newton_distance(polyhedron), face.dim, face.is_compact


def analyze_permutation(
    star: StarFunction,
    b: BlockStructure,
    sigma: Sequence[int],
    cache: Dict[Tuple[ExponentVector, ...], Tuple[Fraction, int, bool]] = None,
) -> PermutationRecord:
    """
    Builds the full substitution record for one region.

    Args:
        star (StarFunction): S* of the phase.
        b (BlockStructure): Blocks and kernel exponents.
        sigma (Sequence[int]): The region's variable order.
        cache (dict, optional): Shared memo of polyhedral results keyed on the
            reduced exponent set; records with equal S*** reuse it.

    Returns:
        PermutationRecord: The record.
    """
    sigma = tuple(sigma)
    maxima = block_maxima(sigma, b)
    beta = beta_exponents(sigma, b)
    W, X, reduced = substituted_star(star, sigma, beta)
    key = reduced.vertex_exponents
    if cache is not None and key in cache:
        d_l, log_dim, compact = cache[key]
    else:
        d_l, log_dim, compact = _growth_of(reduced)
        if cache is not None:
            cache[key] = (d_l, log_dim, compact)
    return PermutationRecord(
        sigma=sigma,
        block_maxima=maxima,
        beta=beta,
        W=W,
        X=X,
        s_triple_star=reduced,
        d_l=d_l,
        a_l=1 / d_l,
        log_dim=log_dim,
        d_l_log=star.dimension - 1 - log_dim,
        diagonal_face_compact=compact,
    )


def aggregate_exponents(records: Sequence[PermutationRecord]) -> ExponentResult:
    """
    a0 is the smallest a_l; d0 the largest d_l_log among the records attaining it.

    Raises:
        ValueError: If there are no records.
    """
    if not records:
        raise ValueError("Cannot aggregate an empty list of permutation records.")
    a0 = min(r.a_l for r in records)
    minimizing = [r for r in records if r.a_l == a0]
    d0 = max(r.d_l_log for r in minimizing)
    noncompact = any(not r.diagonal_face_compact for r in minimizing)
    return ExponentResult(a0, d0, tuple(records), noncompact)


def _check_scale(n: int, max_dimension: int) -> None:
    if n > max_dimension:
        raise UnsupportedScaleError(
            f"n = {n} needs {n}! permutation regions; the pipeline stops at n = {max_dimension}."
        )


def compute_exponents(star: StarFunction, b: BlockStructure, max_dimension: int = MAX_DIMENSION) -> ExponentResult:
    """
    Runs every permutation region in lexicographic order and aggregates.

    Raises:
        UnsupportedScaleError: If n exceeds `max_dimension`.
    """
    _check_scale(star.dimension, max_dimension)
    cache: dict = {}
    records = [analyze_permutation(star, b, sigma, cache) for sigma in permutations(range(star.dimension))]
    return aggregate_exponents(records)


async def analyze_all_permutations(
    star: StarFunction,
    b: BlockStructure,
    concurrency: int = 1,
    max_dimension: int = MAX_DIMENSION,
) -> ExponentResult:
    """
    Same as `compute_exponents`, with the regions analysed on worker threads.
    Records come back in lexicographic sigma order whatever the concurrency.
    """
    _check_scale(star.dimension, max_dimension)
    semaphore = asyncio.Semaphore(max(1, concurrency))
    loop = asyncio.get_running_loop()
    cache: dict = {}

    async def process_region(sigma: Permutation) -> PermutationRecord:
        async with semaphore:
            return await loop.run_in_executor(None, analyze_permutation, star, b, sigma, cache)

    records: List[PermutationRecord] = await asyncio.gather(
        *[process_region(sigma) for sigma in permutations(range(star.dimension))]
    )
    return aggregate_exponents(records)
