# smoothing_theorem.py
"""
The L^p Sobolev boundedness region of the fractional Radon transform.

Points are (1/p, beta). The bounded points form an open polygon; when g < 1
and the kernel is bounded below near the origin, every beta > g is unbounded.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from exponent_pipeline import ExponentResult
from newton.polyhedron import newton_distance, star_polyhedron
from poly.polynomial import BlockStructure, StarFunction
from vanishing.strategy import SAMPLED_LOWER_BOUND, USER_OVERRIDE, VanishingOrderResult

BOUNDED = "bounded"
UNBOUNDED = "unbounded"
UNKNOWN = "unknown"

Vertex = Tuple[Fraction, Fraction]

KERNEL_CAVEAT = (
    "unboundedness assumes the kernel lower bound K(t) >= C0 prod_k |t_k|^(-alpha_k) "
    "on a neighborhood of the origin"
)
LARGE_G_CAVEAT = (
    "g >= 1: the upper bound beta <= g need not hold (nondegenerate quadratic phases "
    "decay like |lambda|^(-n/2), e.g. S = t1^2 + t2^2 has g = 1 but smooths more)"
)
SAMPLED_CAVEAT = (
    "o(S) is a sampled lower bound; a larger true o(S) shrinks the triangle apex "
    "height 1/max(o(S), 2) toward 0"
)
OVERRIDE_CAVEAT = "o(S) was supplied by the user and not computed"


@dataclass(frozen=True)
class Sharpness:
    upper_bound_beta: Optional[Fraction]
    sharp_p_interval: Optional[Tuple[Fraction, Fraction]]
    caveats: Tuple[str, ...] = ()


@dataclass(frozen=True)
class ClosedFormCheck:
    name: str
    applicable: bool
    expected: Optional[Fraction] = None
    actual: Optional[Fraction] = None
    holds: Optional[bool] = None


@dataclass(frozen=True)
class SmoothingReport:
    a0: Fraction
    d0: int
    o_value: int
    o_mode: str
    o_clamped: int
    g: Fraction
    region_vertices: Tuple[Vertex, ...]
    stated_region_vertices: Tuple[Vertex, ...]
    regions_coincide: bool
    apex_beta: Fraction
    left_apex_p_recip: Fraction
    sharpness: Sharpness
    noncompact_flag: bool
    checks: Tuple[ClosedFormCheck, ...] = ()
    caveats: Tuple[str, ...] = field(default=())


def smoothing_exponent_g(a0: Fraction, b: BlockStructure) -> Fraction:
    """
    g = min(a0, l_1 - alpha_1, ..., l_m - alpha_m).

    Raises:
        ValueError: If a0 <= 0.
    """
    a0 = Fraction(a0)
    if a0 <= 0:
        raise ValueError(f"a0 must be positive, got {a0}.")
    return min([a0] + [Fraction(size) - alpha for size, alpha in zip(b.sizes, b.alphas)])


def boundedness_region(g: Fraction, o_clamped: int) -> Tuple[Vertex, ...]:
    """
    The open region of bounded (1/p, beta), as counter-clockwise vertices.

    For g >= 1/o it is the triangle (0,0), (1,0), (1/2, 1/o); below that the
    cut at height g leaves the trapezoid with top edge from g·o/2 to 1 - g·o/2.

    Raises:
        ValueError: If g <= 0 or o_clamped < 2.
    """
    g = Fraction(g)
    if g <= 0 or o_clamped < 2:
        raise ValueError(f"Need g > 0 and max(o, 2) >= 2, got g = {g}, o = {o_clamped}.")
    zero, one, half = Fraction(0), Fraction(1), Fraction(1, 2)
    if g >= Fraction(1, o_clamped):
        return ((zero, zero), (one, zero), (half, Fraction(1, o_clamped)))
    edge = g * o_clamped / 2
    return ((zero, zero), (one, zero), (one - edge, g), (edge, g))


def _clip_below(polygon: Sequence[Vertex], height: Fraction) -> Tuple[Vertex, ...]:
    """Polygon ∩ {y <= height}, one pass of Sutherland-Hodgman."""
    clipped: List[Vertex] = []
    for index, current in enumerate(polygon):
        following = polygon[(index + 1) % len(polygon)]
        current_in = current[1] <= height
        following_in = following[1] <= height
        if current_in:
            clipped.append(current)
        if current_in != following_in:
            s = (height - current[1]) / (following[1] - current[1])
            clipped.append((current[0] + s * (following[0] - current[0]), height))
    unique: List[Vertex] = []
    for vertex in clipped:
        if vertex not in unique:
            unique.append(vertex)
    return tuple(unique)


def stated_region(g: Fraction, o_clamped: int) -> Tuple[Vertex, ...]:
    """The triangle with apex (1/2, 1/o) cut to beta < g, clipped directly."""
    triangle = boundedness_region(Fraction(1), o_clamped)
    return _clip_below(triangle, Fraction(g))


def region_contains(vertices: Sequence[Vertex], point: Vertex) -> bool:
    """Strict interior test for a convex counter-clockwise polygon, in exact arithmetic."""
    x, y = (Fraction(c) for c in point)
    for index, (x0, y0) in enumerate(vertices):
        x1, y1 = vertices[(index + 1) % len(vertices)]
        if (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) <= 0:
            return False
    return True


def sharpness_report(g: Fraction, o_clamped: int) -> Optional[Tuple[Fraction, Fraction]]:
    """
    Range of 1/p on which the smoothing order g is optimal up to endpoints.

    Returns:
        tuple or None: the open interval (o·g/2, 1 - o·g/2) when g < 1/o, the
        degenerate interval (1/2, 1/2) when g = 1/o, otherwise None.
    """
    g = Fraction(g)
    threshold = Fraction(1, o_clamped)
    if g < threshold:
        edge = o_clamped * g / 2
        return (edge, 1 - edge)
    if g == threshold:
        return (Fraction(1, 2), Fraction(1, 2))
    return None


def _sharpness(g: Fraction, o_clamped: int) -> Sharpness:
    interval = sharpness_report(g, o_clamped)
    caveats = []
    if g < 1:
        caveats.append(KERNEL_CAVEAT)
    else:
        caveats.append(LARGE_G_CAVEAT)
    if interval is None:
        caveats.append("g > 1/max(o(S), 2): the region's apex lies below g, no sharp range of p")
    return Sharpness(g if g < 1 else None, interval, tuple(caveats))


def closed_form_checks(
    star: StarFunction, b: BlockStructure, exponents: ExponentResult, g: Fraction
) -> Tuple[ClosedFormCheck, ...]:
    """
    Closed forms the aggregated exponents must reproduce:

    * unweighted kernels: a0 = 1/d(S*);
    * one-dimensional blocks: a0 = 1/d(S**), S** having exponents v_k / (1 - alpha_k);
    * a single block with S* <= C|t|^2: g = a0 and a0 <= (n - alpha_1)/2.
    """
    n = star.dimension
    checks = []

    if all(alpha == 0 for alpha in b.alphas):
        expected = 1 / newton_distance(star_polyhedron(star))
        checks.append(ClosedFormCheck("unweighted_reciprocal_distance", True, expected, exponents.a0, expected == exponents.a0))
    else:
        checks.append(ClosedFormCheck("unweighted_reciprocal_distance", False))

    if len(b.blocks) == n:
        scale = {block[0]: 1 - alpha for block, alpha in zip(b.blocks, b.alphas)}
        rescaled = StarFunction(
            n, tuple(tuple(v[i] / scale[i] for i in range(n)) for v in star.vertex_exponents)
        )
        expected = 1 / newton_distance(star_polyhedron(rescaled))
        checks.append(ClosedFormCheck("rescaled_singleton_blocks", True, expected, exponents.a0, expected == exponents.a0))
    else:
        checks.append(ClosedFormCheck("rescaled_singleton_blocks", False))

    vanishes_to_order_two = all(sum(v) >= 2 for v in star.vertex_exponents)
    if len(b.blocks) == 1 and vanishes_to_order_two:
        ceiling = (n - b.alphas[0]) / 2
        checks.append(ClosedFormCheck("single_block_g_equals_a0", True, exponents.a0, g, g == exponents.a0))
        checks.append(ClosedFormCheck("single_block_ceiling", True, ceiling, exponents.a0, exponents.a0 <= ceiling))
    else:
        checks.append(ClosedFormCheck("single_block_g_equals_a0", False))
        checks.append(ClosedFormCheck("single_block_ceiling", False))
    return tuple(checks)


def build_smoothing_report(
    star: StarFunction,
    b: BlockStructure,
    exponents: ExponentResult,
    order: VanishingOrderResult,
) -> SmoothingReport:
    """
    Assembles g, both region descriptions, sharpness, closed-form checks and caveats.
    """
    o = order.o_clamped
    g = smoothing_exponent_g(exponents.a0, b)
    region = boundedness_region(g, o)
    stated = stated_region(g, o)
    caveats = []
    if order.mode == SAMPLED_LOWER_BOUND:
        caveats.append(SAMPLED_CAVEAT)
    elif order.mode == USER_OVERRIDE:
        caveats.append(OVERRIDE_CAVEAT)
    if exponents.noncompact_flag:
        caveats.append("d0 was read off a noncompact minimal face at the diagonal point")
    if all(alpha == 0 for alpha in b.alphas) and exponents.a0 > Fraction(1, 2):
        caveats.append("a0 > 1/2 with an unweighted kernel: the region is the full triangle, no sharp estimate")
    return SmoothingReport(
        a0=exponents.a0,
        d0=exponents.d0,
        o_value=order.value,
        o_mode=order.mode,
        o_clamped=o,
        g=g,
        region_vertices=region,
        stated_region_vertices=stated,
        regions_coincide=set(region) == set(stated),
        apex_beta=min(g, Fraction(1, o)),
        left_apex_p_recip=min(Fraction(1), g * o) / 2,
        sharpness=_sharpness(g, o),
        noncompact_flag=exponents.noncompact_flag,
        checks=closed_form_checks(star, b, exponents, g),
        caveats=tuple(caveats),
    )


@dataclass(frozen=True)
class Verdict:
    label: str
    p_recip: Fraction
    beta: Fraction
    caveats: Tuple[str, ...] = ()


def classify_point(p_recip: Fraction, beta: Fraction, report: SmoothingReport) -> Verdict:
    """
    Classifies (1/p, beta): bounded strictly inside the region, unbounded when
    g < 1 and beta > g, unknown otherwise.

    Raises:
        ValueError: If 1/p is outside (0, 1) or beta <= 0.
    """
    p_recip, beta = Fraction(p_recip), Fraction(beta)
    if not 0 < p_recip < 1:
        raise ValueError(f"1/p must lie in (0, 1), got {p_recip}.")
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}.")
    caveats = list(report.caveats)
    if region_contains(report.region_vertices, (p_recip, beta)):
        return Verdict(BOUNDED, p_recip, beta, tuple(caveats))
    if report.g < 1 and beta > report.g:
        return Verdict(UNBOUNDED, p_recip, beta, tuple([KERNEL_CAVEAT] + caveats))
    if report.g >= 1:
        caveats.insert(0, LARGE_G_CAVEAT)
    return Verdict(UNKNOWN, p_recip, beta, tuple(caveats))
