# smoothing_analysis.py
"""
Orchestration behind the CLI commands: exact analysis, the two numeric
verifications and point classification.
"""
import asyncio
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from rich.progress import BarColumn, Progress, TextColumn

from analysis_spec import AnalysisSpec
from config import Settings
from errors import BudgetExceededError, InconclusiveNumericsError, UnsupportedScaleError
from exponent_pipeline import ExponentResult, analyze_all_permutations
from newton.majorization import check_star_majorization
from newton.polyhedron import NewtonPolyhedron, build_newton_polyhedron, newton_distance, star_function
from oracle.dyadic import default_depth
from oracle.fitting import DecayFit, SublevelFit, fit_decay_table, fit_sublevel_table, geometric_grid, within
from oracle.fourier import NOISE_FLOOR, asymptotic_lambda, direction_vector, estimate_fourier, kernel_mass
from oracle.sublevel import estimate_sublevel
from poly.polynomial import BlockStructure, Polynomial, StarFunction
from report import (
    analysis_document,
    decay_fit_document,
    smoothing_document,
    sublevel_fit_document,
    verdict_document,
)
from smoothing_theorem import SmoothingReport, build_smoothing_report, classify_point
from utils.console import console
from utils.rational import format_rational
from vanishing.order import order_of_S
from vanishing.strategy import VanishingOrderResult

GROWTH_TOLERANCE = 0.05
DECAY_TOLERANCE = 0.15
MAX_FIT_RESIDUAL = 0.1
MAJORIZATION_SAMPLES = 4096


@dataclass(frozen=True)
class Analysis:
    spec: AnalysisSpec
    p: Polynomial
    b: BlockStructure
    polyhedron: NewtonPolyhedron
    distance: Fraction
    star: StarFunction
    order: VanishingOrderResult
    exponents: ExponentResult
    report: SmoothingReport

    def document(self) -> Dict:
        return analysis_document(
            self.spec, self.polyhedron, self.distance, self.star, self.order, self.exponents, self.report
        )


@dataclass(frozen=True)
class Verification:
    document: Dict
    passed: bool
    fit: object


def _progress() -> Progress:
    return Progress(
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TextColumn("{task.completed}/{task.total}"),
        console=console,
        transient=True,
    )


async def _run_blocking(func, *args):
    loop = asyncio.get_running_loop()
    return await loop.run_in_executor(None, func, *args)


async def analyze(spec: AnalysisSpec, settings: Settings, override: Optional[int] = None) -> Analysis:
    """
    Runs the exact pipeline: N(S), o(S), every permutation region, and the
    boundedness region.

    Raises:
        InputValidationError: If the spec violates the standing hypotheses.
        UnsupportedScaleError: If n exceeds the configured maximum.
    """
    p, b = spec.build()
    if p.dimension > settings.max_dimension:
        raise UnsupportedScaleError(
            f"n = {p.dimension} exceeds the supported maximum n = {settings.max_dimension}."
        )
    polyhedron = build_newton_polyhedron(p)
    distance = newton_distance(polyhedron)
    star = star_function(p)
    if override is None:
        override = spec.o_override

    console.print(f"[yellow]Computing o(S) and {p.dimension}! permutation regions...[/yellow]")
    order = await _run_blocking(order_of_S, p, override, settings.sampled_grid, settings.seed)
    exponents = await analyze_all_permutations(star, b, settings.concurrency, settings.max_dimension)
    report = build_smoothing_report(star, b, exponents, order)
    return Analysis(spec, p, b, polyhedron, distance, star, order, exponents, report)


def majorization_document(analysis: Analysis, seed: int) -> Dict:
    result = check_star_majorization(analysis.p, analysis.star, 1.0, MAJORIZATION_SAMPLES, seed)
    return {
        "constant": result.constant if result.constant != float("inf") else None,
        "refined_constant": result.refined_constant if result.refined_constant != float("inf") else None,
        "passed": result.passed,
        "counterexample": list(result.counterexample) if result.counterexample else None,
    }


async def analyze_document(spec: AnalysisSpec, settings: Settings, override: Optional[int] = None) -> Dict:
    analysis = await analyze(spec, settings, override)
    document = analysis.document()
    document["majorization"] = majorization_document(analysis, settings.seed)
    return document


def _seed(spec: AnalysisSpec, settings: Settings) -> int:
    return spec.oracle.seed if spec.oracle.seed is not None else settings.seed


def _budget(spec: AnalysisSpec, settings: Settings) -> int:
    return spec.oracle.budget if spec.oracle.budget is not None else settings.budget


async def verify_sublevel(spec: AnalysisSpec, settings: Settings, override: Optional[int] = None) -> Verification:
    """
    Fits the growth of the weighted sublevel measure and compares it with (a0, d0).

    Raises:
        UnsupportedScaleError: For n > 3.
        InconclusiveNumericsError: If the measures are not monotone, the fit
            residual is too large or too few levels are usable.
    """
    analysis = await analyze(spec, settings, override)
    default_depth(analysis.p.dimension)
    o = spec.oracle
    if o.j_max - o.j_min + 1 < 10:
        raise ValueError("oracle.j_min..oracle.j_max must span at least 10 dyadic scales.")
    seed, budget = _seed(spec, settings), _budget(spec, settings)
    js = list(range(o.j_min, o.j_max + 1))
    per_level = budget // len(js)
    r = float(o.r)
    semaphore = asyncio.Semaphore(settings.concurrency)

    with _progress() as progress:
        task = progress.add_task("Sublevel measures", total=len(js))

        async def process_level(j: int):
            async with semaphore:
                estimate = await _run_blocking(
                    estimate_sublevel, analysis.star, analysis.b, 2.0 ** -j, r, per_level, seed, settings.qmc_points
                )
                progress.advance(task)
                return estimate

        estimates = await asyncio.gather(*[process_level(j) for j in js])

    try:
        fit = fit_sublevel_table(
            js,
            [e.measure for e in estimates],
            [e.rel_err for e in estimates],
            r,
            budget,
            seed,
            predicted_a=float(analysis.exponents.a0),
            max_log_power=analysis.p.dimension - 1,
        )
    except InconclusiveNumericsError as e:
        e.payload = Verification(_sublevel_document(analysis, e.payload), False, e.payload)
        raise
    document = _sublevel_document(analysis, fit)
    if not fit.monotone:
        raise InconclusiveNumericsError(
            "Sublevel measures are not monotone in eps beyond sampling noise.", Verification(document, False, fit)
        )
    if fit.residual > MAX_FIT_RESIDUAL:
        raise InconclusiveNumericsError(
            f"Growth fit residual {fit.residual:.3g} exceeds {MAX_FIT_RESIDUAL}.", Verification(document, False, fit)
        )
    return Verification(document, document["verdict"]["passed"], fit)


def _sublevel_document(analysis: Analysis, fit: SublevelFit) -> Dict:
    a0, d0 = analysis.exponents.a0, analysis.exponents.d0
    a_ok = within(fit.fitted_a, float(a0), GROWTH_TOLERANCE)
    d_ok = bool(fit.fitted_d == fit.fitted_d) and round(fit.fitted_d) == d0
    return {
        "spec": analysis.spec.echo(),
        "predicted": {"a0": format_rational(a0), "d0": d0},
        "fit": sublevel_fit_document(fit),
        "verdict": {
            "a_within_tolerance": a_ok,
            "d_rounds_to_d0": d_ok,
            "tolerance_a": GROWTH_TOLERANCE,
            "passed": a_ok and d_ok,
        },
    }


async def verify_decay(
    spec: AnalysisSpec,
    settings: Settings,
    direction=None,
    allow_3d: bool = False,
    override: Optional[int] = None,
) -> Verification:
    """
    Fits the decay of the Fourier transform of the surface measure along one
    direction and checks it against the one-sided predictions: at p = 2 the
    decay is at least the region's apex height, and for g < 1 it does not
    meaningfully exceed g.

    Raises:
        UnsupportedScaleError: For n = 3 without `allow_3d`, or n > 3.
        InconclusiveNumericsError: If fewer than four grid points clear the noise
            floor, or if the larger lambdas ran over the budget and the fit
            had to stop short of them.
    """
    analysis = await analyze(spec, settings, override)
    n = analysis.p.dimension
    default_depth(n)
    if n == 3 and not allow_3d:
        raise UnsupportedScaleError("Oscillatory quadrature for n = 3 needs --allow-3d-oscillatory.")
    o = spec.oracle
    direction = direction or o.direction or str(n + 1)
    seed, budget = _seed(spec, settings), settings.fourier_budget
    if spec.oracle.budget is not None:
        budget = spec.oracle.budget
    r = float(o.r)
    grid = geometric_grid(float(o.lambda_min), float(o.lambda_max), o.lambda_points)
    e = direction_vector(direction, n, seed)
    along_s = direction != "random" and int(direction) == n + 1
    log_power = analysis.exponents.d0 if along_s else 0

    mass = await _run_blocking(kernel_mass, analysis.p, analysis.b, r, budget)
    fit_from = asymptotic_lambda(analysis.p, e, r)
    semaphore = asyncio.Semaphore(settings.concurrency)
    blocked: List[float] = []
    with _progress() as progress:
        task = progress.add_task("Fourier transform", total=len(grid))

        async def process_lambda(lam: float):
            async with semaphore:
                estimate = None
                if not blocked or lam < min(blocked):
                    try:
                        estimate = await _run_blocking(estimate_fourier, analysis.p, analysis.b, lam * e, r, budget)
                    except BudgetExceededError:
                        blocked.append(lam)
                progress.advance(task)
                return estimate

        estimates = await asyncio.gather(*[process_lambda(lam) for lam in grid])

    # Everything from the first lambda over budget on is dropped, whichever tasks finished first.
    cut = next((i for i, est in enumerate(estimates) if est is None), len(estimates))
    estimates = estimates[:cut]
    magnitudes = [abs(est.value) for est in estimates] + [float("nan")] * (len(grid) - cut)
    rel_errs = [est.rel_err for est in estimates] + [float("inf")] * (len(grid) - cut)
    try:
        fit = fit_decay_table(
            grid,
            magnitudes,
            rel_errs,
            direction,
            NOISE_FLOOR * mass,
            log_power,
            any(est.unreliable for est in estimates),
            fit_from,
        )
    except InconclusiveNumericsError as exc:
        exc.payload = Verification(_decay_document(analysis, exc.payload, along_s), False, exc.payload)
        raise
    document = _decay_document(analysis, fit, along_s)
    if cut < len(grid):
        raise InconclusiveNumericsError(
            f"lambda >= {grid[cut]:g} needs more than {budget} evaluations; "
            f"fitted on the {sum(fit.used)} smaller grid points.",
            Verification(document, False, fit),
        )
    return Verification(document, document["verdict"]["consistent"], fit)


def _decay_document(analysis: Analysis, fit: DecayFit, along_s: bool) -> Dict:
    report = analysis.report
    checks: List[Dict] = []
    if along_s and fit.beta_hat == fit.beta_hat:
        floor = float(report.apex_beta)
        checks.append(
            {"name": "at_least_apex_height", "bound": format_rational(report.apex_beta),
             "holds": fit.beta_hat >= floor - DECAY_TOLERANCE}
        )
        if report.g < 1:
            checks.append(
                {"name": "at_most_g", "bound": format_rational(report.g),
                 "holds": fit.beta_hat <= float(report.g) + DECAY_TOLERANCE}
            )
    caveats = []
    if not along_s:
        caveats.append("the smoothing estimate only constrains decay along the S direction")
    if fit.unreliable:
        caveats.append("some boxes still oscillated at the subdivision cap")
    return {
        "spec": analysis.spec.echo(),
        "predicted": {
            "a0": format_rational(analysis.exponents.a0),
            "d0": analysis.exponents.d0,
            "g": format_rational(report.g),
        },
        "fit": decay_fit_document(fit),
        "verdict": {
            "checks": checks,
            "tolerance": DECAY_TOLERANCE,
            "consistent": all(c["holds"] for c in checks),
            "caveats": caveats,
        },
    }


async def classify_document(spec: AnalysisSpec, settings: Settings, p_recip: Fraction, beta: Fraction,
                            override: Optional[int] = None) -> Dict:
    """
    Raises:
        ValueError: If 1/p is not in (0, 1) or beta <= 0.
    """
    analysis = await analyze(spec, settings, override)
    verdict = classify_point(p_recip, beta, analysis.report)
    document = verdict_document(spec, analysis.report, verdict)
    document["theorem"] = smoothing_document(analysis.report)
    return document
