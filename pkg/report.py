# report.py
"""
JSON and CSV serialization. Exact values are written as "p/q" strings, floats
only appear in oracle fields, and keys are sorted so that equal inputs give
byte-identical files.
"""
import csv
import json
import math
from fractions import Fraction
from typing import Dict, Optional

from analysis_spec import AnalysisSpec
from exponent_pipeline import ExponentResult, PermutationRecord
from newton.polyhedron import NewtonPolyhedron
from oracle.fitting import DecayFit, SublevelFit
from poly.polynomial import StarFunction
from smoothing_theorem import SmoothingReport, Verdict
from utils.rational import format_rational, format_vector
from vanishing.strategy import VanishingOrderResult


def _float(value) -> Optional[float]:
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


def _vertices(points) -> list:
    return [format_vector(point) for point in points]


def _interval(interval) -> Optional[list]:
    return None if interval is None else format_vector(interval)


def record_document(record: PermutationRecord) -> Dict:
    return {
        "sigma": [i + 1 for i in record.sigma],
        "block_maxima": [i + 1 for i in record.block_maxima],
        "beta": format_vector(record.beta),
        "W": _vertices(record.W),
        "X": _vertices(record.X),
        "s_triple_star": _vertices(record.s_triple_star.vertex_exponents),
        "d_l": format_rational(record.d_l),
        "a_l": format_rational(record.a_l),
        "log_dim": record.log_dim,
        "d_l_log": record.d_l_log,
        "compact_flag": record.diagonal_face_compact,
    }


def order_document(order: VanishingOrderResult) -> Dict:
    return {
        "value": order.value,
        "mode": order.mode,
        "o_clamped": order.o_clamped,
        "witnesses": [
            {
                "face": _vertices(w.face),
                "location": [_float(x) for x in w.location],
                "multiplicity": w.multiplicity,
                "interval": list(w.interval) if w.interval else None,
            }
            for w in order.witnesses
        ],
    }


def smoothing_document(report: SmoothingReport) -> Dict:
    return {
        "a0": format_rational(report.a0),
        "d0": report.d0,
        "g": format_rational(report.g),
        "region_vertices": _vertices(report.region_vertices),
        "stated_region_vertices": _vertices(report.stated_region_vertices),
        "regions_coincide": report.regions_coincide,
        "apex_beta": format_rational(report.apex_beta),
        "left_apex_p_recip": format_rational(report.left_apex_p_recip),
        "sharpness": {
            "upper_bound_beta": None
            if report.sharpness.upper_bound_beta is None
            else format_rational(report.sharpness.upper_bound_beta),
            "sharp_p_interval": _interval(report.sharpness.sharp_p_interval),
            "caveats": list(report.sharpness.caveats),
        },
        "noncompact_flag": report.noncompact_flag,
        "checks": [
            {
                "name": c.name,
                "applicable": c.applicable,
                "expected": None if c.expected is None else format_rational(c.expected),
                "actual": None if c.actual is None else format_rational(c.actual),
                "holds": c.holds,
            }
            for c in report.checks
        ],
        "caveats": list(report.caveats),
    }


def analysis_document(
    spec: AnalysisSpec,
    polyhedron: NewtonPolyhedron,
    distance: Fraction,
    star: StarFunction,
    order: VanishingOrderResult,
    exponents: ExponentResult,
    report: SmoothingReport,
) -> Dict:
    """The full `analyze` report."""
    return {
        "spec": spec.echo(),
        "newton_vertices": _vertices(polyhedron.vertices),
        "newton_distance": format_rational(distance),
        "star_exponents": _vertices(star.vertex_exponents),
        "o": order_document(order),
        "permutations": [record_document(r) for r in exponents.per_permutation],
        "a0": format_rational(exponents.a0),
        "d0": exponents.d0,
        "noncompact_flag": exponents.noncompact_flag,
        "theorem": smoothing_document(report),
    }


def sublevel_fit_document(fit: SublevelFit) -> Dict:
    return {
        "fitted_a": _float(fit.fitted_a),
        "fitted_d": _float(fit.fitted_d),
        "free_a": _float(fit.free_a),
        "free_d": _float(fit.free_d),
        "log_power_selected_at": _float(fit.predicted_a),
        "intercept": _float(fit.intercept),
        "residual": _float(fit.residual),
        "monotone": fit.monotone,
        "r": _float(fit.r),
        "sample_budget": fit.sample_budget,
        "seed": fit.seed,
        "points_used": sum(fit.used),
    }


def decay_fit_document(fit: DecayFit) -> Dict:
    return {
        "direction": fit.direction,
        "fitted_slope": _float(fit.fitted_slope),
        "beta_hat": _float(fit.beta_hat),
        "intercept": _float(fit.intercept),
        "residual": _float(fit.residual),
        "log_power": fit.log_power,
        "unreliable": fit.unreliable,
        "fit_from_lambda": _float(fit.asymptotic_from),
        "points_used": sum(fit.used),
    }


def verdict_document(spec: AnalysisSpec, report: SmoothingReport, verdict: Verdict) -> Dict:
    return {
        "spec": spec.echo(),
        "p_recip": format_rational(verdict.p_recip),
        "beta": format_rational(verdict.beta),
        "verdict": verdict.label,
        "caveats": list(verdict.caveats),
        "g": format_rational(report.g),
        "o": {"value": report.o_value, "mode": report.o_mode},
        "region_vertices": _vertices(report.region_vertices),
    }


def to_json(document: Dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(document: Dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(to_json(document))


def write_sublevel_csv(fit: SublevelFit, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["j", "epsilon", "measure", "rel_err"])
        for row in zip(fit.js, fit.epsilons, fit.measures, fit.rel_errs):
            writer.writerow([row[0]] + [repr(float(x)) for x in row[1:]])


def write_decay_csv(fit: DecayFit, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["lambda", "magnitude", "rel_err"])
        for row in zip(fit.lambdas, fit.magnitudes, fit.rel_errs):
            writer.writerow([repr(float(x)) for x in row])
