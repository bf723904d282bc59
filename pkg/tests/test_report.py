import csv
import json
from dataclasses import replace

import pytest

from exponent_pipeline import compute_exponents
from newton import star_function
from oracle.fitting import fit_decay_table, fit_sublevel_table, geometric_grid
from poly import BlockStructure, parse_polynomial
from report import (
    decay_fit_document,
    record_document,
    smoothing_document,
    sublevel_fit_document,
    to_json,
    write_decay_csv,
    write_sublevel_csv,
)


def test_record_document_is_one_based_and_exact():
    star = star_function(parse_polynomial("t1^2 + t2^2 + t3^2", 3))
    record = compute_exponents(star, BlockStructure.singletons(3)).per_permutation[0]
    document = record_document(record)
    assert document["sigma"] == [1, 2, 3]
    assert document["block_maxima"] == [1, 2, 3]
    assert document["beta"] == ["0", "-1", "-2"]
    assert document["s_triple_star"] == [["0", "0", "2/3"]]
    assert (document["d_l"], document["a_l"]) == ("2/3", "3/2")
    assert document["compact_flag"] is False


def test_smoothing_document(smoothing_report):
    document = smoothing_document(smoothing_report("t1^4*t2^4", 2))
    assert document["g"] == "1/4"
    assert document["region_vertices"] == [["0", "0"], ["1", "0"], ["3/4", "1/4"], ["1/4", "1/4"]]
    assert document["sharpness"]["sharp_p_interval"] == ["1/4", "3/4"]
    assert document["regions_coincide"] is True


def test_json_is_sorted_and_stable(smoothing_report):
    document = smoothing_document(smoothing_report("t1^2*t2^2", 2))
    text = to_json(document)
    assert text == to_json(json.loads(text))
    assert list(json.loads(text)) == sorted(document)
    assert text.endswith("}\n")


def test_nan_fit_values_become_null():
    lambdas = geometric_grid(32, 4096, 8)
    fit = fit_decay_table(lambdas, lambdas ** -0.5, [0.001] * 8, "random", 1e-12)
    document = decay_fit_document(fit)
    assert document["beta_hat"] == pytest.approx(0.5, abs=1e-9)
    assert document["points_used"] == 8
    nan_fit = replace(fit, fitted_slope=float("nan"))
    assert decay_fit_document(nan_fit)["fitted_slope"] is None


def test_fit_documents_name_the_selection():
    js = list(range(6, 25))
    fit = fit_sublevel_table(js, [2.0 ** (-0.5 * j) * j for j in js], [0.01] * len(js), predicted_a=0.5, max_log_power=1)
    document = sublevel_fit_document(fit)
    assert (document["fitted_d"], document["log_power_selected_at"]) == (1.0, 0.5)
    assert document["free_d"] == pytest.approx(1.0, abs=1e-9)
    assert sublevel_fit_document(fit_sublevel_table(js, [2.0 ** -j for j in js], [0.01] * len(js)))["log_power_selected_at"] is None
    lambdas = geometric_grid(32, 4096, 8)
    decay = fit_decay_table(lambdas, lambdas ** -0.5, [0.001] * 8, 3, 1e-12, asymptotic_from=100.0)
    assert decay_fit_document(decay)["fit_from_lambda"] == 100.0


def test_sublevel_csv(tmp_path):
    js = list(range(6, 16))
    fit = fit_sublevel_table(js, [2.0 ** -j for j in js], [0.01] * len(js))
    assert sublevel_fit_document(fit)["points_used"] == 7
    path = tmp_path / "table.csv"
    write_sublevel_csv(fit, str(path))
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["j", "epsilon", "measure", "rel_err"]
    assert len(rows) == 11
    assert rows[1][0] == "6"
    assert float(rows[1][1]) == 2.0 ** -6


def test_decay_csv(tmp_path):
    lambdas = geometric_grid(32, 4096, 8)
    fit = fit_decay_table(lambdas, lambdas ** -1.0, [0.001] * 8, 2, 1e-12)
    path = tmp_path / "decay.csv"
    write_decay_csv(fit, str(path))
    rows = path.read_text(encoding="utf-8").splitlines()
    assert rows[0] == "lambda,magnitude,rel_err"
    assert len(rows) == 9
    assert float(rows[1].split(",")[0]) == 32.0
