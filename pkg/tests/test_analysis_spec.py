import json
from fractions import Fraction

import pytest

from analysis_spec import OracleOptions, read_spec, spec_from_values
from errors import InputValidationError, SpecFileError
from poly import parse_polynomial
from report import to_json


def test_read_spec_file(write_spec):
    path = write_spec(
        phase="t1^2*t2^2 + t3^4",
        n=3,
        blocks="[1, 3], [2]",
        alphas="1/2, 0",
        o_override=4,
        oracle__j_min=8,
        oracle__seed=9,
        oracle__direction="random",
    )
    spec = read_spec(path)
    assert spec.phase == "t1^2*t2^2 + t3^4"
    assert spec.n == 3
    assert spec.blocks == ((0, 2), (1,))
    assert spec.alphas == (Fraction(1, 2), 0)
    assert spec.o_override == 4
    assert (spec.oracle.j_min, spec.oracle.j_max, spec.oracle.seed) == (8, 24, 9)
    assert spec.oracle.direction == "random"
    assert spec.oracle.budget is None


def test_defaults(write_spec):
    spec = read_spec(write_spec(phase="t1^2 + t2^2", n=2))
    assert spec.blocks == ((0,), (1,))
    assert spec.alphas == (0, 0)
    assert spec.o_override is None
    assert spec.oracle == OracleOptions()
    assert spec.oracle.r == Fraction(1, 2)
    assert (spec.oracle.lambda_min, spec.oracle.lambda_max, spec.oracle.lambda_points) == (32, 4096, 8)


def test_build_returns_phase_and_blocks(write_spec):
    p, b = read_spec(write_spec(phase="t1^2 + t2^2", n=2, blocks="[1, 2]", alphas="1")).build()
    assert p == parse_polynomial("t1^2 + t2^2", 2)
    assert b.blocks == ((0, 1),)
    assert b.alphas == (1,)


def test_build_reports_every_violation(write_spec):
    spec = read_spec(write_spec(phase="1 + t1", n=1, alphas="2"))
    with pytest.raises(InputValidationError) as excinfo:
        spec.build()
    assert len(excinfo.value.report.failures) == 3


def test_missing_file():
    with pytest.raises(SpecFileError):
        read_spec("no/such/spec.env")


@pytest.mark.parametrize(
    "values",
    [
        {"n": "2"},
        {"phase": "t1^2"},
        {"phase": "t1^2", "n": "0"},
        {"phase": "t1^2", "n": "two"},
        {"phase": "t1^2", "n": "1", "colour": "red"},
        {"phase": "t1^2", "n": "2", "blocks": "1, 2"},
        {"phase": "t1^2", "n": "2", "blocks": "[1], [3]"},
        {"phase": "t1^2", "n": "2", "alphas": "0"},
        {"phase": "t1^2", "n": "2", "alphas": "0.5, 0"},
        {"phase": "t1^2", "n": "1", "o_override": "-1"},
        {"phase": "t1^2", "n": "1", "oracle.r": "half"},
    ],
)
def test_malformed_values(values):
    with pytest.raises(SpecFileError):
        spec_from_values(values)


def test_echo_uses_one_based_blocks(write_spec):
    echo = read_spec(write_spec(phase="t1^2 + t2^2 + t3^2", n=3, blocks="[3, 1], [2]", alphas="3/2, 0")).echo()
    assert echo["blocks"] == "[3, 1], [2]"
    assert echo["alphas"] == "3/2, 0"
    assert echo["oracle.r"] == "1/2"
    assert "o_override" not in echo


def test_json_report_is_read_back(write_spec, tmp_path):
    spec = read_spec(write_spec(phase="t1^4*t2^4", n=2, alphas="1/3, 0", o_override=2, oracle__budget=5000))
    report = tmp_path / "report.json"
    report.write_text(to_json({"spec": spec.echo(), "a0": "1/4"}), encoding="utf-8")
    assert read_spec(str(report)) == spec


def test_json_without_echo_is_rejected(tmp_path):
    report = tmp_path / "report.json"
    report.write_text(json.dumps({"a0": "1/4"}), encoding="utf-8")
    with pytest.raises(SpecFileError):
        read_spec(str(report))
