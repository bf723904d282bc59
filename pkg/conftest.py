import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from exponent_pipeline import compute_exponents  # noqa: E402
from newton.polyhedron import star_function  # noqa: E402
from poly.parser import parse_polynomial  # noqa: E402
from poly.polynomial import BlockStructure  # noqa: E402
from smoothing_theorem import build_smoothing_report  # noqa: E402
from vanishing.order import order_of_S  # noqa: E402


@pytest.fixture
def smoothing_report():
    """Exact report for (phase text, n, blocks, alphas); blocks are 0-based, default singletons."""

    def make(text: str, n: int, blocks=None, alphas=None, override=None):
        p = parse_polynomial(text, n)
        b = BlockStructure.create(blocks, alphas) if blocks is not None else BlockStructure.singletons(n, alphas)
        star = star_function(p)
        exponents = compute_exponents(star, b)
        return build_smoothing_report(star, b, exponents, order_of_S(p, override))

    return make


@pytest.fixture
def write_spec(tmp_path):
    """Writes a key = value spec file and returns its path."""

    def make(name: str = "case.env", **values):
        path = tmp_path / name
        lines = [f"{key.replace('__', '.')} = {value}" for key, value in values.items()]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)

    return make
