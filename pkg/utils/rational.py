import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """
    Parses an integer or `p/q` string into an exact Fraction.

    Raises:
        ValueError: If the text is not an integer or a p/q ratio with q > 0.
    """
    match = _RATIONAL.match(str(text))
    if not match:
        raise ValueError(f"Malformed rational: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError(f"Zero denominator in rational: {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value) -> str:
    return str(Fraction(value))


def format_vector(values: Iterable) -> list:
    return [format_rational(v) for v in values]


def primitive_integer_vector(values: Sequence[Fraction]) -> tuple:
    """
    Scales a rational vector by a positive factor so its entries become
    coprime integers. The zero vector is returned unchanged.
    """
    values = [Fraction(v) for v in values]
    if not any(values):
        return tuple(values)
    common_denominator = math.lcm(*(v.denominator for v in values))
    integers = [int(v * common_denominator) for v in values]
    divisor = math.gcd(*integers)
    return tuple(Fraction(v // divisor) for v in integers)


def is_integral(value: Fraction) -> bool:
    return Fraction(value).denominator == 1
