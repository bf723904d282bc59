# poly/__init__.py
from poly.polynomial import (
    BlockStructure,
    ExponentVector,
    Polynomial,
    StarFunction,
    evaluate_polynomial,
    evaluate_star,
    exponent_vector,
)
from poly.parser import format_polynomial, parse_polynomial
from poly.validation import ValidationReport, validate_input
