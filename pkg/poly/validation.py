from dataclasses import dataclass, field
from typing import List

from poly.polynomial import BlockStructure, Polynomial


@dataclass(frozen=True)
class ValidationReport:
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def validate_input(p: Polynomial, b: BlockStructure) -> ValidationReport:
    """
    Checks the standing hypotheses on the phase and the kernel:
    S(0) = 0, grad S(0) = 0, S not identically zero, and 0 <= alpha_k < l_k
    for a block structure partitioning t1..tn.

    Returns:
        ValidationReport: Every violated rule, not only the first.
    """
    failures = []
    if p.is_zero:
        failures.append("S is identically zero")
    for coefficient, exponent in p.terms:
        degree = sum(exponent)
        if degree == 0:
            failures.append(f"constant term {coefficient} violates S(0) = 0")
        elif degree <= 1:
            failures.append(f"term of degree {degree} with exponent {_show(exponent)} violates grad S(0) = 0")
    failures.extend(b.problems(p.dimension))
    return ValidationReport(failures)


def _show(exponent) -> str:
    return "(" + ", ".join(str(e) for e in exponent) + ")"
