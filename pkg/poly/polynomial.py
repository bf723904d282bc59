# poly/polynomial.py
"""
Sparse polynomials with exact rational coefficients and exponents.

Exponents are allowed to be nonnegative rationals because the substitutions
z = y^(1 - beta) of the growth-exponent pipeline produce fractional powers.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np

from errors import DimensionMismatchError, NegativeExponentError

ExponentVector = Tuple[Fraction, ...]
Term = Tuple[Fraction, ExponentVector]


def exponent_vector(entries: Iterable, dimension: int = None) -> ExponentVector:
    """
    Builds a validated exponent vector.

    Raises:
        DimensionMismatchError: If `dimension` is given and the length differs.
        NegativeExponentError: If any entry is negative.
    """
    vector = tuple(Fraction(e) for e in entries)
    if dimension is not None and len(vector) != dimension:
        raise DimensionMismatchError(
            f"Exponent vector {tuple(map(str, vector))} has length {len(vector)}, expected {dimension}."
        )
    if not vector:
        raise DimensionMismatchError("Exponent vectors need at least one entry.")
    if any(e < 0 for e in vector):
        raise NegativeExponentError(f"Negative exponent in {tuple(map(str, vector))}.")
    return vector


def _power(x, e: Fraction):
    if e == 0:
        return 1
    if e.denominator == 1:
        return x ** e.numerator
    if x < 0:
        raise ValueError(f"Cannot raise negative coordinate {x} to non-integer power {e}.")
    return float(x) ** float(e)


@dataclass(frozen=True)
class Polynomial:
    """
    Canonical sparse polynomial: unique exponents, nonzero coefficients,
    terms sorted lexicographically by exponent. Build it with `from_terms`.
    """

    dimension: int
    terms: Tuple[Term, ...]

    @classmethod
    def from_terms(cls, dimension: int, terms: Iterable[Tuple[object, Iterable]]) -> "Polynomial":
        if dimension < 1:
            raise DimensionMismatchError("Polynomials need dimension n >= 1.")
        merged: Dict[ExponentVector, Fraction] = {}
        for coefficient, exponent in terms:
            key = exponent_vector(exponent, dimension)
            merged[key] = merged.get(key, Fraction(0)) + Fraction(coefficient)
        canonical = tuple(sorted(((c, e) for e, c in merged.items() if c != 0), key=lambda t: t[1]))
        return cls(dimension, canonical)

    @classmethod
    def monomial(cls, exponent: Iterable, coefficient=1) -> "Polynomial":
        exponent = tuple(exponent)
        return cls.from_terms(len(exponent), [(coefficient, exponent)])

    @property
    def exponents(self) -> Tuple[ExponentVector, ...]:
        return tuple(e for _, e in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def has_integer_exponents(self) -> bool:
        return all(v.denominator == 1 for e in self.exponents for v in e)

    def coefficient(self, exponent: Sequence) -> Fraction:
        key = tuple(Fraction(v) for v in exponent)
        return next((c for c, e in self.terms if e == key), Fraction(0))

    def restrict(self, exponents: Iterable[ExponentVector]) -> "Polynomial":
        """Keeps only the terms whose exponent is in `exponents`."""
        keep = set(exponents)
        return Polynomial(self.dimension, tuple(t for t in self.terms if t[1] in keep))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if other.dimension != self.dimension:
            raise DimensionMismatchError("Cannot add polynomials of different dimension.")
        return Polynomial.from_terms(self.dimension, self.terms + other.terms)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if other.dimension != self.dimension:
            raise DimensionMismatchError("Cannot multiply polynomials of different dimension.")
        products = [
            (c1 * c2, tuple(a + b for a, b in zip(e1, e2)))
            for c1, e1 in self.terms
            for c2, e2 in other.terms
        ]
        return Polynomial.from_terms(self.dimension, products)

    def __pow__(self, power: int) -> "Polynomial":
        result = Polynomial.monomial((0,) * self.dimension)
        for _ in range(power):
            result = result * self
        return result

    def __str__(self) -> str:
        from poly.parser import format_polynomial

        return format_polynomial(self)

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        """
        Vectorized floating-point evaluation at the rows of `points`.

        Integer exponents keep their sign; fractional exponents use |t|.
        Callers with negative coordinates must only pass integer-exponent
        polynomials (the numeric oracles check this up front).
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        total = np.zeros(points.shape[0])
        for coefficient, exponent in self.terms:
            value = np.full(points.shape[0], float(coefficient))
            for i, e in enumerate(exponent):
                if e == 0:
                    continue
                if e.denominator == 1:
                    value = value * points[:, i] ** e.numerator
                else:
                    value = value * np.abs(points[:, i]) ** float(e)
            total += value
        return total


def evaluate_polynomial(p: Polynomial, point: Sequence) -> object:
    """
    Evaluates p at a point, with 0^0 = 1.

    Integer exponents are applied exactly, so Fraction inputs give Fraction
    results; fractional exponents fall back to floats.

    Raises:
        DimensionMismatchError: If the point has the wrong length.
        ValueError: If a negative coordinate meets a non-integer exponent.
    """
    if len(point) != p.dimension:
        raise DimensionMismatchError(f"Point has length {len(point)}, expected {p.dimension}.")
    total = 0
    for coefficient, exponent in p.terms:
        value = coefficient
        for x, e in zip(point, exponent):
            value = value * _power(x, e)
        total = total + value
    return total


@dataclass(frozen=True)
class StarFunction:
    """S*(t) = sum over vertex exponents v of |t^v|."""

    dimension: int
    vertex_exponents: Tuple[ExponentVector, ...]

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        points = np.abs(np.atleast_2d(np.asarray(points, dtype=float)))
        exponents = np.array([[float(v) for v in e] for e in self.vertex_exponents])
        # 0.0 ** 0.0 == 1.0 in numpy, which is the convention we want.
        return np.prod(points[:, None, :] ** exponents[None, :, :], axis=2).sum(axis=1)

    def as_polynomial(self) -> Polynomial:
        return Polynomial.from_terms(self.dimension, [(1, e) for e in self.vertex_exponents])


def evaluate_star(s: StarFunction, point: Sequence) -> object:
    """Evaluates S* at a point; even in every coordinate, 0^0 = 1."""
    if len(point) != s.dimension:
        raise DimensionMismatchError(f"Point has length {len(point)}, expected {s.dimension}.")
    total = 0
    for exponent in s.vertex_exponents:
        value = 1
        for x, e in zip(point, exponent):
            value = value * _power(abs(x), e)
        total = total + value
    return total


@dataclass(frozen=True)
class BlockStructure:
    """
    Partition of the variables into blocks t_k with kernel singularities
    |t_k|^(-alpha_k). Indices are 0-based.
    """

    blocks: Tuple[Tuple[int, ...], ...]
    alphas: Tuple[Fraction, ...]

    @classmethod
    def create(cls, blocks: Iterable[Iterable[int]], alphas: Iterable = None) -> "BlockStructure":
        blocks = tuple(tuple(sorted(int(i) for i in block)) for block in blocks)
        alphas = tuple(Fraction(a) for a in alphas) if alphas is not None else (Fraction(0),) * len(blocks)
        if len(alphas) != len(blocks):
            raise DimensionMismatchError(f"Got {len(alphas)} alphas for {len(blocks)} blocks.")
        return cls(blocks, alphas)

    @classmethod
    def singletons(cls, dimension: int, alphas: Iterable = None) -> "BlockStructure":
        return cls.create([[i] for i in range(dimension)], alphas)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def dimension(self) -> int:
        return sum(self.sizes)

    def problems(self, dimension: int) -> list:
        """Violated structural rules, as human-readable strings."""
        issues = []
        flat = [i for block in self.blocks for i in block]
        if any(len(b) == 0 for b in self.blocks):
            issues.append("every block must be nonempty")
        if sorted(flat) != list(range(dimension)):
            issues.append(f"blocks must partition the variables t1..t{dimension}")
        for k, (size, alpha) in enumerate(zip(self.sizes, self.alphas), start=1):
            if not 0 <= alpha < size:
                issues.append(f"alpha_{k} = {alpha} must satisfy 0 <= alpha_{k} < l_{k} = {size}")
        return issues

    def weight_array(self, points: np.ndarray) -> np.ndarray:
        """prod_k |t_k|^(-alpha_k), with |t_k| the Euclidean norm of block k."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        weight = np.ones(points.shape[0])
        for block, alpha in zip(self.blocks, self.alphas):
            if alpha == 0:
                continue
            norm = np.sqrt(np.sum(points[:, list(block)] ** 2, axis=1))
            weight = weight * norm ** (-float(alpha))
        return weight
