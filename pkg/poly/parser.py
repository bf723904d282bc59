# poly/parser.py
"""
Text grammar for polynomials, shared by spec files and the CLI:

    polynomial := ['+'|'-'] term (('+'|'-') term)*
    term       := factor (['*'] factor)*
    factor     := rational | variable ['^' exponent]
    variable   := 't' INT                       (t1 .. tn)
    exponent   := rational | '(' ['-'] rational ')'
    rational   := INT ['/' INT]
"""
import re
from fractions import Fraction
from typing import List, Tuple

from errors import DimensionMismatchError, NegativeExponentError, PolynomialSyntaxError
from poly.polynomial import Polynomial

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>t(?P<index>\d+))|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if not match:
            offset = position + len(text[position:]) - len(text[position:].lstrip())
            raise PolynomialSyntaxError(f"Unexpected character {text[offset]!r}", offset)
        if match.group("int") is not None:
            tokens.append(("int", match.group("int"), match.start("int")))
        elif match.group("var") is not None:
            tokens.append(("var", match.group("index"), match.start("var")))
        else:
            tokens.append(("op", match.group("op"), match.start("op")))
        position = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, dimension: int):
        self.tokens = _tokenize(text)
        self.index = 0
        self.dimension = dimension

    @property
    def current(self) -> Tuple[str, str, int]:
        return self.tokens[self.index]

    def _advance(self) -> Tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _accept(self, op: str) -> bool:
        kind, value, _ = self.current
        if kind == "op" and value == op:
            self.index += 1
            return True
        return False

    def _expect_int(self, what: str) -> int:
        kind, value, position = self.current
        if kind != "int":
            raise PolynomialSyntaxError(f"Expected {what}, found {value or 'end of input'!r}", position)
        self.index += 1
        return int(value)

    def _rational(self, what: str) -> Fraction:
        numerator = self._expect_int(what)
        if self._accept("/"):
            _, _, position = self.current
            denominator = self._expect_int("denominator")
            if denominator == 0:
                raise PolynomialSyntaxError("Zero denominator", position)
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def _exponent(self) -> Fraction:
        _, _, position = self.current
        if self._accept("("):
            negative = self._accept("-")
            value = self._rational("exponent")
            if not self._accept(")"):
                kind, token, where = self.current
                raise PolynomialSyntaxError(f"Expected ')', found {token or 'end of input'!r}", where)
        else:
            negative = self._accept("-")
            value = self._rational("exponent")
        if negative and value != 0:
            raise NegativeExponentError(f"Negative exponent -{value} at position {position}.")
        return value

    def _term(self, sign: int) -> Tuple[Fraction, List[Fraction]]:
        coefficient = Fraction(sign)
        exponent = [Fraction(0)] * self.dimension
        seen_factor = False
        while True:
            kind, value, position = self.current
            if kind == "int":
                coefficient *= self._rational("coefficient")
            elif kind == "var":
                self._advance()
                index = int(value)
                if not 1 <= index <= self.dimension:
                    raise DimensionMismatchError(
                        f"Variable t{index} at position {position} is outside t1..t{self.dimension}."
                    )
                power = self._exponent() if self._accept("^") else Fraction(1)
                exponent[index - 1] += power
            elif seen_factor and kind == "op" and value == "*":
                self._advance()
                kind, value, position = self.current
                if kind not in ("int", "var"):
                    raise PolynomialSyntaxError(f"Expected a factor after '*', found {value or 'end of input'!r}", position)
                continue
            else:
                if not seen_factor:
                    raise PolynomialSyntaxError(f"Expected a term, found {value or 'end of input'!r}", position)
                return coefficient, exponent
            seen_factor = True

    def parse(self) -> Polynomial:
        terms = []
        sign = -1 if self._accept("-") else 1
        if sign == 1:
            self._accept("+")
        terms.append(self._term(sign))
        while True:
            if self._accept("+"):
                terms.append(self._term(1))
            elif self._accept("-"):
                terms.append(self._term(-1))
            else:
                break
        kind, value, position = self.current
        if kind != "end":
            raise PolynomialSyntaxError(f"Unexpected token {value!r}", position)
        return Polynomial.from_terms(self.dimension, terms)


def parse_polynomial(text: str, n: int) -> Polynomial:
    """
    Parses polynomial text into a canonical Polynomial in n variables.

    Duplicate monomials are merged by adding coefficients and zero results
    are dropped.

    Raises:
        PolynomialSyntaxError: On malformed text (the message carries the position).
        NegativeExponentError: On an exponent below zero.
        DimensionMismatchError: On a variable index outside t1..tn.
    """
    return _Parser(text, n).parse()


def _format_exponent(e: Fraction) -> str:
    return str(e.numerator) if e.denominator == 1 else f"({e})"


def format_polynomial(p: Polynomial) -> str:
    """Prints p in the grammar above; parse_polynomial inverts it."""
    if p.is_zero:
        return "0"
    pieces = []
    for coefficient, exponent in p.terms:
        factors = [
            f"t{i}" if e == 1 else f"t{i}^{_format_exponent(e)}"
            for i, e in enumerate(exponent, start=1)
            if e != 0
        ]
        magnitude = abs(coefficient)
        if magnitude != 1 or not factors:
            factors.insert(0, str(magnitude))
        body = "*".join(factors)
        if not pieces:
            pieces.append(f"-{body}" if coefficient < 0 else body)
        else:
            pieces.append(f"- {body}" if coefficient < 0 else f"+ {body}")
    return " ".join(pieces)
