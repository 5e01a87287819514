"""Polynomial text grammar: parser and canonical printer."""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from qolab.errors import DegreeError, ParseError, UndeclaredVariable
from qolab.poly_core import LaurentPoly, YPoly, diagonal_key

TOKEN_RE = re.compile(r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


@dataclass(frozen=True)
class VariableDecl:
    x_names: tuple[str, ...]
    y_name: Optional[str] = "y"

    @classmethod
    def default(cls, e: int) -> "VariableDecl":
        if e < 1:
            raise DegreeError("at least one x variable is required")
        if e == 1:
            return cls(("x",))
        return cls(tuple(f"x{i}" for i in range(1, e + 1)))

    @classmethod
    def plane(cls) -> "VariableDecl":
        """The bivariate (X, Y) declaration used for discriminant shapes."""
        return cls(("X", "Y"), None)

    @property
    def e(self) -> int:
        return len(self.x_names)

    @property
    def names(self) -> tuple[str, ...]:
        return self.x_names + ((self.y_name,) if self.y_name else ())


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = TOKEN_RE.match(text, pos)
        if not match or match.end() == pos:
            offset = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + offset]!r}", pos + offset)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append((kind, match.group(kind), start))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.tokens = _tokenize(text)
        self.index = 0
        self.names = {name: i for i, name in enumerate(names)}
        self.nvars = len(names)

    def peek(self):
        return self.tokens[self.index]

    def take(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value or kind != "op":
            raise ParseError(f"expected {value!r}", pos)

    def parse(self) -> LaurentPoly:
        result = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"expected an operator before {text!r}", pos)
        return result

    def expr(self) -> LaurentPoly:
        sign = 1
        kind, text, _ = self.peek()
        if kind == "op" and text in "+-":
            self.take()
            sign = -1 if text == "-" else 1
        result = self.term() * sign
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                right = self.term()
                result = result + right if text == "+" else result - right
            else:
                return result

    def term(self) -> LaurentPoly:
        result = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == "*":
                self.take()
                result = result * self.factor()
            else:
                return result

    def factor(self) -> LaurentPoly:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        kind, text, pos = self.peek()
        if kind == "op" and text == "^":
            self.take()
            k = self.exponent()
            if k < 0 and not base.is_monomial():
                raise ParseError("negative exponent on a non-monomial", pos)
            return base**k
        return base

    def exponent(self) -> int:
        kind, text, pos = self.take()
        if kind == "op" and text == "(":
            value = self.exponent()
            self.expect(")")
            return value
        if kind == "op" and text == "-":
            return -self.exponent()
        if kind != "number" or "/" in text:
            raise ParseError("expected an integer exponent", pos)
        return int(text)

    def atom(self) -> LaurentPoly:
        kind, text, pos = self.take()
        if kind == "number":
            return LaurentPoly.constant(self.nvars, Fraction(text))
        if kind == "name":
            if text not in self.names:
                raise UndeclaredVariable(text, pos)
            return LaurentPoly.variable(self.nvars, self.names[text])
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {text!r}", pos)


def parse_laurent(text: str, names: Sequence[str]) -> LaurentPoly:
    """Parse text into a Laurent polynomial over the given variable names."""
    return _Parser(text, names).parse()


def parse_poly(text: str, decl: VariableDecl) -> YPoly:
    """Parse text into a YPoly; y may only appear with nonnegative powers."""
    if decl.y_name is None:
        raise DegreeError("declaration has no distinguished variable")
    flat = parse_laurent(text, decl.names)
    try:
        return YPoly.from_flat(flat)
    except DegreeError as e:
        raise ParseError(str(e), 0) from e


def _format_coeff(coeff: Fraction, has_vars: bool) -> str:
    magnitude = abs(coeff)
    if has_vars and magnitude == 1:
        return ""
    return str(magnitude)


def _format_term(exp, coeff: Fraction, names: Sequence[str]) -> str:
    factors = []
    for name, k in zip(names, exp):
        if k == 1:
            factors.append(name)
        elif k:
            factors.append(f"{name}^{k}")
    head = _format_coeff(coeff, bool(factors))
    return "*".join(([head] if head else []) + factors)


def _join(terms) -> str:
    if not terms:
        return "0"
    pieces = []
    for i, (coeff, body) in enumerate(terms):
        if i == 0:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(pieces)


def format_laurent(p: LaurentPoly, names: Optional[Sequence[str]] = None) -> str:
    if names is None:
        names = VariableDecl.default(p.nvars).x_names if p.nvars else ()
    ordered = sorted(p.items(), key=lambda item: diagonal_key(item[0]), reverse=True)
    return _join([(coeff, _format_term(exp, coeff, names)) for exp, coeff in ordered])


def format_ypoly(f: YPoly, decl: Optional[VariableDecl] = None) -> str:
    """Canonical text: descending y-degree, x-parts by ascending diagonal order."""
    decl = decl or VariableDecl.default(f.nvars)
    names = decl.names
    terms = []
    for j, coeff in f.coeffs().items():
        for exp, c in sorted(coeff.items(), key=lambda item: diagonal_key(item[0])):
            terms.append((c, _format_term(exp + (j,), c, names)))
    return _join(terms)
