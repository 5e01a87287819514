"""Exact sparse arithmetic for Laurent polynomials in x1..xe and polynomials in y over them."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

import sympy
from sympy import QQ, Poly, Rational

from qolab.errors import DegreeError, NonMonicError, ZeroPolynomialError

logger = logging.getLogger(__name__)

ExponentVec = tuple[int, ...]
Number = Union[int, Fraction]


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions and sympy rationals to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, sympy.Basic):
        if not value.is_Rational:
            raise ValueError(f"{value} is not rational")
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def to_sympy_rational(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def total_degree(v: Iterable[int]) -> int:
    return sum(v)


def diagonal_key(v: ExponentVec):
    """Sort key of the diagonal order: total degree first, then lexicographic."""
    return (sum(v), tuple(v))


def vec_add(a: ExponentVec, b: ExponentVec) -> ExponentVec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: ExponentVec, b: ExponentVec) -> ExponentVec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(a: ExponentVec, k) -> tuple:
    return tuple(k * x for x in a)


def vec_neg(a: ExponentVec) -> ExponentVec:
    return tuple(-x for x in a)


def vec_le(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def vec_lt(a, b) -> bool:
    """Strictly smaller in every coordinate."""
    return all(x < y for x, y in zip(a, b))


def zero_vec(e: int) -> ExponentVec:
    return (0,) * e


def unit_vec(e: int, i: int, scale: int = 1) -> ExponentVec:
    return tuple(scale if j == i else 0 for j in range(e))


class LaurentPoly:
    """Finite map from exponent vectors to nonzero rationals."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[ExponentVec, Number]] = None):
        self.nvars = nvars
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(a) for a in exp)
            if len(exp) != nvars:
                raise DegreeError(f"exponent {exp} does not have {nvars} entries")
            coeff = to_fraction(coeff)
            if coeff:
                clean[exp] = coeff
        self._terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: Number) -> "LaurentPoly":
        return cls(nvars, {zero_vec(nvars): value})

    @classmethod
    def monomial(cls, exp: ExponentVec, coeff: Number = 1) -> "LaurentPoly":
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "LaurentPoly":
        return cls(nvars, {unit_vec(nvars, index): 1})

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise DegreeError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.nvars, other)
        return NotImplemented

    def items(self):
        return self._terms.items()

    def support(self) -> list[ExponentVec]:
        return sorted(self._terms, key=diagonal_key)

    def coeff(self, exp: ExponentVec) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self._terms)

    def constant_term(self) -> Fraction:
        return self.coeff(zero_vec(self.nvars))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exp, coeff in other._terms.items():
            terms[exp] = terms.get(exp, 0) + coeff
        return LaurentPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {exp: -coeff for exp, coeff in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[ExponentVec, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = vec_add(e1, e2)
                terms[exp] = terms.get(exp, 0) + c1 * c2
        return LaurentPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise DegreeError("only monomials have Laurent inverses")
            ((exp, coeff),) = self._terms.items()
            return LaurentPoly.monomial(vec_scale(exp, k), coeff**k)
        result = LaurentPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        from qolab.parsing import format_laurent

        return f"LaurentPoly({format_laurent(self)!r})"

    def min_degree(self) -> int:
        return min(sum(exp) for exp in self._terms)

    def max_degree(self) -> int:
        return max(sum(exp) for exp in self._terms)

    def min_exponent(self) -> ExponentVec:
        """Componentwise minimum over the support."""
        return tuple(min(col) for col in zip(*self._terms))

    def max_exponent(self) -> ExponentVec:
        return tuple(max(col) for col in zip(*self._terms))

    def homogeneous_component(self, degree: int) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {exp: c for exp, c in self._terms.items() if sum(exp) == degree})

    def truncate(self, max_degree: int) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {exp: c for exp, c in self._terms.items() if sum(exp) <= max_degree})

    def negate_exponents(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {vec_neg(exp): c for exp, c in self._terms.items()})

    def scale_exponents(self, p: int) -> "LaurentPoly":
        """Substitute x_i = t_i^p."""
        return LaurentPoly(self.nvars, {vec_scale(exp, p): c for exp, c in self._terms.items()})

    def shift(self, exp: ExponentVec) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {vec_add(e, exp): c for e, c in self._terms.items()})

    def uses_only(self, indices: Iterable[int]) -> bool:
        allowed = set(indices)
        return all(a == 0 or i in allowed for exp in self._terms for i, a in enumerate(exp))

    def substitute(self, index: int, image: "LaurentPoly") -> "LaurentPoly":
        """Replace variable `index` by `image` (same variable count)."""
        image = self._coerce(image)
        powers: dict[int, LaurentPoly] = {}
        result = LaurentPoly.zero(self.nvars)
        for exp, coeff in self._terms.items():
            k = exp[index]
            if k not in powers:
                powers[k] = image**k
            rest = exp[:index] + (0,) + exp[index + 1 :]
            result = result + powers[k] * LaurentPoly.monomial(rest, coeff)
        return result


class YPoly:
    """Polynomial in y whose coefficients are LaurentPolys in x1..xe."""

    __slots__ = ("nvars", "_coeffs")

    def __init__(self, nvars: int, coeffs: Optional[Mapping[int, Union[LaurentPoly, Number]]] = None):
        self.nvars = nvars
        clean = {}
        for j, coeff in (coeffs or {}).items():
            if j < 0:
                raise DegreeError(f"negative y-degree {j}")
            if not isinstance(coeff, LaurentPoly):
                coeff = LaurentPoly.constant(nvars, coeff)
            elif coeff.nvars != nvars:
                raise DegreeError(f"variable count mismatch: {nvars} vs {coeff.nvars}")
            if coeff:
                clean[int(j)] = coeff
        self._coeffs = clean

    @classmethod
    def y(cls, nvars: int) -> "YPoly":
        return cls(nvars, {1: 1})

    @classmethod
    def constant(cls, nvars: int, value: Union[LaurentPoly, Number]) -> "YPoly":
        return cls(nvars, {0: value})

    @classmethod
    def from_flat(cls, flat: LaurentPoly) -> "YPoly":
        """Inverse of `to_flat`: the last variable of `flat` is y."""
        nvars = flat.nvars - 1
        grouped: dict[int, dict[ExponentVec, Fraction]] = {}
        for exp, coeff in flat.items():
            j = exp[-1]
            if j < 0:
                raise DegreeError("negative power of y")
            grouped.setdefault(j, {})[exp[:-1]] = coeff
        return cls(nvars, {j: LaurentPoly(nvars, terms) for j, terms in grouped.items()})

    def to_flat(self) -> LaurentPoly:
        terms = {}
        for j, coeff in self._coeffs.items():
            for exp, c in coeff.items():
                terms[exp + (j,)] = c
        return LaurentPoly(self.nvars + 1, terms)

    def _coerce(self, other) -> "YPoly":
        if isinstance(other, YPoly):
            if other.nvars != self.nvars:
                raise DegreeError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return YPoly.constant(self.nvars, other)
        return NotImplemented

    @property
    def degree(self) -> int:
        """y-degree; -1 for the zero polynomial."""
        return max(self._coeffs, default=-1)

    def coeff(self, j: int) -> LaurentPoly:
        return self._coeffs.get(j, LaurentPoly.zero(self.nvars))

    def coeffs(self) -> dict[int, LaurentPoly]:
        return dict(sorted(self._coeffs.items(), reverse=True))

    @property
    def leading_coefficient(self) -> LaurentPoly:
        if not self._coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self._coeffs[self.degree]

    def is_monic(self) -> bool:
        return bool(self._coeffs) and self.leading_coefficient == 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        coeffs = dict(self._coeffs)
        for j, c in other._coeffs.items():
            coeffs[j] = coeffs[j] + c if j in coeffs else c
        return YPoly(self.nvars, coeffs)

    __radd__ = __add__

    def __neg__(self) -> "YPoly":
        return YPoly(self.nvars, {j: -c for j, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        coeffs: dict[int, LaurentPoly] = {}
        for j1, c1 in self._coeffs.items():
            for j2, c2 in other._coeffs.items():
                j = j1 + j2
                coeffs[j] = coeffs[j] + c1 * c2 if j in coeffs else c1 * c2
        return YPoly(self.nvars, coeffs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "YPoly":
        if k < 0:
            raise DegreeError("negative powers of y-polynomials are not polynomials")
        result = YPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (LaurentPoly, int, Fraction)):
            other = YPoly.constant(self.nvars, other)
        if not isinstance(other, YPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        from qolab.parsing import format_ypoly

        return f"YPoly({format_ypoly(self)!r})"

    def divmod(self, g: "YPoly") -> tuple["YPoly", "YPoly"]:
        """Division by a monic g; the remainder has y-degree below deg g."""
        if not g.is_monic():
            raise NonMonicError("division requires a monic divisor")
        m = g.degree
        quotient: dict[int, LaurentPoly] = {}
        remainder = self
        while remainder.degree >= m:
            j = remainder.degree
            lead = remainder.leading_coefficient
            quotient[j - m] = lead
            remainder = remainder - g * YPoly(self.nvars, {j - m: lead})
        return YPoly(self.nvars, quotient), remainder

    def map_coeffs(self, fn) -> "YPoly":
        return YPoly(self.nvars, {j: fn(c) for j, c in self._coeffs.items()})

    def evaluate(self, value: LaurentPoly) -> LaurentPoly:
        """Substitute y = value (Horner)."""
        result = LaurentPoly.zero(self.nvars)
        for j in range(self.degree, -1, -1):
            result = result * value + self.coeff(j)
        return result

    def taylor_shift(self, a: Union[LaurentPoly, Number]) -> "YPoly":
        """Return f(y + a)."""
        step = YPoly.y(self.nvars) + a
        result = YPoly(self.nvars)
        for j in range(self.degree, -1, -1):
            result = result * step + self.coeff(j)
        return result

    def derivative(self) -> "YPoly":
        return YPoly(self.nvars, {j - 1: c * j for j, c in self._coeffs.items() if j > 0})

    def x_exponents(self) -> list[ExponentVec]:
        return [exp for c in self._coeffs.values() for exp, _ in c.items()]


@dataclass(frozen=True)
class OrderData:
    initial_form: LaurentPoly
    exp: ExponentVec
    inco: Fraction
    monomial: LaurentPoly


def initial_data(u: LaurentPoly) -> OrderData:
    """Minimal-degree homogeneous component of u with its lex-greatest exponent."""
    if not u:
        raise ZeroPolynomialError("initial data of the zero polynomial")
    form = u.homogeneous_component(u.min_degree())
    exp = max(exp for exp, _ in form.items())
    inco = form.coeff(exp)
    return OrderData(form, exp, inco, LaurentPoly.monomial(exp, inco))


def diag_leading_exp(u: LaurentPoly) -> ExponentVec:
    if not u:
        raise ZeroPolynomialError("leading exponent of the zero polynomial")
    return max((exp for exp, _ in u.items()), key=diagonal_key)


def mero_involute(f: YPoly) -> YPoly:
    """x_i -> x_i^{-1} in every coefficient."""
    return f.map_coeffs(LaurentPoly.negate_exponents)


def depress(f: YPoly) -> tuple[YPoly, LaurentPoly]:
    """Return f(y - a_1/n) and the shift a_1/n."""
    if not f.is_monic():
        raise NonMonicError("depress requires a monic polynomial")
    n = f.degree
    if n < 1:
        raise DegreeError("depress requires y-degree at least 1")
    shift = f.coeff(n - 1) / n
    if not shift:
        return f, shift
    return f.taylor_shift(-shift), shift


def _clearing_shift(f: YPoly) -> ExponentVec:
    exps = f.x_exponents()
    if not exps:
        return zero_vec(f.nvars)
    return tuple(max(0, -a) for a in (min(col) for col in zip(*exps)))


def _sympy_gens(nvars: int):
    return sympy.symbols(f"y x1:{nvars + 1}")


def _to_sympy_poly(f: YPoly, shift: ExponentVec, gens) -> Poly:
    data = {}
    for j, coeff in f.coeffs().items():
        for exp, c in coeff.items():
            data[(j,) + vec_add(exp, shift)] = to_sympy_rational(c)
    return Poly.from_dict(data, *gens, domain=QQ)


def resultant_y(f: YPoly, g: YPoly) -> LaurentPoly:
    """Sylvester resultant eliminating y."""
    if not f or not g:
        raise ZeroPolynomialError("resultant of a zero polynomial")
    if f.nvars != g.nvars:
        raise DegreeError("resultant of polynomials over different variable counts")
    e = f.nvars
    n, m = f.degree, g.degree
    if n == 0 and m == 0:
        a, b = f.coeff(0), g.coeff(0)
        if a.is_constant() and b.is_constant():
            return LaurentPoly.constant(e, 1)
        raise DegreeError("both inputs have y-degree 0; nothing to eliminate")
    if m == 0:
        return g.coeff(0) ** n
    if n == 0:
        return f.coeff(0) ** m
    if not (f.is_monic() or g.is_monic()):
        raise NonMonicError("resultant_y requires at least one monic input")

    a, b = _clearing_shift(f), _clearing_shift(g)
    gens = _sympy_gens(e)
    res = _to_sympy_poly(f, a, gens).resultant(_to_sympy_poly(g, b, gens))
    # Res(x^a f, x^b g) = x^(a*m + b*n) Res(f, g)
    offset = vec_add(vec_scale(a, m), vec_scale(b, n))
    terms = {vec_sub(tuple(monom), offset): to_fraction(c) for monom, c in res.terms()}
    return LaurentPoly(e, terms)


def discriminant_y(f: YPoly) -> LaurentPoly:
    if not f.is_monic():
        raise NonMonicError("discriminant_y requires a monic polynomial")
    n = f.degree
    if n < 1:
        raise DegreeError("discriminant_y requires y-degree at least 1")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    if n == 1:
        return LaurentPoly.constant(f.nvars, 1)
    return resultant_y(f, f.derivative()) * sign
