"""Fractional-power roots of quasi-ordinary polynomials at finite precision.

A root of F(t_1^n, ..., t_e^n, y) is peeled one monomial at a time: the first
edge of the Newton polygon of F(s + y') over the total degree gives the next
exponent, its edge polynomial the coefficient.  Everything stays over the
rationals; a step whose edge polynomial has no rational root aborts.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from sympy import Poly, QQ, symbols

from qolab.charseq import ContactValue, build_char_sequences, contact, lattice_member, minors_gcd, order_from_contact
from qolab.errors import (
    AlgebraicExtensionRequired,
    DegreeError,
    InsufficientPrecision,
    InvariantViolation,
    NonMonicError,
    NotQuasiOrdinaryError,
    QolabError,
)
from qolab.irreducibility import LOCAL, is_quasi_ordinary
from qolab.poly_core import (
    ExponentVec,
    LaurentPoly,
    YPoly,
    diag_leading_exp,
    initial_data,
    mero_involute,
    resultant_y,
    to_fraction,
    to_sympy_rational,
    vec_neg,
    vec_scale,
    vec_sub,
)

logger = logging.getLogger(__name__)

MAX_PEELING_STEPS = 256


@dataclass(frozen=True)
class Parametrization:
    p: int
    series: LaurentPoly
    precision: int
    exact: bool = False

    @property
    def guaranteed_degree(self) -> float:
        return float("inf") if self.exact else self.precision


@dataclass(frozen=True)
class RootExpansion:
    parametrization: Parametrization
    m: tuple[ExponentVec, ...]
    conjugates: int

    @property
    def full_degree(self) -> bool:
        return self.conjugates == self.parametrization.p


def ramified(f: YPoly, n: int) -> YPoly:
    """f(t^n, y)."""
    return f.map_coeffs(lambda c: c.scale_exponents(n))


def _rational_root(coeffs: dict[int, Fraction]) -> Optional[Fraction]:
    z = symbols("z")
    edge = Poly.from_dict({(j,): to_sympy_rational(c) for j, c in coeffs.items()}, z, domain=QQ)
    roots = [to_fraction(root) for root in edge.ground_roots() if root != 0]
    return max(roots) if roots else None


def _next_term(P: YPoly) -> tuple[int, ExponentVec, Fraction]:
    """Degree, exponent and coefficient of the next monomial of the tracked root."""
    data = {j: initial_data(P.coeff(j)) for j in range(P.degree + 1) if P.coeff(j)}
    ord0 = sum(data[0].exp)
    slope, k = min(((Fraction(sum(data[j].exp) - ord0, j), -j) for j in data if j > 0))
    k = -k
    mu_degree = -slope
    raw = vec_sub(data[0].exp, data[k].exp)
    if any(a % k for a in raw):
        raise NotQuasiOrdinaryError(f"next exponent {raw}/{k} is not integral")
    mu = tuple(a // k for a in raw)
    edge = {}
    for j in data:
        if j <= k and Fraction(sum(data[j].exp) - ord0, 1) == -j * mu_degree:
            edge[j] = P.coeff(j).coeff(vec_sub(data[0].exp, vec_scale(mu, j)))
    c = _rational_root(edge)
    if c is None:
        raise AlgebraicExtensionRequired(f"edge polynomial {edge} has no nonzero rational root")
    return int(mu_degree), mu, c


def expand_root(f: YPoly, precision: int) -> RootExpansion:
    """One root of f(t^n, y) = 0, complete up to total degree `precision`."""
    if not f.is_monic():
        raise NonMonicError("expand_root requires a monic polynomial")
    n, e = f.degree, f.nvars
    if n < 1:
        raise DegreeError("expand_root requires y-degree at least 1")
    P = ramified(f, n)
    series = LaurentPoly.zero(e)
    exact = False
    for step in range(MAX_PEELING_STEPS):
        if not P.coeff(0):
            exact = True
            break
        degree, mu, c = _next_term(P)
        if degree > precision:
            break
        logger.debug(f"peeling step {step}: {c}*t^{mu}")
        term = LaurentPoly.monomial(mu, c)
        series = series + term
        P = P.taylor_shift(term)
    else:
        raise InvariantViolation(f"root expansion did not settle in {MAX_PEELING_STEPS} steps")

    m: list[ExponentVec] = []
    for exp in series.support():
        if not lattice_member(exp, n, m).member:
            m.append(exp)
    conjugates = n**e // minors_gcd(n, e, m)
    if conjugates > n:
        raise NotQuasiOrdinaryError(f"root has {conjugates} conjugates for degree {n}")
    if conjugates < n and not exact:
        raise InsufficientPrecision(f"precision {precision} exhibits only {conjugates} of {n} conjugates", m)
    return RootExpansion(Parametrization(n, series, precision, exact), tuple(m), conjugates)


def _residue_part(u: LaurentPoly, n: int) -> LaurentPoly:
    return LaurentPoly(u.nvars, {exp: c for exp, c in u.items() if all(a % n == 0 for a in exp)})


def _conjugate_elementary(Y: LaurentPoly, n: int) -> list[LaurentPoly]:
    """Elementary symmetric functions of the n conjugates y(w·t), counted with multiplicity.

    Power sums of the conjugates keep exactly the terms of y^j whose exponents
    vanish mod n (times n); Newton's identities turn them into the product.
    """
    e = Y.nvars
    power_sums = [None]
    power = LaurentPoly.constant(e, 1)
    for _ in range(n):
        power = power * Y
        power_sums.append(_residue_part(power, n) * n)
    elementary = [LaurentPoly.constant(e, 1)]
    for k in range(1, n + 1):
        total = LaurentPoly.zero(e)
        for i in range(1, k + 1):
            total = total + elementary[k - i] * power_sums[i] * (1 if i % 2 else -1)
        elementary.append(total / k)
    return elementary


def conjugate_product(param: Parametrization) -> YPoly:
    """Π(y − y(w·t)) over the p conjugates of the series, written in x = t^p."""
    n, Y = param.p, param.series
    coeffs = {}
    for k, s in enumerate(_conjugate_elementary(Y, n)):
        sign = -1 if k % 2 else 1
        coeffs[n - k] = LaurentPoly(Y.nvars, {tuple(a // n for a in exp): c * sign for exp, c in s.items()})
    return YPoly(Y.nvars, coeffs)


def conjugate_product_check(f: YPoly, param: Parametrization, precision: Optional[int] = None) -> bool:
    """Compare Π(y − y(w·t)) over the n conjugates with f(t^n, y)."""
    n = f.degree
    if param.p != n:
        raise DegreeError(f"parametrization has p = {param.p}, polynomial degree is {n}")
    Y = param.series
    delta = Y.min_degree() if Y else 0
    base = param.guaranteed_degree if precision is None else min(param.guaranteed_degree, precision)
    if base < delta:
        raise InsufficientPrecision("precision is below the leading degree of the root")

    elementary = _conjugate_elementary(Y, n)
    P = ramified(f, n)
    for k in range(n + 1):
        diff = elementary[k] * (-1 if k % 2 else 1) - P.coeff(n - k)
        bound = base + max(k - 1, 0) * delta
        if any(sum(exp) <= bound for exp, _ in diff.items()):
            logger.debug(f"conjugate product differs at y^{n - k}")
            return False
    return True


def order_via_root(F: YPoly, G: YPoly, param: Parametrization) -> ExponentVec:
    """exp of the initial form of G(t^n, y(t))."""
    n = param.p
    Y = param.series
    value = ramified(G, n).evaluate(Y)
    if not value:
        if param.exact:
            raise InvariantViolation("G vanishes on the root")
        raise InsufficientPrecision("G vanishes on the root within precision")
    exp = initial_data(value).exp
    if not param.exact:
        delta = Y.min_degree() if Y else 0
        bounds = [
            param.precision + (j - 1) * delta + c.scale_exponents(n).min_degree()
            for j, c in G.coeffs().items()
            if j > 0
        ]
        if bounds and sum(exp) > min(bounds):
            raise InsufficientPrecision(f"initial form at degree {sum(exp)} is not stable at precision {param.precision}")
    return exp


@dataclass(frozen=True)
class IntersectionOrders:
    resultant: ExponentVec
    root: ExponentVec
    contact: Optional[ContactValue] = None
    from_contact: Optional[ExponentVec] = None

    @property
    def agree(self) -> bool:
        return self.resultant == self.root and self.from_contact in (None, self.resultant)


def resultant_order(f: YPoly, g: YPoly, convention: str) -> ExponentVec:
    """Order of g along f read off the resultant, in F's convention."""
    res = resultant_y(f, g)
    if convention == LOCAL:
        return initial_data(res).exp
    return vec_neg(diag_leading_exp(res))


def intersection_orders(f: YPoly, g: YPoly, convention: str, precision: int) -> IntersectionOrders:
    """Order of g along f by resultant, by substitution and by contact.

    The contact route needs an irreducible G with F·G quasi-ordinary; without
    it `contact` and `from_contact` stay None.
    """
    F, G = (f, g) if convention == LOCAL else (mero_involute(f), mero_involute(g))
    root = expand_root(F, precision)
    via_resultant = resultant_order(f, g, convention)
    via_root = order_via_root(F, G, root.parametrization)
    if G.degree < 1:
        return IntersectionOrders(via_resultant, via_root)
    try:
        if not is_quasi_ordinary(F * G).is_qo:
            logger.debug("contact path unavailable: F·G is not quasi-ordinary")
            return IntersectionOrders(via_resultant, via_root)
        other = expand_root(G, precision)
        if not other.full_degree:
            logger.debug(f"contact path unavailable: G has a root with {other.conjugates} of {G.degree} conjugates")
            return IntersectionOrders(via_resultant, via_root)
        c = contact(root.parametrization, other.parametrization)
        cs = build_char_sequences(F.degree, F.nvars, root.m)
        via_contact = order_from_contact(cs, G.degree, c).value
    except QolabError as e:
        logger.debug(f"contact path unavailable: {e}")
        return IntersectionOrders(via_resultant, via_root)
    return IntersectionOrders(via_resultant, via_root, c, via_contact)
