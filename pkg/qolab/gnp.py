"""Formal orders and generalized Newton polygons."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from qolab.adic import adic_coefficients, multi_adic_expand
from qolab.errors import DegreeError, NonUniqueMinimizer, ZeroPolynomialError
from qolab.poly_core import ExponentVec, YPoly, initial_data, vec_add, vec_le, vec_lt, vec_scale, zero_vec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightSystem:
    r0: tuple[ExponentVec, ...]
    r: tuple[ExponentVec, ...]

    @classmethod
    def of(cls, r0: Sequence[Sequence[int]], r: Sequence[Sequence[int]]) -> "WeightSystem":
        return cls(tuple(tuple(v) for v in r0), tuple(tuple(v) for v in r))

    def scaled(self, s: int) -> "WeightSystem":
        return WeightSystem(tuple(vec_scale(v, s) for v in self.r0), tuple(vec_scale(v, s) for v in self.r))


class Straightness(str, Enum):
    NOT_STRAIGHT = "not_straight"
    STRAIGHT = "straight"
    STRICTLY_STRAIGHT = "strictly_straight"


@dataclass(frozen=True)
class GNPPoint:
    k: int
    order: ExponentVec
    base_part: ExponentVec


@dataclass(frozen=True)
class GNPData:
    points: tuple[GNPPoint, ...]
    classification: Straightness
    base_order: ExponentVec
    d: int


def _valuation_key(v: ExponentVec):
    # smallest total degree, lex-greatest inside it
    return (sum(v), tuple(-a for a in v))


def formal_order(w: WeightSystem, G: Sequence[YPoly], F: YPoly) -> ExponentVec:
    """Minimum of Σγ_i·r0_i + Σθ_j·r_j over the G-adic support of F.

    Values are compared by minimal total degree first, then the lex-greatest
    exponent wins.  Two supports reaching the same value raise NonUniqueMinimizer.
    """
    if not F:
        raise ZeroPolynomialError("formal order of the zero polynomial")
    if len(w.r) != len(G):
        raise DegreeError(f"{len(w.r)} weights for {len(G)} bases")
    e = F.nvars
    support = multi_adic_expand(F, G).support if G else {(): F}
    values = []
    for theta, coeff in support.items():
        if coeff.degree > 0:
            raise DegreeError("G-adic coefficients must be free of y; the ladder must start at degree 1")
        gamma = initial_data(coeff.coeff(0)).exp
        value = zero_vec(e)
        for g_i, r0_i in zip(gamma, w.r0):
            value = vec_add(value, vec_scale(r0_i, g_i))
        for t_j, r_j in zip(theta, w.r):
            value = vec_add(value, vec_scale(r_j, t_j))
        values.append((value, theta))
    best = min(values, key=lambda item: _valuation_key(item[0]))
    ties = [theta for value, theta in values if value == best[0]]
    if len(ties) > 1:
        raise NonUniqueMinimizer(f"formal order {best[0]} reached by supports {ties}", ties)
    return best[0]


def straightness_classify(F: YPoly, w: WeightSystem, G: Sequence[YPoly], base: YPoly, d: int) -> GNPData:
    found, coeffs = adic_coefficients(F, base)
    if found != d:
        raise DegreeError(f"F has {found} powers of the base, expected {d}")
    base_order = formal_order(w, G, base)
    e = F.nvars
    points = [GNPPoint(0, zero_vec(e), vec_scale(base_order, d))]
    orders = {}
    for k, a_k in enumerate(coeffs, start=1):
        if a_k:
            orders[k] = formal_order(w, G, a_k)
            points.append(GNPPoint(k, orders[k], vec_scale(base_order, d - k)))

    ends = d in orders and orders[d] == vec_scale(base_order, d)
    middle = [(vec_scale(base_order, k), orders[k]) for k in range(1, d) if k in orders]
    if ends and all(vec_lt(line, value) for line, value in middle):
        classification = Straightness.STRICTLY_STRAIGHT
    elif ends and all(vec_le(line, value) for line, value in middle):
        classification = Straightness.STRAIGHT
    else:
        classification = Straightness.NOT_STRAIGHT
    logger.debug(f"polygon with base order {base_order}: {classification.value}")
    return GNPData(tuple(points), classification, base_order, d)
