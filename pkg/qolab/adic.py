"""g-adic and G-adic expansions, the Tschirnhausen transform and approximate roots."""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from qolab.errors import DegreeError, InvariantViolation, NonMonicError
from qolab.poly_core import YPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdicExpansion:
    bases: tuple[YPoly, ...]
    support: dict[tuple[int, ...], YPoly] = field(hash=False)

    def coefficient(self, theta: Sequence[int]) -> YPoly:
        return self.support.get(tuple(theta), YPoly(self.bases[0].nvars))

    def reassemble(self) -> YPoly:
        """Σ a_θ·G^θ."""
        nvars = self.bases[0].nvars
        total = YPoly(nvars)
        for theta, coeff in self.support.items():
            term = coeff
            for base, k in zip(self.bases, theta):
                term = term * base**k
            total = total + term
        return total


def _division_tower(f: YPoly, g: YPoly) -> list[YPoly]:
    """Coefficients c_0, c_1, ... with f = Σ c_j g^j and deg c_j < deg g."""
    if not g.is_monic():
        raise NonMonicError("adic base must be monic")
    if g.degree < 1:
        raise DegreeError("adic base must have y-degree at least 1")
    coeffs = []
    rest = f
    while rest:
        rest, remainder = rest.divmod(g)
        coeffs.append(remainder)
    return coeffs


def adic_expand(f: YPoly, g: YPoly) -> AdicExpansion:
    support = {(j,): c for j, c in enumerate(_division_tower(f, g)) if c}
    return AdicExpansion((g,), support)


def adic_coefficients(f: YPoly, g: YPoly) -> tuple[int, list[YPoly]]:
    """For f = g^d + a_1 g^(d-1) + ... + a_d return (d, [a_1, ..., a_d])."""
    tower = _division_tower(f, g)
    d = len(tower) - 1
    if d < 0 or tower[d] != 1:
        raise NonMonicError("f is not monic of a degree divisible by deg g")
    return d, [tower[d - i] if d - i < len(tower) else YPoly(f.nvars) for i in range(1, d + 1)]


def base_ladder(G: Sequence[YPoly], e_list: Optional[Sequence[int]] = None) -> list[int]:
    """Check deg g_(i+1) = e_i·deg g_i and return the e_i."""
    for g in G:
        if not g.is_monic():
            raise NonMonicError("every base must be monic")
        if g.degree < 1:
            raise DegreeError("every base must have y-degree at least 1")
    ladder = []
    for lower, upper in zip(G, G[1:]):
        if upper.degree % lower.degree:
            raise DegreeError(f"degree ladder violated: {lower.degree} does not divide {upper.degree}")
        ladder.append(upper.degree // lower.degree)
    if e_list is not None and list(e_list) != ladder:
        raise DegreeError(f"degree ladder {ladder} does not match {list(e_list)}")
    return ladder


def _multi_expand(f: YPoly, G: Sequence[YPoly]) -> dict[tuple[int, ...], YPoly]:
    if not G:
        return {(): f} if f else {}
    out = {}
    for j, coeff in enumerate(_division_tower(f, G[-1])):
        if not coeff:
            continue
        for theta, a in _multi_expand(coeff, G[:-1]).items():
            out[theta + (j,)] = a
    return out


def multi_adic_expand(f: YPoly, G: Sequence[YPoly], e_list: Optional[Sequence[int]] = None) -> AdicExpansion:
    """G-adic expansion with 0 <= θ_i < e_i for every base but the last."""
    G = tuple(G)
    if not G:
        raise DegreeError("multi_adic_expand needs at least one base")
    base_ladder(G, e_list)
    return AdicExpansion(G, _multi_expand(f, G))


def _check_root_degree(f: YPoly, d: int) -> int:
    if not f.is_monic():
        raise NonMonicError("approximate roots require a monic polynomial")
    n = f.degree
    if n < 1:
        raise DegreeError("approximate roots require y-degree at least 1")
    if d < 1 or n % d:
        raise DegreeError(f"{d} does not divide the degree {n}")
    return n


def tschirnhausen(f: YPoly, g: YPoly, d: int) -> YPoly:
    """τ_f(g) = g + a_1/d."""
    n = _check_root_degree(f, d)
    if not g.is_monic() or g.degree != n // d:
        raise DegreeError(f"base must be monic of degree {n // d}")
    _, coeffs = adic_coefficients(f, g)
    return g + coeffs[0] / d


def approximate_root(f: YPoly, d: int) -> YPoly:
    """App_d(f), by Tschirnhausen iteration from y^(n/d) + (a_1/d)·y^(n/d - 1)."""
    n = _check_root_degree(f, d)
    m = n // d
    nvars = f.nvars
    g = YPoly(nvars, {m: 1, m - 1: f.coeff(n - 1) / d})
    for step in range(n + 1):
        _, coeffs = adic_coefficients(f, g)
        if not coeffs[0]:
            logger.debug(f"App_{d} reached after {step} Tschirnhausen steps")
            return g
        g = g + coeffs[0] / d
    raise InvariantViolation(f"Tschirnhausen iteration for App_{d} did not stabilise in {n + 1} steps")
