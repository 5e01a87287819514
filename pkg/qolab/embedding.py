"""Coordinate detection for quasi-ordinary polynomials and the plane q.o.-property decision.

Automorphisms are carried as chains of elementary substitutions.  Applying a
chain to p substitutes the maps one after another, so the result is p composed
with the maps in chain order; `images` gives the composite explicitly.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from sympy import Poly, QQ, symbols

from qolab.adic import adic_coefficients
from qolab.charseq import SemigroupPresentation, semigroup_generators, semigroup_member
from qolab.errors import (
    AlgebraicExtensionRequired,
    ChainBlowUp,
    DegreeError,
    InvariantViolation,
    NonMonicError,
    ZeroPolynomialError,
)
from qolab.irreducibility import (
    MEROMORPHIC,
    IrreducibilityReport,
    QOVerdict,
    irreducibility_test,
    is_quasi_ordinary,
)
from qolab.parsing import format_laurent, parse_laurent
from qolab.poly_core import (
    ExponentVec,
    LaurentPoly,
    YPoly,
    depress,
    discriminant_y,
    mero_involute,
    to_fraction,
    to_sympy_rational,
    unit_vec,
    vec_neg,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_CHAIN_DEGREE = 256
PLANE_NAMES = ("X", "Y")


def _lift(p: LaurentPoly, nvars: int) -> LaurentPoly:
    pad = (0,) * (nvars - p.nvars)
    return LaurentPoly(nvars, {exp + pad: c for exp, c in p.items()})


@dataclass(frozen=True)
class TranslateVar:
    """target ↦ scale·target + shift, with shift free of target."""

    target: int
    scale: Fraction
    shift: LaurentPoly

    def __post_init__(self):
        if not self.scale:
            raise DegreeError("translation with a zero scale is not invertible")
        if any(exp[self.target] for exp, _ in self.shift.items()):
            raise DegreeError("translation shift must not involve its target variable")

    def image(self) -> LaurentPoly:
        return LaurentPoly.variable(self.shift.nvars, self.target) * self.scale + self.shift

    def apply(self, p: LaurentPoly) -> LaurentPoly:
        return p.substitute(self.target, self.image())

    def inverse(self) -> "TranslateVar":
        return TranslateVar(self.target, 1 / self.scale, -self.shift / self.scale)

    def lift(self, nvars: int) -> "TranslateVar":
        return TranslateVar(self.target, self.scale, _lift(self.shift, nvars))

    def to_json(self, names: Sequence[str]) -> dict:
        return {"translate_var": names[self.target], "by": format_laurent(self.image(), names)}


@dataclass(frozen=True)
class Scale:
    var: int
    factor: Fraction
    nvars: int

    def __post_init__(self):
        if not self.factor:
            raise DegreeError("scaling by zero is not invertible")

    def apply(self, p: LaurentPoly) -> LaurentPoly:
        return p.substitute(self.var, LaurentPoly.variable(p.nvars, self.var) * self.factor)

    def inverse(self) -> "Scale":
        return Scale(self.var, 1 / self.factor, self.nvars)

    def lift(self, nvars: int) -> "Scale":
        return Scale(self.var, self.factor, nvars)

    def to_json(self, names: Sequence[str]) -> dict:
        return {"scale": names[self.var], "by": str(self.factor)}


@dataclass(frozen=True)
class Permute:
    """Variable i ↦ variable perm[i]."""

    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise DegreeError(f"{self.perm} is not a permutation")

    def apply(self, p: LaurentPoly) -> LaurentPoly:
        terms = {}
        for exp, c in p.items():
            moved = [0] * p.nvars
            for i, a in enumerate(exp):
                moved[self.perm[i]] += a
            terms[tuple(moved)] = c
        return LaurentPoly(p.nvars, terms)

    def inverse(self) -> "Permute":
        back = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            back[j] = i
        return Permute(tuple(back))

    def lift(self, nvars: int) -> "Permute":
        return Permute(self.perm + tuple(range(len(self.perm), nvars)))

    def to_json(self, names: Sequence[str]) -> dict:
        return {"permute": [names[j] for j in self.perm]}


ElementaryMap = Union[TranslateVar, Scale, Permute]


def translate(nvars: int, target: int, scale, shift: Optional[LaurentPoly] = None) -> Optional[ElementaryMap]:
    """The simplest elementary map for target ↦ scale·target + shift, or None for the identity."""
    scale = Fraction(scale)
    shift = shift if shift is not None else LaurentPoly.zero(nvars)
    if shift:
        return TranslateVar(target, scale, shift)
    if scale != 1:
        return Scale(target, scale, nvars)
    return None


def map_from_json(data: dict, names: Sequence[str]) -> ElementaryMap:
    nvars = len(names)
    if "translate_var" in data:
        target = list(names).index(data["translate_var"])
        image = parse_laurent(data["by"], names)
        scale = image.coeff(unit_vec(nvars, target))
        return TranslateVar(target, scale, image - LaurentPoly.variable(nvars, target) * scale)
    if "scale" in data:
        return Scale(list(names).index(data["scale"]), Fraction(data["by"]), nvars)
    if "permute" in data:
        return Permute(tuple(list(names).index(name) for name in data["permute"]))
    raise DegreeError(f"unknown elementary map {data}")


@dataclass(frozen=True)
class AutomorphismChain:
    maps: tuple[ElementaryMap, ...] = ()

    def __len__(self) -> int:
        return len(self.maps)

    def apply(self, p: LaurentPoly, max_degree: Optional[int] = DEFAULT_MAX_CHAIN_DEGREE) -> LaurentPoly:
        for step, m in enumerate(self.maps):
            p = m.apply(p)
            if max_degree is not None and p and p.max_degree() > max_degree:
                raise ChainBlowUp(f"degree {p.max_degree()} after map {step} exceeds the bound {max_degree}")
        return p

    def inverse(self) -> "AutomorphismChain":
        return AutomorphismChain(tuple(m.inverse() for m in reversed(self.maps)))

    def then(self, other: Union["AutomorphismChain", ElementaryMap, None]) -> "AutomorphismChain":
        if other is None:
            return self
        if isinstance(other, AutomorphismChain):
            return AutomorphismChain(self.maps + other.maps)
        return AutomorphismChain(self.maps + (other,))

    def lift(self, nvars: int) -> "AutomorphismChain":
        return AutomorphismChain(tuple(m.lift(nvars) for m in self.maps))

    def images(self, nvars: int) -> list[LaurentPoly]:
        """The composite map: what each variable is replaced by."""
        return [self.apply(LaurentPoly.variable(nvars, i), None) for i in range(nvars)]

    def to_json(self, names: Sequence[str]) -> list[dict]:
        return [m.to_json(names) for m in self.maps]

    @classmethod
    def from_json(cls, data: Sequence[dict], names: Sequence[str]) -> "AutomorphismChain":
        return cls(tuple(map_from_json(item, names) for item in data))


def verify_chain(chain: AutomorphismChain, f: YPoly, max_degree: Optional[int] = DEFAULT_MAX_CHAIN_DEGREE) -> YPoly:
    return YPoly.from_flat(chain.apply(f.to_flat(), max_degree))


# Coordinate detection


COORDINATE = "coordinate"
NOT_COORDINATE = "not_coordinate"
NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class CascadeStage:
    stage: int
    c: Fraction
    middle: tuple[Fraction, ...]
    order: ExponentVec
    witness: Optional[tuple[int, ...]]


@dataclass(frozen=True)
class EmbeddingResult:
    outcome: str
    reason: Optional[str] = None
    stage: Optional[int] = None
    k: Optional[int] = None
    chain: AutomorphismChain = field(default_factory=AutomorphismChain)
    image: Optional[YPoly] = None
    in_plane: Optional[bool] = None
    semigroup: Optional[SemigroupPresentation] = None
    criterion: Optional[IrreducibilityReport] = None
    qo: Optional[QOVerdict] = None
    stages: tuple[CascadeStage, ...] = ()

    @property
    def is_coordinate(self) -> bool:
        return self.outcome == COORDINATE


def _constant(c: YPoly) -> Optional[Fraction]:
    if not c:
        return Fraction(0)
    if c.degree == 0 and c.coeff(0).is_constant():
        return c.coeff(0).constant_term()
    return None


def _unit_index(v: ExponentVec) -> Optional[int]:
    if sorted(v) == [0] * (len(v) - 1) + [1]:
        return v.index(1)
    return None


def embedding_decide(f: YPoly, max_degree: Optional[int] = DEFAULT_MAX_CHAIN_DEGREE) -> EmbeddingResult:
    """Decide whether f is equivalent to a coordinate and build the automorphism."""
    if not f.is_monic():
        raise NonMonicError("embedding_decide requires a monic polynomial")
    if f.degree < 1:
        raise DegreeError("embedding_decide requires y-degree at least 1")
    e = f.nvars
    y = e
    g, shift = depress(f)
    chain = AutomorphismChain().then(translate(e + 1, y, 1, -_lift(shift, e + 1)) if shift else None)
    if g.degree == 1:
        return EmbeddingResult(COORDINATE, chain=chain, image=verify_chain(chain, f, max_degree), in_plane=True)

    qo = is_quasi_ordinary(mero_involute(g))
    if not qo.is_qo:
        return EmbeddingResult(NOT_APPLICABLE, "f is not quasi-ordinary at infinity", qo=qo)
    criterion = irreducibility_test(mero_involute(g), MEROMORPHIC)
    if not criterion.irreducible:
        verdict = criterion.verdict
        return EmbeddingResult(
            NOT_COORDINATE, f"reducible at infinity: {verdict.reason}", verdict.stage, criterion=criterion, qo=qo
        )
    h = criterion.h
    target = vec_neg(criterion.r[-1])
    index = _unit_index(target)
    if index is None:
        reason = f"-r_{h} = {target} is not a canonical unit vector"
        return EmbeddingResult(NOT_COORDINATE, reason, h, criterion=criterion, qo=qo)

    gamma = semigroup_generators(criterion.charseq, negate=True)
    roots = [YPoly.constant(e, LaurentPoly.variable(e, index))] + [mero_involute(G) for G in criterion.approx_roots]
    slot = [index if i % 2 == 0 else y for i in range(h + 2)]
    stages = []
    for i in range(1, h + 1):
        e_i = criterion.d[i - 1] // criterion.d[i]
        found, coeffs = adic_coefficients(roots[i + 1], roots[i])
        if found != e_i:
            raise InvariantViolation(f"g_{i + 1} has {found} powers of g_{i}, expected e_{i} = {e_i}")
        middle = [_constant(a) for a in coeffs[:-1]]
        if any(a is None for a in middle):
            raise InvariantViolation(f"stage {i}: a middle g_{i}-adic coefficient is not constant")
        last = coeffs[-1]
        lower = roots[i - 1]
        if i == 1:
            c = last.coeff(0).coeff(unit_vec(e, index)) if last.degree == 0 else Fraction(0)
        else:
            c = _constant(YPoly.constant(e, last.leading_coefficient)) if last.degree == lower.degree else Fraction(0)
        rest = _constant(last - lower * c) if c else None
        if not c or rest is None:
            reason = f"stage {i}: the last coefficient is not a nonzero multiple of g_{i - 1}"
            return EmbeddingResult(NOT_COORDINATE, reason, i, criterion=criterion, qo=qo)

        # g_(i+1) = P(g_i) + c·g_(i-1) with P monic of degree e_i and constant coefficients
        u, v = slot[i - 1], slot[i]
        var = LaurentPoly.variable(e + 1, v)
        P = var**e_i + rest
        for j, a in enumerate(middle, start=1):
            P = P + var ** (e_i - j) * a
        chain = chain.then(TranslateVar(u, 1 / c, -P / c))

        order = vec_neg(criterion.r[i - 1])
        try:
            witness = semigroup_member(order, gamma)
        except DegreeError:
            witness = None
        stages.append(CascadeStage(i, c, tuple(middle), order, witness))
        logger.debug(f"cascade stage {i}: c_{i} = {c}, middle {middle}")

    image = verify_chain(chain, f, max_degree)
    expected = YPoly.from_flat(LaurentPoly.variable(e + 1, slot[h + 1]))
    if image != expected:
        raise InvariantViolation(f"cascade automorphism maps f to {image!r}, not to a variable")
    in_plane = f.to_flat().uses_only([index, y])
    return EmbeddingResult(
        COORDINATE,
        k=index + 1,
        chain=chain,
        image=image,
        in_plane=in_plane,
        semigroup=gamma,
        criterion=criterion,
        qo=qo,
        stages=tuple(stages),
    )


# Plane polynomials


def _check_plane(P: LaurentPoly, what: str) -> None:
    if P.nvars != 2:
        raise DegreeError(f"{what} must be a polynomial in two variables")
    if any(a < 0 for exp, _ in P.items() for a in exp):
        raise DegreeError(f"{what} must not contain negative powers")


@dataclass(frozen=True)
class TameStep:
    slot: int
    c: Fraction
    k: int


@dataclass(frozen=True)
class TamePairResult:
    is_pair: bool
    chain: Optional[AutomorphismChain] = None
    steps: tuple[TameStep, ...] = ()
    stuck: Optional[tuple[LaurentPoly, LaurentPoly]] = None


def _leading_form(P: LaurentPoly) -> LaurentPoly:
    return P.homogeneous_component(P.max_degree())


def _linear_part(P: LaurentPoly) -> tuple[Fraction, Fraction, Fraction]:
    return P.coeff((1, 0)), P.coeff((0, 1)), P.constant_term()


def _affine_inverse(L1: LaurentPoly, L2: LaurentPoly) -> list[ElementaryMap]:
    """Substitutions expressing (X, Y) through Z1 = L1(X, Y), Z2 = L2(X, Y)."""
    a, b, e0 = _linear_part(L1)
    c, d, f0 = _linear_part(L2)
    det = a * d - b * c
    X, Y = LaurentPoly.variable(2, 0), LaurentPoly.variable(2, 1)
    if a:
        maps = [
            translate(2, 0, 1 / a, (-Y * b - e0) / a),
            translate(2, 1, a / det, (-X * c + c * e0 - a * f0) / det),
        ]
    else:
        # solve L1 for Y first; the slots end up swapped
        maps = [
            translate(2, 1, 1 / b, LaurentPoly.constant(2, -e0 / b)),
            translate(2, 0, 1 / c, ((Y - e0) * (-d / b) - f0) / c),
            Permute((1, 0)),
        ]
    return [m for m in maps if m is not None]


def tame_pair_reduce(P1: LaurentPoly, P2: LaurentPoly) -> TamePairResult:
    """Decide K[P1, P2] = K[X, Y] by leading-form elimination."""
    _check_plane(P1, "P1")
    _check_plane(P2, "P2")
    slots = [P1, P2]
    steps: list[TameStep] = []
    while True:
        if any(not s or s.max_degree() < 1 for s in slots):
            return TamePairResult(False, steps=tuple(steps), stuck=tuple(slots))
        degrees = [s.max_degree() for s in slots]
        if max(degrees) == 1:
            L1, L2 = slots
            a, b, _ = _linear_part(L1)
            c, d, _ = _linear_part(L2)
            if a * d - b * c == 0:
                return TamePairResult(False, steps=tuple(steps), stuck=tuple(slots))
            maps = _affine_inverse(L1, L2)
            for step in reversed(steps):
                other = LaurentPoly.variable(2, 1 - step.slot)
                maps.append(TranslateVar(step.slot, Fraction(1), -(other**step.k) * step.c))
            logger.debug(f"tame reduction finished after {len(steps)} steps")
            return TamePairResult(True, AutomorphismChain(tuple(maps)), tuple(steps))

        hi = 0 if degrees[0] >= degrees[1] else 1
        lo = 1 - hi
        if degrees[hi] % degrees[lo]:
            return TamePairResult(False, steps=tuple(steps), stuck=tuple(slots))
        k = degrees[hi] // degrees[lo]
        lead, power = _leading_form(slots[hi]), _leading_form(slots[lo]) ** k
        exp = power.support()[0]
        c = lead.coeff(exp) / power.coeff(exp)
        if not c or lead != power * c:
            return TamePairResult(False, steps=tuple(steps), stuck=tuple(slots))
        slots[hi] = slots[hi] - slots[lo] ** k * c
        steps.append(TameStep(hi, c, k))


@dataclass(frozen=True)
class FactorGroup:
    multiplicity: int
    degree: int
    rational_roots: tuple[Fraction, ...]


@dataclass(frozen=True)
class QuasiHomogFactors:
    r: int
    monomial: tuple[int, int]
    weights: tuple[int, int]
    groups: tuple[FactorGroup, ...]

    @property
    def irrational(self) -> bool:
        return any(len(g.rational_roots) < g.degree for g in self.groups)

    @property
    def multiplicities(self) -> list[int]:
        out = [self.monomial[0]] if self.monomial[0] else []
        out += [self.monomial[1]] if self.monomial[1] else []
        return out + [g.multiplicity for g in self.groups for _ in range(g.degree)]

    def explicit_factors(self) -> list[LaurentPoly]:
        """X, Y and X^q' − ρ·Y^p' for every root ρ, in ascending ρ."""
        if self.irrational:
            raise AlgebraicExtensionRequired("a quasi-homogeneous factor has an irrational coefficient")
        p, q = self.weights
        X, Y = LaurentPoly.variable(2, 0), LaurentPoly.variable(2, 1)
        out = [X] if self.monomial[0] else []
        out += [Y] if self.monomial[1] else []
        rhos = sorted(rho for g in self.groups for rho in g.rational_roots)
        return out + [X**q - Y**p * rho for rho in rhos]


def quasihomog_factor_count(P: LaurentPoly, weights: tuple[int, int]) -> QuasiHomogFactors:
    """Count the distinct irreducible factors of a quasi-homogeneous P over the algebraic closure."""
    _check_plane(P, "P")
    if not P:
        raise ZeroPolynomialError("factor count of the zero polynomial")
    p, q = weights
    if p < 1 or q < 1:
        raise DegreeError(f"weights {weights} must be positive")
    g = gcd(p, q)
    p, q = p // g, q // g
    if len({p * i + q * j for (i, j), _ in P.items()}) != 1:
        raise DegreeError(f"polynomial is not quasi-homogeneous for weights ({p}, {q})")

    a, b = P.min_exponent()
    z = symbols("z")
    R = Poly.from_dict({((i - a) // q,): to_sympy_rational(c) for (i, j), c in P.items()}, z, domain=QQ)
    groups = []
    for factor, k in R.sqf_list()[1]:
        if factor.degree() < 1:
            continue
        roots = tuple(sorted(to_fraction(rho) for rho in factor.ground_roots()))
        groups.append(FactorGroup(k, factor.degree(), roots))
    r = int(a > 0) + int(b > 0) + sum(group.degree for group in groups)
    return QuasiHomogFactors(r, (a, b), (p, q), tuple(groups))


@dataclass(frozen=True)
class PolygonEdge:
    start: tuple[int, int]
    end: tuple[int, int]
    terms: LaurentPoly

    @property
    def slope(self) -> Optional[Fraction]:
        di = self.end[0] - self.start[0]
        return Fraction(self.end[1] - self.start[1], di) if di else None

    @property
    def negative(self) -> bool:
        return self.slope is not None and self.slope < 0

    @property
    def weights(self) -> tuple[int, int]:
        """(p, q) with p·i + q·j constant along the edge."""
        di, dj = abs(self.end[0] - self.start[0]), abs(self.end[1] - self.start[1])
        g = gcd(di, dj)
        return dj // g, di // g


@dataclass(frozen=True)
class NewtonPolygon2D:
    points: tuple[tuple[int, int], ...]
    edges: tuple[PolygonEdge, ...]

    @property
    def negative_edges(self) -> list[PolygonEdge]:
        return [edge for edge in self.edges if edge.negative]


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _chain(points, keep) -> list:
    hull = []
    for p in points:
        while len(hull) >= 2 and not keep(_cross(hull[-2], hull[-1], p)):
            hull.pop()
        hull.append(p)
    return hull


def newton_polygon(D: LaurentPoly) -> NewtonPolygon2D:
    """Hull of the origin and the support of D, edges left to right."""
    _check_plane(D, "D")
    points = sorted({(0, 0)} | {tuple(exp) for exp, _ in D.items()})
    lower = _chain(points, lambda cross: cross > 0)
    upper = _chain(points, lambda cross: cross < 0)
    edges = []
    for hull in (lower, upper):
        for start, end in zip(hull, hull[1:]):
            terms = {
                exp: c
                for exp, c in D.items()
                if _cross(start, end, exp) == 0 and min(start, end) <= tuple(exp) <= max(start, end)
            }
            edges.append(PolygonEdge(start, end, LaurentPoly(2, terms)))
    return NewtonPolygon2D(tuple(points), tuple(edges))


HAS_QO = "has_qo"
NO_QO = "no_qo"
FUEL_EXHAUSTED = "fuel_exhausted"

# Newton polygon branches, numbered by case
DOMINANT_MONOMIAL = "1"
SEVERAL_EDGES = "2.1"
MANY_FACTORS = "2.2.1"
TWO_FACTORS_NOT_A_PAIR = "2.2.2"
ONE_FACTOR_NOT_A_PAIR = "2.2.3"
TWO_FACTOR_PAIR = "2.2.4"
ONE_FACTOR_PAIR = "2.2.5"

BRANCH_LABELS = {
    DOMINANT_MONOMIAL: "dominant_monomial",
    SEVERAL_EDGES: "several_edges",
    MANY_FACTORS: "many_factors",
    TWO_FACTORS_NOT_A_PAIR: "two_factors_not_a_pair",
    ONE_FACTOR_NOT_A_PAIR: "one_factor_not_a_pair",
    TWO_FACTOR_PAIR: "two_factor_pair",
    ONE_FACTOR_PAIR: "one_factor_pair",
}


@dataclass(frozen=True)
class QOStep:
    branch: str
    pair: tuple[LaurentPoly, LaurentPoly]
    r: int

    @property
    def branch_label(self) -> str:
        return BRANCH_LABELS[self.branch]


@dataclass(frozen=True)
class QOPropertyResult:
    outcome: str
    branch: str
    chain: AutomorphismChain
    image: LaurentPoly
    steps: tuple[QOStep, ...] = ()
    r: Optional[int] = None
    dominant: Optional[ExponentVec] = None

    @property
    def has_qo(self) -> bool:
        return self.outcome == HAS_QO

    @property
    def branch_label(self) -> str:
        return BRANCH_LABELS[self.branch]


def qo_property_decide(
    D: LaurentPoly, fuel: Optional[int] = None, max_degree: Optional[int] = DEFAULT_MAX_CHAIN_DEGREE
) -> QOPropertyResult:
    """Look for a plane automorphism making D(w^-1) a monomial times a unit."""
    if not D:
        raise ZeroPolynomialError("q.o. property of the zero polynomial")
    _check_plane(D, "D")
    fuel = D.max_degree() if fuel is None else fuel
    chain = AutomorphismChain()
    steps: list[QOStep] = []
    current = D
    while True:
        edges = newton_polygon(current).negative_edges
        if not edges:
            dominant = current.max_exponent()
            if not current.coeff(dominant):
                raise InvariantViolation(f"no negative edge but {dominant} is not in the support")
            return QOPropertyResult(HAS_QO, DOMINANT_MONOMIAL, chain, current, tuple(steps), dominant=dominant)
        if len(edges) >= 2:
            return QOPropertyResult(NO_QO, SEVERAL_EDGES, chain, current, tuple(steps))

        edge = edges[0]
        count = quasihomog_factor_count(edge.terms, edge.weights)
        logger.debug(f"edge {edge.start}-{edge.end}: {count.r} factors")
        if count.r >= 3:
            return QOPropertyResult(NO_QO, MANY_FACTORS, chain, current, tuple(steps), r=count.r)
        if count.irrational and count.weights != (1, 1):
            # two conjugate factors X^q − ρ·Y^p with p or q above 1 never form a pair
            return QOPropertyResult(NO_QO, TWO_FACTORS_NOT_A_PAIR, chain, current, tuple(steps), r=2)
        factors = count.explicit_factors()
        if count.r == 2:
            pair = (factors[0], factors[1])
            branch = TWO_FACTOR_PAIR
        else:
            p, q = count.weights
            if q == 1:
                pair = (factors[0], LaurentPoly.variable(2, 1))
            elif p == 1:
                pair = (factors[0], LaurentPoly.variable(2, 0))
            else:
                return QOPropertyResult(NO_QO, ONE_FACTOR_NOT_A_PAIR, chain, current, tuple(steps), r=1)
            branch = ONE_FACTOR_PAIR
        tame = tame_pair_reduce(*pair)
        if not tame.is_pair:
            if branch == ONE_FACTOR_PAIR:
                raise InvariantViolation(f"{pair} should form a coordinate pair")
            return QOPropertyResult(NO_QO, TWO_FACTORS_NOT_A_PAIR, chain, current, tuple(steps), r=2)
        if fuel <= 0:
            return QOPropertyResult(FUEL_EXHAUSTED, branch, chain, current, tuple(steps), r=count.r)
        fuel -= 1
        current = tame.chain.apply(current, max_degree)
        chain = chain.then(tame.chain)
        steps.append(QOStep(branch, pair, count.r))


ALMOST_QO = "almost_qo"
NOT_ALMOST_QO = "not_almost_qo"


@dataclass(frozen=True)
class AlmostQOResult:
    outcome: str
    qo_property: QOPropertyResult
    image: Optional[YPoly] = None
    verdict: Optional[QOVerdict] = None


def almost_qo_decide(
    f: YPoly, fuel: Optional[int] = None, max_degree: Optional[int] = DEFAULT_MAX_CHAIN_DEGREE
) -> AlmostQOResult:
    """For e = 2: an automorphism of the x-plane making f quasi-ordinary at infinity."""
    if f.nvars != 2:
        raise DegreeError("almost quasi-ordinarity is only decided for two x-variables")
    D = discriminant_y(f)
    if not D:
        raise ZeroPolynomialError("discriminant vanishes: the polynomial has a repeated root")
    result = qo_property_decide(D, fuel, max_degree)
    if result.outcome != HAS_QO:
        outcome = FUEL_EXHAUSTED if result.outcome == FUEL_EXHAUSTED else NOT_ALMOST_QO
        return AlmostQOResult(outcome, result)
    image = verify_chain(result.chain.lift(3), f, max_degree)
    verdict = is_quasi_ordinary(mero_involute(image))
    if not verdict.is_qo:
        raise InvariantViolation("the plane automorphism does not make f quasi-ordinary at infinity")
    return AlmostQOResult(ALMOST_QO, result, image, verdict)
