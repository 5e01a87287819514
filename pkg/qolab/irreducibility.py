"""Quasi-ordinarity detection and the staged irreducibility criterion.

The criterion never expands a root.  It walks the approximate roots
G_1 = y, G_2 = App_(d_2)(F), ... and at each stage reads r_k off a formal
order, the next gcd D_(k+1) off the e×e minors, and checks straightness of the
next approximate root.  The first failed condition is returned as a verdict
with its stage; nothing here raises for a reducible input.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from qolab.adic import adic_coefficients, approximate_root
from qolab.charseq import CharSeq, char_exponents_from_r, minors_gcd, semigroup_generators
from qolab.errors import DegreeError, NonMonicError, NonUniqueMinimizer, NotQuasiOrdinaryError, NotSquarefreeError
from qolab.gnp import GNPData, Straightness, WeightSystem, formal_order, straightness_classify
from qolab.poly_core import (
    ExponentVec,
    LaurentPoly,
    YPoly,
    depress,
    discriminant_y,
    initial_data,
    mero_involute,
    unit_vec,
    vec_lt,
    vec_scale,
)

logger = logging.getLogger(__name__)

LOCAL = "local"
MEROMORPHIC = "meromorphic"


@dataclass(frozen=True)
class QOVerdict:
    is_qo: bool
    N: Optional[ExponentVec]
    discriminant: LaurentPoly
    offending_support: tuple[ExponentVec, ...] = ()
    """Support points realizing the coordinate minima when the corner is missing."""


def is_quasi_ordinary(f: YPoly) -> QOVerdict:
    disc = discriminant_y(f)
    if not disc:
        raise NotSquarefreeError("discriminant vanishes: the polynomial has a repeated root")
    corner = disc.min_exponent()
    if disc.coeff(corner):
        return QOVerdict(True, corner, disc)
    witnesses = sorted({exp for exp, _ in disc.items() if any(a == m for a, m in zip(exp, corner))})
    logger.debug(f"corner {corner} missing from the discriminant support")
    return QOVerdict(False, None, disc, tuple(witnesses))


@dataclass(frozen=True)
class Verdict:
    irreducible: bool
    stage: Optional[int] = None
    condition: Optional[str] = None
    reason: Optional[str] = None

    @property
    def label(self) -> str:
        return "irreducible" if self.irreducible else "reducible"


@dataclass(frozen=True)
class IrreducibilityReport:
    verdict: Verdict
    convention: str
    polynomial: YPoly
    shift: LaurentPoly
    r: tuple[ExponentVec, ...]
    D: tuple[int, ...]
    d: tuple[int, ...]
    approx_roots: tuple[YPoly, ...]
    gnp_evidence: tuple[GNPData, ...] = field(default=())
    charseq: Optional[CharSeq] = None

    @property
    def irreducible(self) -> bool:
        return self.verdict.irreducible

    @property
    def h(self) -> Optional[int]:
        return self.charseq.h if self.charseq else None


class _Stop(Exception):
    def __init__(self, stage: int, condition: str, reason: str):
        super().__init__(reason)
        self.verdict = Verdict(False, stage, condition, reason)


class _Criterion:
    """Mutable state of one run; `run` returns the report."""

    def __init__(self, F: YPoly, convention: str, shift: LaurentPoly):
        self.F = F
        self.convention = convention
        self.shift = shift
        self.n = F.degree
        self.e = F.nvars
        self.roots: list[YPoly] = [YPoly.y(self.e)]
        self.r: list[ExponentVec] = []
        self.D: list[int] = [self.n**self.e]
        self.d: list[int] = [self.n]
        self.evidence: list[GNPData] = []

    def weights(self, k: int) -> WeightSystem:
        """(n/d_k)·e_i together with r_j/d_k for j < k."""
        d_k = self.d[k - 1]
        r0 = [unit_vec(self.e, i, self.n // d_k) for i in range(self.e)]
        scaled = []
        for j, r_j in enumerate(self.r[: k - 1], start=1):
            if any(a % d_k for a in r_j):
                raise _Stop(k, "weights", f"r_{j} = {r_j} is not divisible by d_{k} = {d_k}")
            scaled.append(tuple(a // d_k for a in r_j))
        return WeightSystem.of(r0, scaled)

    def straight(self, k: int, G: YPoly, what: str) -> None:
        w = self.weights(k)
        base = self.roots[k - 2]
        d = self.d[k - 2] // self.d[k - 1]
        try:
            gnp = straightness_classify(G, w, self.roots[: k - 1], base, d)
        except NonUniqueMinimizer as e:
            raise _Stop(k, "straightness", f"{what}: {e}") from e
        self.evidence.append(gnp)
        if gnp.classification != Straightness.STRICTLY_STRAIGHT:
            raise _Stop(k, "straightness", f"{what} is {gnp.classification.value}, not strictly straight")

    def next_r(self, k: int) -> ExponentVec:
        if k == 1:
            a_n = self.F.coeff(0)
            if not a_n:
                raise _Stop(1, "lattice", "constant coefficient vanishes: y divides F")
            return initial_data(a_n).exp
        _, coeffs = adic_coefficients(self.F, self.roots[k - 1])
        beta = coeffs[-1]
        if not beta:
            raise _Stop(k, "lattice", f"last G_{k}-adic coefficient vanishes: G_{k} divides F")
        try:
            return formal_order(self.weights(k), self.roots[: k - 1], beta)
        except NonUniqueMinimizer as e:
            raise _Stop(k, "lattice", f"formal order of the last coefficient is ambiguous: {e}") from e

    def run(self) -> int:
        base = self.n ** (self.e - 1)
        k = 1
        while True:
            if k >= 2:
                self.straight(k, self.roots[k - 1], f"G_{k}")
            r_k = self.next_r(k)
            self.r.append(r_k)
            D_next = minors_gcd(self.n, self.e, self.r)
            logger.debug(f"stage {k}: r_{k} = {r_k}, D_{k + 1} = {D_next}")
            if D_next == self.D[-1]:
                raise _Stop(k, "lattice", f"gcd sequence stalls: D_{k + 1} = D_{k} = {D_next}")
            if D_next % base:
                raise _Stop(k, "lattice", f"D_{k + 1} = {D_next} is not divisible by n^(e-1) = {base}")
            self.D.append(D_next)
            self.d.append(D_next // base)
            if k >= 2:
                lower = vec_scale(self.r[k - 2], self.d[k - 2])
                upper = vec_scale(self.r[k - 1], self.d[k - 1])
                if not vec_lt(lower, upper):
                    raise _Stop(k, "ordering", f"r_{k - 1}·d_{k - 1} = {lower} is not below r_{k}·d_{k} = {upper}")
            if self.d[-1] == 1:
                return k
            self.roots.append(approximate_root(self.F, self.d[-1]))
            k += 1

    def report(self, verdict: Verdict, charseq: Optional[CharSeq] = None) -> IrreducibilityReport:
        roots = self.roots + [self.F] if verdict.irreducible else self.roots
        return IrreducibilityReport(
            verdict,
            self.convention,
            self.F,
            self.shift,
            tuple(self.r),
            tuple(self.D),
            tuple(self.d),
            tuple(roots),
            tuple(self.evidence),
            charseq,
        )


def irreducibility_test(F: YPoly, convention: str = LOCAL) -> IrreducibilityReport:
    """Decide irreducibility of a quasi-ordinary F without expanding a root."""
    if not F.is_monic():
        raise NonMonicError("irreducibility_test requires a monic polynomial")
    if F.degree < 1:
        raise DegreeError("irreducibility_test requires y-degree at least 1")
    F, shift = depress(F)
    qo = is_quasi_ordinary(F)
    if not qo.is_qo:
        raise NotQuasiOrdinaryError(f"discriminant is not a monomial times a unit (offending support {qo.offending_support})")

    state = _Criterion(F, convention, shift)
    if state.n == 1:
        # App_1(F) = F = y after depression
        state.roots = []
        return state.report(Verdict(True), CharSeq(1, F.nvars, (), (), (1,), (1,), ()))
    try:
        h = state.run()
        state.straight(h + 1, F, "F")
    except _Stop as stop:
        logger.debug(f"reducible at stage {stop.verdict.stage}: {stop.verdict.reason}")
        return state.report(stop.verdict)

    e_seq = tuple(state.d[i] // state.d[i + 1] for i in range(h))
    m = char_exponents_from_r(state.r, e_seq)
    charseq = CharSeq(state.n, F.nvars, tuple(m), tuple(state.r), tuple(state.D), tuple(state.d), e_seq)
    return state.report(Verdict(True), charseq)


@dataclass(frozen=True)
class FamilyMember:
    value: Fraction
    irreducible: bool
    same_semigroup: bool
    same_approx_roots: bool
    report: IrreducibilityReport

    @property
    def holds(self) -> bool:
        return self.irreducible and self.same_semigroup and self.same_approx_roots


@dataclass(frozen=True)
class FamilyReport:
    base: IrreducibilityReport
    members: tuple[FamilyMember, ...]

    @property
    def holds(self) -> bool:
        return self.base.irreducible and all(member.holds for member in self.members)


def family_invariance(f: YPoly, lambdas: Sequence) -> FamilyReport:
    """Rerun the criterion on F − λ, F = mero_involute(f), against F itself."""
    F = mero_involute(f)
    base = irreducibility_test(F, MEROMORPHIC)
    if not base.irreducible:
        logger.warning(f"F is reducible ({base.verdict.reason}); family invariance does not apply")
        return FamilyReport(base, ())
    h = base.h
    generators = semigroup_generators(base.charseq).generators
    members = []
    for value in lambdas:
        value = Fraction(value)
        report = irreducibility_test(F - value, MEROMORPHIC)
        same_semigroup = report.irreducible and semigroup_generators(report.charseq).generators == generators
        same_roots = report.approx_roots[:h] == base.approx_roots[:h]
        logger.debug(f"λ = {value}: semigroup {same_semigroup}, approximate roots {same_roots}")
        members.append(FamilyMember(value, report.irreducible, same_semigroup, same_roots, report))
    return FamilyReport(base, tuple(members))
