"""Characteristic sequences, lattice membership, contact orders and semigroups."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import TYPE_CHECKING, Optional, Sequence

from sympy import Matrix, eye, igcd

from qolab.errors import (
    DegreeError,
    DegreeInconsistency,
    InsufficientPrecision,
    InvariantViolation,
    NotCharacteristicExponent,
)
from qolab.poly_core import ExponentVec, initial_data, unit_vec, vec_add, vec_le, vec_lt, vec_scale, vec_sub

if TYPE_CHECKING:
    from qolab.roots_oracle import Parametrization

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CharSeq:
    n: int
    e: int
    m: tuple[ExponentVec, ...]
    r: tuple[ExponentVec, ...]
    D: tuple[int, ...]
    d: tuple[int, ...]
    e_seq: tuple[int, ...]

    @property
    def h(self) -> int:
        return len(self.m)


@dataclass(frozen=True)
class LatticeMembership:
    member: bool
    witness: Optional[tuple[int, ...]] = None
    """Coefficients over the generators n·e_1, ..., n·e_e, m_1, ..., m_k."""


@dataclass(frozen=True)
class ContactValue:
    value: Optional[tuple[Fraction, ...]]

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @classmethod
    def infinity(cls) -> "ContactValue":
        return cls(None)


@dataclass(frozen=True)
class ContactOrder:
    value: ExponentVec
    q: int
    divisibility: Optional[bool] = None


@dataclass(frozen=True)
class SemigroupPresentation:
    generators: tuple[ExponentVec, ...]
    notes: tuple[str, ...] = field(default=())


def lattice_generators(n: int, e: int, m_prefix: Sequence[ExponentVec]) -> list[ExponentVec]:
    return [unit_vec(e, i, n) for i in range(e)] + [tuple(v) for v in m_prefix]


def _column_echelon(columns: Sequence[ExponentVec]) -> tuple[Matrix, Matrix, list[tuple[int, int]]]:
    """Integer column echelon form A·U with the unimodular U tracked."""
    A = Matrix.hstack(*[Matrix(list(col)) for col in columns])
    U = eye(A.cols)
    pivots = []
    col = 0
    for row in range(A.rows):
        if col >= A.cols:
            break
        while True:
            nonzero = [j for j in range(col, A.cols) if A[row, j] != 0]
            if not nonzero:
                break
            j = min(nonzero, key=lambda k: abs(A[row, k]))
            if j != col:
                A.col_swap(col, j)
                U.col_swap(col, j)
            reduced = True
            for j in range(col + 1, A.cols):
                if A[row, j] != 0:
                    q = A[row, j] // A[row, col]
                    A.col_op(j, lambda val, i: val - q * A[i, col])
                    U.col_op(j, lambda val, i: val - q * U[i, col])
                    if A[row, j] != 0:
                        reduced = False
            if reduced:
                break
        if A[row, col] != 0:
            pivots.append((row, col))
            col += 1
    return A, U, pivots


def lattice_member(v: ExponentVec, n: int, m_prefix: Sequence[ExponentVec]) -> LatticeMembership:
    """Decide v ∈ (nZ)^e + Σ m_j Z, with an integer witness on success."""
    e = len(v)
    gens = lattice_generators(n, e, m_prefix)
    A, U, pivots = _column_echelon(gens)
    pivot_at = dict(pivots)
    rest = list(v)
    coeffs = [0] * len(gens)
    for row in range(e):
        if row in pivot_at:
            col = pivot_at[row]
            if rest[row] % A[row, col]:
                return LatticeMembership(False)
            c = rest[row] // A[row, col]
            coeffs[col] = c
            rest = [rest[i] - c * A[i, col] for i in range(e)]
        elif rest[row]:
            return LatticeMembership(False)
    witness = U * Matrix(coeffs)
    return LatticeMembership(True, tuple(int(x) for x in witness))


def minors_gcd(n: int, e: int, m_prefix: Sequence[ExponentVec]) -> int:
    """gcd of the e×e minors of (n·I | m_1ᵀ ... m_kᵀ)."""
    columns = lattice_generators(n, e, m_prefix)
    g = 0
    for chosen in combinations(columns, e):
        g = igcd(g, Matrix.hstack(*[Matrix(list(c)) for c in chosen]).det())
    return int(abs(g))


def r_from_m(m: Sequence[ExponentVec], e_seq: Sequence[int]) -> list[ExponentVec]:
    r = [tuple(m[0])] if m else []
    for k in range(1, len(m)):
        r.append(vec_add(vec_scale(r[k - 1], e_seq[k - 1]), vec_sub(m[k], m[k - 1])))
    return r


def char_exponents_from_r(r: Sequence[ExponentVec], e_seq: Sequence[int]) -> list[ExponentVec]:
    """Inverse of the r-recursion."""
    m = [tuple(r[0])] if r else []
    for k in range(1, len(r)):
        m.append(vec_add(vec_sub(r[k], vec_scale(r[k - 1], e_seq[k - 1])), m[k - 1]))
    return m


def build_char_sequences(n: int, e: int, m: Sequence[ExponentVec]) -> CharSeq:
    if n < 1 or e < 1:
        raise DegreeError("n and e must be positive")
    m = [tuple(int(a) for a in v) for v in m]
    for v in m:
        if len(v) != e:
            raise DegreeError(f"exponent {v} does not have {e} entries")
    for earlier, later in zip(m, m[1:]):
        if not vec_lt(earlier, later):
            raise DegreeError(f"characteristic exponents must increase coordinate-wise: {earlier} then {later}")

    D = [n**e]
    for i, v in enumerate(m):
        if lattice_member(v, n, m[:i]).member:
            raise NotCharacteristicExponent(f"{v} lies in the lattice of the previous exponents")
        D.append(minors_gcd(n, e, m[: i + 1]))
    base = n ** (e - 1)
    if D[-1] != base:
        raise DegreeInconsistency(f"final lattice index {D[-1]} differs from n^(e-1) = {base}")
    d = [value // base for value in D]
    e_seq = [d[i] // d[i + 1] for i in range(len(m))]
    return CharSeq(n, e, tuple(m), tuple(r_from_m(m, e_seq)), tuple(D), tuple(d), tuple(e_seq))


def contact(phi: "Parametrization", psi: "Parametrization") -> ContactValue:
    """(1/pq)·exp(Y(t^q) − Z(t^p))."""
    p, q = phi.p, psi.p
    diff = phi.series.scale_exponents(q) - psi.series.scale_exponents(p)
    bound = min(phi.guaranteed_degree * q, psi.guaranteed_degree * p)
    if not diff:
        if phi.exact and psi.exact:
            return ContactValue.infinity()
        raise InsufficientPrecision("parametrizations agree up to the available precision")
    exp = initial_data(diff).exp
    if sum(exp) > bound:
        raise InsufficientPrecision(f"leading difference at degree {sum(exp)} exceeds the guaranteed degree {bound}")
    return ContactValue(tuple(Fraction(a, p * q) for a in exp))


def _integral(values, what: str) -> ExponentVec:
    values = tuple(Fraction(a) for a in values)
    if any(a.denominator != 1 for a in values):
        raise InvariantViolation(f"fractional {what} {values}: inconsistent contact data")
    return tuple(int(a) for a in values)


def order_from_contact(cs: CharSeq, m: int, c: ContactValue) -> ContactOrder:
    """Intersection order of f with a branch of degree m from their contact."""
    if m < 1:
        raise DegreeError("branch degree must be positive")
    if c.is_infinite:
        raise InvariantViolation("infinite contact has no finite intersection order")
    n = cs.n
    nc = tuple(n * a for a in c.value)
    q = sum(1 for mj in cs.m if vec_le(mj, nc))
    if q == 0:
        return ContactOrder(_integral((n * m * a for a in c.value), "order"), 0)

    ncz = _integral(nc, "n·c")
    r_q, m_q = cs.r[q - 1], cs.m[q - 1]
    d_q, d_next = cs.d[q - 1], cs.d[q]
    raw = vec_add(vec_scale(r_q, d_q), vec_scale(vec_sub(ncz, m_q), d_next))
    value = _integral((Fraction(a * m, n) for a in raw), "order")

    divisibility = None
    if ncz != m_q and lattice_member(ncz, n, cs.m[:q]).member and not lattice_member(ncz, n, cs.m[: q - 1]).member:
        divisibility = m % (n // d_next) == 0
    return ContactOrder(value, q, divisibility)


def semigroup_generators(cs: CharSeq, k: Optional[int] = None, negate: bool = False) -> SemigroupPresentation:
    """Full semigroup (k=None) or the one of App_(d_k), 1 <= k <= h+1."""
    sign = -1 if negate else 1
    if k is None:
        canonical = [unit_vec(cs.e, i, cs.n) for i in range(cs.e)]
        return SemigroupPresentation(tuple(canonical + [vec_scale(r, sign) for r in cs.r]))

    if not 1 <= k <= cs.h + 1:
        raise DegreeError(f"approximate-root index {k} outside 1..{cs.h + 1}")
    d_k = cs.d[k - 1]
    gens = [unit_vec(cs.e, i, cs.n // d_k) for i in range(cs.e)]
    for r in cs.r[: k - 1]:
        if any(a % d_k for a in r):
            raise DegreeError(f"{r} is not divisible by d_{k} = {d_k}")
        gens.append(tuple(sign * a // d_k for a in r))
    note = f"approximate-root generators divide r_1..r_{k - 1} by d_{k} = {d_k}"
    return SemigroupPresentation(tuple(gens), (note,))


def semigroup_member(v: ExponentVec, gens: SemigroupPresentation) -> Optional[tuple[int, ...]]:
    """Nonnegative integer combination of the generators reaching v, or None."""
    generators = [tuple(g) for g in gens.generators]
    for g in generators:
        if any(a < 0 for a in g):
            raise DegreeError(f"generator {g} lies outside N^e")
    v = tuple(v)
    if any(a < 0 for a in v):
        return None
    used = [i for i, g in enumerate(generators) if any(g)]

    @lru_cache(maxsize=None)
    def search(i: int, rest: ExponentVec) -> Optional[tuple[int, ...]]:
        if not any(rest):
            return (0,) * (len(used) - i)
        if i == len(used):
            return None
        g = generators[used[i]]
        bound = min(a // b for a, b in zip(rest, g) if b > 0)
        for count in range(bound, -1, -1):
            found = search(i + 1, vec_sub(rest, vec_scale(g, count)))
            if found is not None:
                return (count,) + found
        return None

    counts = search(0, v)
    if counts is None:
        return None
    witness = [0] * len(generators)
    for i, count in zip(used, counts):
        witness[i] = count
    return tuple(witness)
