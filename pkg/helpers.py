"""Helper functions shared by the command callbacks: input parsing, report building and text output."""

import logging
from fractions import Fraction
from typing import Optional, Sequence

from qolab.charseq import CharSeq, SemigroupPresentation
from qolab.cli import Report
from qolab.embedding import AutomorphismChain
from qolab.gnp import GNPData
from qolab.irreducibility import LOCAL, MEROMORPHIC, IrreducibilityReport
from qolab.parsing import VariableDecl, format_laurent, format_ypoly, parse_laurent, parse_poly
from qolab.poly_core import ExponentVec, LaurentPoly, YPoly, mero_involute
from settings import get_settings

logger = logging.getLogger(__name__)

W_NAMES = ("w1", "w2")


def declaration(command: dict) -> VariableDecl:
    """Variables x1..xe, y for the --vars option (x, y when e = 1)."""
    return VariableDecl.default(int(command.get("vars") or 1))


def read_polynomial(command: dict) -> tuple[YPoly, VariableDecl]:
    decl = declaration(command)
    return parse_poly(command["polynomial"], decl), decl


def read_plane(command: dict) -> LaurentPoly:
    """A polynomial in X and Y."""
    return parse_laurent(command["polynomial"], VariableDecl.plane().names)


def convention_of(command: dict) -> str:
    return MEROMORPHIC if command.get("convention") in ("mero", MEROMORPHIC) else LOCAL


def analysis_form(f: YPoly, command: dict) -> tuple[YPoly, str]:
    """f itself (local) or F = f(x^-1, y) (meromorphic)."""
    convention = convention_of(command)
    return (mero_involute(f) if convention == MEROMORPHIC else f), convention


def precision_of(command: dict) -> int:
    precision = command.get("precision")
    return get_settings().precision if precision is None else int(precision)


def fuel_of(command: dict) -> Optional[int]:
    fuel = command.get("fuel")
    if fuel is None or str(fuel).lower() == "auto":
        return get_settings().fuel
    return int(fuel)


def max_chain_degree() -> int:
    return get_settings().max_chain_degree


def parse_vector(text: str) -> ExponentVec:
    """'3,2' -> (3, 2)."""
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}")


def parse_values(text: str) -> list[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"expected comma-separated rationals, got {text!r}")


def poly_text(f: YPoly, decl: VariableDecl) -> str:
    return format_ypoly(f, decl)


def series_json(p: LaurentPoly) -> list[dict]:
    return [{"exp": list(exp), "coeff": p.coeff(exp)} for exp in p.support()]


def chain_json(chain: AutomorphismChain, names: Sequence[str]) -> list[dict]:
    return chain.to_json(names)


def charseq_json(cs: CharSeq) -> dict:
    return {
        "n": cs.n,
        "e": cs.e,
        "h": cs.h,
        "m": [list(v) for v in cs.m],
        "r": [list(v) for v in cs.r],
        "D": list(cs.D),
        "d": list(cs.d),
        "e_seq": list(cs.e_seq),
    }


def gnp_json(data: GNPData) -> dict:
    return {
        "classification": data.classification.value,
        "base_order": list(data.base_order),
        "d": data.d,
        "points": [{"k": p.k, "order": list(p.order), "base_part": list(p.base_part)} for p in data.points],
    }


def semigroup_json(presentation: SemigroupPresentation) -> dict:
    return {"generators": [list(g) for g in presentation.generators], "notes": list(presentation.notes)}


def criterion_fields(report: IrreducibilityReport, decl: VariableDecl) -> dict:
    """Verdict, sequences and evidence of an irreducibility run."""
    verdict = report.verdict
    fields = {
        "verdict": verdict.label,
        "convention": report.convention,
        "polynomial": poly_text(report.polynomial, decl),
        "shift": format_laurent(report.shift, decl.x_names),
        "r": [list(v) for v in report.r],
        "D": list(report.D),
        "d": list(report.d),
        "approx_roots": [poly_text(g, decl) for g in report.approx_roots],
        "gnp_evidence": [gnp_json(data) for data in report.gnp_evidence],
    }
    if verdict.irreducible:
        fields["charseq"] = charseq_json(report.charseq)
    else:
        fields.update(stage=verdict.stage, condition=verdict.condition, reason=verdict.reason)
    return fields


def ok_report(command: dict, **fields) -> Report:
    echo = {"input": command.get("polynomial")}
    if command.get("vars") is not None:
        echo["vars"] = int(command["vars"])
    return Report(command["command"], "ok", {**echo, **fields})


def _format_value(value) -> str:
    if isinstance(value, list) and value and isinstance(value[0], dict):
        return "\n" + "\n".join(f"  - {_format_value(item).strip()}" for item in value)
    if isinstance(value, dict):
        return ", ".join(f"{k}={_format_value(v)}" for k, v in value.items())
    if isinstance(value, list):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    return str(value)


def format_report(report: Report) -> str:
    """Human-readable summary, one field per line."""
    data = report.to_json()
    lines = [f"{data.pop('command')}: {data.pop('status')}"]
    data.pop("gnp_evidence", None)
    for key, value in data.items():
        if value is None or value == []:
            continue
        lines.append(f"{key}: {_format_value(value)}")
    return "\n".join(lines)
