from logging import Logger

from helpers import ok_report, parse_values, poly_text, read_polynomial
from qolab.cli import Respond, error_report
from qolab.irreducibility import MEROMORPHIC, family_invariance


def family_callback(command: dict, respond: Respond, logger: Logger):
    try:
        f, decl = read_polynomial(command)
        family = family_invariance(f, parse_values(command.get("lambdas") or "1"))
        base = family.base
        members = [
            {
                "lambda": member.value,
                "irreducible": member.irreducible,
                "same_semigroup": member.same_semigroup,
                "same_approx_roots": member.same_approx_roots,
                "r": [list(v) for v in member.report.r],
            }
            for member in family.members
        ]
        respond(
            ok_report(
                command,
                verdict="invariant" if family.holds else "not_invariant",
                convention=MEROMORPHIC,
                base_irreducible=base.irreducible,
                r=[list(v) for v in base.r],
                approx_roots=[poly_text(g, decl) for g in base.approx_roots],
                members=members,
            )
        )
    except Exception as e:
        logger.error(e)
        respond(error_report(command["command"], e))
