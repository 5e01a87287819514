from logging import Logger

from helpers import analysis_form, ok_report, read_polynomial
from qolab.cli import Respond, error_report
from qolab.irreducibility import is_quasi_ordinary
from qolab.parsing import format_laurent


def qo_check_callback(command: dict, respond: Respond, logger: Logger):
    try:
        f, decl = read_polynomial(command)
        F, convention = analysis_form(f, command)
        verdict = is_quasi_ordinary(F)
        respond(
            ok_report(
                command,
                verdict="quasi_ordinary" if verdict.is_qo else "not_quasi_ordinary",
                convention=convention,
                discriminant=format_laurent(verdict.discriminant, decl.x_names),
                N=list(verdict.N) if verdict.is_qo else None,
                offending_support=[list(v) for v in verdict.offending_support],
            )
        )
    except Exception as e:
        logger.error(e)
        respond(error_report(command["command"], e))
