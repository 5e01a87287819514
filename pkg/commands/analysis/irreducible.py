from logging import Logger

from helpers import analysis_form, criterion_fields, ok_report, read_polynomial
from qolab.cli import Respond, error_report
from qolab.irreducibility import irreducibility_test


def irreducible_callback(command: dict, respond: Respond, logger: Logger):
    try:
        f, decl = read_polynomial(command)
        F, convention = analysis_form(f, command)
        report = irreducibility_test(F, convention)
        respond(ok_report(command, **criterion_fields(report, decl)))
    except Exception as e:
        logger.error(e)
        respond(error_report(command["command"], e))
