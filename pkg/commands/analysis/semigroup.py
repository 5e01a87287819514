from logging import Logger

from helpers import analysis_form, ok_report, parse_vector, read_polynomial, semigroup_json
from qolab.charseq import semigroup_generators, semigroup_member
from qolab.cli import Respond, error_report
from qolab.irreducibility import MEROMORPHIC, irreducibility_test


def semigroup_callback(command: dict, respond: Respond, logger: Logger):
    """Generators n·e_i, r_1..r_h (negated at infinity), optionally for App_(d_k) and with a membership query."""
    try:
        f, _ = read_polynomial(command)
        F, convention = analysis_form(f, command)
        report = irreducibility_test(F, convention)
        if not report.irreducible:
            respond(ok_report(command, verdict="reducible", convention=convention, reason=report.verdict.reason))
            return
        k = command.get("k")
        presentation = semigroup_generators(report.charseq, k, negate=convention == MEROMORPHIC)
        fields = {"verdict": "irreducible", "convention": convention, "k": k, **semigroup_json(presentation)}
        if command.get("member"):
            v = parse_vector(command["member"])
            witness = semigroup_member(v, presentation)
            fields["member"] = {"value": list(v), "in_semigroup": witness is not None, "witness": witness}
        respond(ok_report(command, **fields))
    except Exception as e:
        logger.error(e)
        respond(error_report(command["command"], e))
