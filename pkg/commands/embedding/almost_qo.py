from logging import Logger

from helpers import chain_json, fuel_of, max_chain_degree, ok_report, poly_text, read_polynomial
from qolab.cli import Respond, error_report
from qolab.embedding import almost_qo_decide


def almost_qo_callback(command: dict, respond: Respond, logger: Logger):
    try:
        f, decl = read_polynomial(command)
        result = almost_qo_decide(f, fuel_of(command), max_chain_degree())
        qo = result.qo_property
        fields = {"verdict": result.outcome, "branch": qo.branch, "branch_label": qo.branch_label, "chain": chain_json(qo.chain.lift(3), decl.names)}
        if result.image is not None:
            fields.update(image=poly_text(result.image, decl), N=list(result.verdict.N))
        respond(ok_report(command, **fields))
    except Exception as e:
        logger.error(e)
        respond(error_report(command["command"], e))
