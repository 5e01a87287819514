from logging import Logger

from helpers import W_NAMES, chain_json, fuel_of, max_chain_degree, ok_report, read_plane
from qolab.cli import Respond, error_report
from qolab.embedding import PLANE_NAMES, qo_property_decide
from qolab.parsing import format_laurent


def qo_property_callback(command: dict, respond: Respond, logger: Logger):
    try:
        D = read_plane(command)
        result = qo_property_decide(D, fuel_of(command), max_chain_degree())
        respond(
            ok_report(
                command,
                verdict=result.outcome,
                branch=result.branch,
                branch_label=result.branch_label,
                r=result.r,
                chain=chain_json(result.chain, PLANE_NAMES),
                steps=[
                    {"branch": step.branch, "branch_label": step.branch_label, "pair": [format_laurent(p, PLANE_NAMES) for p in step.pair], "r": step.r}
                    for step in result.steps
                ],
                image=format_laurent(result.image, W_NAMES),
                dominant=list(result.dominant) if result.dominant is not None else None,
            )
        )
    except Exception as e:
        logger.error(e)
        respond(error_report(command["command"], e))
