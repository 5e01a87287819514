from logging import Logger

from helpers import chain_json, max_chain_degree, ok_report, poly_text, read_polynomial, semigroup_json
from qolab.cli import Respond, error_report
from qolab.embedding import embedding_decide


def coordinate_callback(command: dict, respond: Respond, logger: Logger):
    """Is f equivalent to a coordinate?  On success the chain maps f to a single variable."""
    try:
        f, decl = read_polynomial(command)
        result = embedding_decide(f, max_chain_degree())
        fields = {"verdict": result.outcome, "reason": result.reason, "stage": result.stage}
        if result.criterion is not None:
            fields["r"] = [list(v) for v in result.criterion.r]
        if result.is_coordinate:
            fields.update(
                k=result.k,
                chain=chain_json(result.chain, decl.names),
                image=poly_text(result.image, decl),
                in_plane=result.in_plane,
                stages=[
                    {"stage": s.stage, "c": s.c, "middle": list(s.middle), "order": list(s.order), "witness": s.witness}
                    for s in result.stages
                ],
            )
            if result.semigroup is not None:
                fields["semigroup"] = semigroup_json(result.semigroup)
        respond(ok_report(command, **fields))
    except Exception as e:
        logger.error(e)
        respond(error_report(command["command"], e))
