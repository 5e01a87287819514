from logging import Logger

from helpers import convention_of, declaration, ok_report, precision_of, read_polynomial
from qolab.cli import Respond, error_report
from qolab.parsing import parse_poly
from qolab.roots_oracle import intersection_orders


def orders_callback(command: dict, respond: Respond, logger: Logger):
    try:
        f, _ = read_polynomial(command)
        if not command.get("with"):
            raise ValueError("orders needs a second polynomial: --with \"<g>\"")
        g = parse_poly(command["with"], declaration(command))
        convention = convention_of(command)
        orders = intersection_orders(f, g, convention, precision_of(command))
        contact = None
        if orders.contact is not None:
            contact = "inf" if orders.contact.is_infinite else [str(a) for a in orders.contact.value]
        respond(
            ok_report(
                command,
                verdict="agree" if orders.agree else "disagree",
                convention=convention,
                against=command["with"],
                resultant=list(orders.resultant),
                root=list(orders.root),
                contact=contact,
                from_contact=list(orders.from_contact) if orders.from_contact is not None else None,
            )
        )
    except Exception as e:
        logger.error(e)
        respond(error_report(command["command"], e))
