from logging import Logger

from helpers import analysis_form, ok_report, poly_text, read_polynomial
from qolab.adic import approximate_root
from qolab.cli import Respond, error_report


def approx_roots_callback(command: dict, respond: Respond, logger: Logger):
    try:
        f, decl = read_polynomial(command)
        F, convention = analysis_form(f, command)
        n = F.degree
        degrees = [command["d"]] if command.get("d") else [d for d in range(1, n + 1) if n % d == 0]
        roots = []
        for d in degrees:
            g = approximate_root(F, d)
            remainder = F - g**d
            roots.append(
                {
                    "d": d,
                    "root": poly_text(g, decl),
                    "degree": g.degree,
                    "remainder_degree": remainder.degree,
                    "bound_holds": remainder.degree < n - n // d,
                }
            )
        respond(ok_report(command, convention=convention, n=n, roots=roots))
    except Exception as e:
        logger.error(e)
        respond(error_report(command["command"], e))
