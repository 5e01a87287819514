from logging import Logger

from helpers import analysis_form, ok_report, precision_of, read_polynomial, series_json
from qolab.cli import Respond, error_report
from qolab.parsing import format_laurent
from qolab.roots_oracle import conjugate_product_check, expand_root


def expand_root_callback(command: dict, respond: Respond, logger: Logger):
    try:
        f, decl = read_polynomial(command)
        F, convention = analysis_form(f, command)
        precision = precision_of(command)
        root = expand_root(F, precision)
        param = root.parametrization
        t_names = tuple(name.replace("x", "t", 1) for name in decl.x_names)
        fields = {
            "verdict": "root" if root.full_degree else "low_degree_root",
            "convention": convention,
            "p": param.p,
            "precision": precision,
            "exact": param.exact,
            "series": series_json(param.series),
            "series_text": format_laurent(param.series, t_names),
            "m": [list(v) for v in root.m],
            "conjugates": root.conjugates,
        }
        if root.full_degree:
            fields["conjugate_product"] = conjugate_product_check(F, param)
        respond(ok_report(command, **fields))
    except Exception as e:
        logger.error(e)
        respond(error_report(command["command"], e))
