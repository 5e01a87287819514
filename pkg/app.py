import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from commands import register_commands
from helpers import format_report
from qolab.cli import EXIT_OK, App, build_parser, error_report, parse_argv, run_batch, run_command
from settings import get_settings

MANIFEST_PATH = Path(__file__).with_name("manifest.json")


def load_manifest() -> dict:
    with open(MANIFEST_PATH) as f:
        return json.load(f)


def build_app() -> App:
    app = App(load_manifest())
    register_commands(app)
    return app


def _emit(report, as_json: bool) -> None:
    print(report.dumps() if as_json else format_report(report))


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(level=settings.log_level, stream=sys.stderr)

    app = build_app()
    parser = build_parser(app.manifest)
    try:
        options = parse_argv(parser, sys.argv[1:] if argv is None else argv)
    except ValueError as e:
        report = error_report("qolab", e)
        print(report.dumps(), file=sys.stderr)
        return report.exit_code
    name = options.pop("command")

    if name == "batch":
        with open(options["file"]) as f:
            reports = run_batch(app, parser, f.readlines())
        for report in reports:
            print(report.dumps())
        return max((report.exit_code for report in reports), default=EXIT_OK)

    as_json = options.pop("json", False)
    report = run_command(app, name, options)
    _emit(report, as_json)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
