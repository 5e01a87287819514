"""Command registry, reports and the argparse front end."""

import argparse
import json
import logging
import shlex
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from logging import Logger
from typing import Callable, Optional, Sequence

from qolab.errors import ParseError, QolabError

logger = logging.getLogger(__name__)

INT64_MIN, INT64_MAX = -(2**63), 2**63 - 1

EXIT_OK = 0
EXIT_ANALYSIS_ERROR = 1
EXIT_USAGE_ERROR = 2


@dataclass
class Report:
    command: str
    status: str = "ok"
    fields: dict = field(default_factory=dict)
    error: Optional[dict] = None
    exit_code: int = EXIT_OK

    def to_json(self) -> dict:
        out = {"command": self.command, "status": self.status}
        out.update(self.fields)
        if self.error is not None:
            out["error"] = self.error
        return jsonable(out)

    def dumps(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_json(), indent=indent)


def error_report(name: str, exc: BaseException, fields: Optional[dict] = None) -> Report:
    """Wrap an exception; parse and usage problems exit with 2, analysis failures with 1."""
    usage = isinstance(exc, (ParseError, ValueError))
    error = {"type": type(exc).__name__, "message": str(exc)}
    if getattr(exc, "position", None) is not None:
        error["position"] = exc.position
    if getattr(exc, "found", None):
        error["found"] = exc.found
    if getattr(exc, "witnesses", None):
        error["witnesses"] = exc.witnesses
    if not usage and not isinstance(exc, QolabError):
        error["internal"] = True
    return Report(name, "error", dict(fields or {}), error, EXIT_USAGE_ERROR if usage else EXIT_ANALYSIS_ERROR)


def jsonable(value):
    """Plain JSON data; integers outside the signed 64-bit range become decimal strings."""
    if isinstance(value, bool) or value is None or isinstance(value, (str, float)):
        return value
    if isinstance(value, int):
        return value if INT64_MIN <= value <= INT64_MAX else str(value)
    if isinstance(value, Fraction):
        return jsonable(value.numerator) if value.denominator == 1 else str(value)
    if isinstance(value, Enum):
        return jsonable(value.value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


class Respond:
    """Collects the reports a callback sends back."""

    def __init__(self):
        self.reports: list[Report] = []

    def __call__(self, report: Report) -> None:
        self.reports.append(report)


Callback = Callable[[dict, Respond, Logger], None]


class App:
    def __init__(self, manifest: Optional[dict] = None):
        self.manifest = manifest or {"commands": [], "options": {}}
        self._commands: dict[str, Callback] = {}

    def command(self, name: str) -> Callable[[Callback], Callback]:
        def register(callback: Callback) -> Callback:
            self._commands[name] = callback
            return callback

        return register

    @property
    def commands(self) -> list[str]:
        return sorted(self._commands)

    def callback(self, name: str) -> Callback:
        if name not in self._commands:
            raise ValueError(f"unknown command {name!r}")
        return self._commands[name]


def run_command(app: App, name: str, options: dict, log: Optional[Logger] = None) -> Report:
    """Run one registered command and return the report it responded with."""
    respond = Respond()
    command = dict(options, command=name)
    try:
        app.callback(name)(command, respond, log or logger)
    except Exception as e:
        (log or logger).error(e)
        return error_report(name, e)
    if not respond.reports:
        return error_report(name, RuntimeError(f"command {name!r} produced no report"))
    return respond.reports[-1]


_TYPES = {"int": int, "str": str}


def build_parser(manifest: dict) -> argparse.ArgumentParser:
    """Subcommands, positional inputs and flags as declared in the manifest."""
    info = manifest.get("display_information", {})
    parser = argparse.ArgumentParser(prog=info.get("name", "qolab"), description=info.get("description"))
    subparsers = parser.add_subparsers(dest="command", required=True)
    options = manifest.get("options", {})
    for entry in manifest.get("commands", []):
        sub = subparsers.add_parser(entry["command"], help=entry.get("description"), description=entry.get("description"))
        sub.add_argument(entry.get("input", "text"), help=entry.get("input_help"))
        for key in entry.get("options", []):
            option = options[key]
            kwargs = {"dest": key, "help": option.get("help")}
            if option.get("type") == "flag":
                kwargs["action"] = "store_true"
            else:
                kwargs["type"] = _TYPES[option.get("type", "str")]
                kwargs["default"] = option.get("default")
                if "choices" in option:
                    kwargs["choices"] = option["choices"]
            sub.add_argument(*option["flags"], **kwargs)
    return parser


def parse_argv(parser: argparse.ArgumentParser, argv: Sequence[str]) -> dict:
    """argparse exits on usage errors; turn that into a ValueError."""
    try:
        return vars(parser.parse_args(list(argv)))
    except SystemExit as e:
        if e.code in (0, None):
            raise
        raise ValueError(f"usage error in {' '.join(argv)!r}") from e


def run_batch(app: App, parser: argparse.ArgumentParser, lines: Sequence[str]) -> list[Report]:
    reports = []
    for number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            options = parse_argv(parser, shlex.split(line))
        except ValueError as e:
            logger.error(f"batch line {number}: {e}")
            reports.append(error_report("batch", e, {"line": number}))
            continue
        name = options.pop("command")
        if name == "batch":
            reports.append(error_report("batch", ValueError("batch files cannot nest"), {"line": number}))
            continue
        reports.append(run_command(app, name, options))
    return reports
