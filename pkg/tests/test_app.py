import json
from pathlib import Path

import jsonschema
import pytest

from app import build_app, load_manifest, main
from settings import reset_settings

F4 = "y^4 - 2*x1*y^2 - 4*x1^2*x2*y + x1^2 - x1^3*x2^2"
SCHEMA = json.loads((Path(__file__).parents[1] / "schema" / "report.schema.json").read_text())


class TestApp:
    def setup_method(self):
        reset_settings()

    def test_every_manifest_command_is_registered(self):
        manifest = load_manifest()
        names = {entry["command"] for entry in manifest["commands"]} - {"batch"}
        assert set(build_app().commands) == names

    def test_json_report(self, capsys):
        assert main(["irreducible", "--vars", "2", "--json", F4]) == 0
        report = json.loads(capsys.readouterr().out)
        jsonschema.validate(report, SCHEMA)
        assert report["d"] == [4, 2, 1]
        assert report["r"] == [[2, 0], [5, 2]]

    def test_text_report(self, capsys):
        assert main(["embedding", "--vars", "2", "y^2 - x1"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("embedding: ok")
        assert "verdict: coordinate" in out

    def test_parse_error_exit_code(self, capsys):
        assert main(["irreducible", "--vars", "2", "--json", "y + z"]) == 2
        report = json.loads(capsys.readouterr().out)
        assert report["error"]["type"] == "UndeclaredVariable"

    def test_usage_error(self, capsys):
        assert main(["irreducible", "--convention", "sideways", "y"]) == 2

    @pytest.mark.parametrize(
        "line, verdict",
        [
            (f'qo-check --vars 2 "{F4}"', "quasi_ordinary"),
            (f'irreducible --vars 2 "{F4}"', "irreducible"),
            (f'semigroup --vars 2 "{F4}"', "irreducible"),
            (f'approx-roots --vars 2 "{F4}"', None),
            ('expand-root --precision 12 "y^2 - x^3"', "root"),
            ('orders --with "y - x" --precision 12 "y^2 - x^3"', "agree"),
            ('family "y^2 - x^3"', "invariant"),
            ('embedding --vars 2 "y^2 - x1"', "coordinate"),
            ('qo-property "X*Y*(X+Y)"', "no_qo"),
            ('almost-qo --vars 2 "y^3 - x1 - x2"', "almost_qo"),
        ],
    )
    def test_batch_reports_validate(self, tmp_path, capsys, line, verdict):
        batch = tmp_path / "commands.txt"
        batch.write_text(f"# one command\n{line}\n")
        assert main(["batch", str(batch)]) == 0
        (out,) = capsys.readouterr().out.splitlines()
        report = json.loads(out)
        jsonschema.validate(report, SCHEMA)
        assert report["status"] == "ok"
        assert report.get("verdict") == verdict

    def test_batch_exit_code_is_the_maximum(self, tmp_path, capsys):
        batch = tmp_path / "commands.txt"
        batch.write_text('qo-check "y^2 - x^3"\nqo-check "y^2"\nqo-check "y + z"\n')
        assert main(["batch", str(batch)]) == 2
        statuses = [json.loads(line)["status"] for line in capsys.readouterr().out.splitlines()]
        assert statuses == ["ok", "error", "error"]
