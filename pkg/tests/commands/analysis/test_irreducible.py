import logging
from unittest.mock import Mock

from commands.analysis.irreducible import irreducible_callback
from qolab.cli import Respond

F4 = "y^4 - 2*x1*y^2 - 4*x1^2*x2*y + x1^2 - x1^3*x2^2"

test_logger = logging.getLogger(__name__)


class TestIrreducible:
    def setup_method(self):
        self.fake_respond = Mock(Respond)
        self.fake_command = {"command": "irreducible", "polynomial": F4, "vars": 2, "convention": "local"}

    def test_irreducible_callback(self):
        irreducible_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        self.fake_respond.assert_called_once()
        report = self.fake_respond.call_args.args[0].to_json()
        assert report["verdict"] == "irreducible"
        assert report["d"] == [4, 2, 1]
        assert report["r"] == [[2, 0], [5, 2]]
        assert report["approx_roots"][1] == "y^2 - x1"
        assert report["charseq"]["m"] == [[2, 0], [3, 2]]

    def test_reducible_is_a_verdict(self):
        self.fake_command.update(polynomial="y^2 - x^2", vars=1)
        irreducible_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        report = self.fake_respond.call_args.args[0]
        assert report.exit_code == 0
        assert report.fields["verdict"] == "reducible"
        assert report.fields["stage"] == 1

    def test_at_infinity(self):
        self.fake_command["convention"] = "mero"
        irreducible_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        report = self.fake_respond.call_args.args[0].to_json()
        assert report["convention"] == "meromorphic"
        assert report["r"] == [[-3, -2]]

    def test_parse_error(self, caplog):
        self.fake_command["polynomial"] = "y + z"
        irreducible_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        report = self.fake_respond.call_args.args[0]
        assert report.exit_code == 2
        assert report.error["type"] == "UndeclaredVariable"
        assert "undeclared variable z" in caplog.text

    def test_respond_exception(self, caplog):
        self.fake_respond.side_effect = [Exception("test exception"), None]
        irreducible_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        assert self.fake_respond.call_count == 2
        assert "test exception" in caplog.text
