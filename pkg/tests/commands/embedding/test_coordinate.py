import logging
from unittest.mock import Mock

from commands.embedding.coordinate import coordinate_callback
from qolab.cli import Respond
from qolab.embedding import AutomorphismChain, verify_chain
from qolab.parsing import VariableDecl, parse_poly

test_logger = logging.getLogger(__name__)


class TestCoordinate:
    def setup_method(self):
        self.fake_respond = Mock(Respond)
        self.fake_command = {"command": "embedding", "polynomial": "y^2 - x1", "vars": 2}

    def test_coordinate_callback(self):
        coordinate_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        self.fake_respond.assert_called_once()
        report = self.fake_respond.call_args.args[0].to_json()
        assert report["verdict"] == "coordinate"
        assert report["chain"] == [{"translate_var": "x1", "by": "y^2 - x1"}]
        assert report["image"] == "x1"
        assert report["k"] == 1

    def test_reported_chain_verifies(self):
        self.fake_command.update(polynomial="y^4 - 2*x*y^2 - y + x^2", vars=1)
        coordinate_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        report = self.fake_respond.call_args.args[0].to_json()
        decl = VariableDecl.default(1)
        chain = AutomorphismChain.from_json(report["chain"], decl.names)
        image = verify_chain(chain, parse_poly(self.fake_command["polynomial"], decl))
        assert image == parse_poly(report["image"], decl)

    def test_not_a_coordinate(self):
        self.fake_command["polynomial"] = "y^2 - x1*x2"
        coordinate_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        report = self.fake_respond.call_args.args[0].to_json()
        assert report["verdict"] == "not_coordinate"
        assert report["r"] == [[-1, -1]]
        assert "chain" not in report

    def test_non_monic(self, caplog):
        self.fake_command["polynomial"] = "2*y^2 - x1"
        coordinate_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        assert self.fake_respond.call_args.args[0].error["type"] == "NonMonicError"
        assert "monic" in caplog.text
