import logging
from unittest.mock import Mock

from commands.analysis.semigroup import semigroup_callback
from qolab.cli import Respond

F4 = "y^4 - 2*x1*y^2 - 4*x1^2*x2*y + x1^2 - x1^3*x2^2"

test_logger = logging.getLogger(__name__)


class TestSemigroup:
    def setup_method(self):
        self.fake_respond = Mock(Respond)
        self.fake_command = {"command": "semigroup", "polynomial": F4, "vars": 2, "convention": "local"}

    def test_generators(self):
        semigroup_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        report = self.fake_respond.call_args.args[0].to_json()
        assert report["generators"] == [[4, 0], [0, 4], [2, 0], [5, 2]]

    def test_approximate_root_semigroup(self):
        self.fake_command["k"] = 2
        semigroup_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        report = self.fake_respond.call_args.args[0].to_json()
        assert report["generators"] == [[2, 0], [0, 2], [1, 0]]
        assert report["notes"]

    def test_membership(self):
        self.fake_command["member"] = "7,2"
        semigroup_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        member = self.fake_respond.call_args.args[0].to_json()["member"]
        assert member["in_semigroup"]
        assert member["value"] == [7, 2]

    def test_reducible(self):
        self.fake_command.update(polynomial="y^2 - x^2", vars=1)
        semigroup_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        report = self.fake_respond.call_args.args[0].to_json()
        assert report["verdict"] == "reducible"
        assert "generators" not in report

    def test_bad_member(self, caplog):
        self.fake_command["member"] = "7;2"
        semigroup_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        report = self.fake_respond.call_args.args[0]
        assert report.exit_code == 2
        assert "comma-separated integers" in caplog.text
