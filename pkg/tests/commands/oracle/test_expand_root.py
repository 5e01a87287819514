import logging
from unittest.mock import Mock

from commands.oracle.expand_root import expand_root_callback
from qolab.cli import Respond

test_logger = logging.getLogger(__name__)


class TestExpandRoot:
    def setup_method(self):
        self.fake_respond = Mock(Respond)
        self.fake_command = {"command": "expand-root", "polynomial": "y^2 - x^3", "vars": 1, "precision": 12}

    def test_expand_root_callback(self):
        expand_root_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        report = self.fake_respond.call_args.args[0].to_json()
        assert report["verdict"] == "root"
        assert report["p"] == 2
        assert report["series"] == [{"exp": [3], "coeff": 1}]
        assert report["series_text"] == "t^3"
        assert report["m"] == [[3]]
        assert report["conjugate_product"]

    def test_low_degree_root(self):
        self.fake_command["polynomial"] = "y^2 - x^2"
        expand_root_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        report = self.fake_respond.call_args.args[0].to_json()
        assert report["verdict"] == "low_degree_root"
        assert report["conjugates"] == 1
        assert "conjugate_product" not in report

    def test_irrational_coefficient(self, caplog):
        self.fake_command["polynomial"] = "y^2 - 2*x^3"
        expand_root_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        report = self.fake_respond.call_args.args[0]
        assert report.error["type"] == "AlgebraicExtensionRequired"
        assert "no nonzero rational root" in caplog.text
