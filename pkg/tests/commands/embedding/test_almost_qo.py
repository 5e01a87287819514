import logging
from unittest.mock import Mock

from commands.embedding.almost_qo import almost_qo_callback
from qolab.cli import Respond

test_logger = logging.getLogger(__name__)


class TestAlmostQO:
    def setup_method(self):
        self.fake_respond = Mock(Respond)
        self.fake_command = {"command": "almost-qo", "polynomial": "y^3 - x1 - x2", "vars": 2}

    def test_almost_qo_callback(self):
        almost_qo_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        report = self.fake_respond.call_args.args[0].to_json()
        assert report["verdict"] == "almost_qo"
        assert report["chain"] == [{"translate_var": "x1", "by": "x1 - x2"}]
        assert report["image"] == "y^3 - x1"
        assert report["N"] == [-2, 0]
        assert (report["branch"], report["branch_label"]) == ("1", "dominant_monomial")

    def test_one_variable(self, caplog):
        self.fake_command["vars"] = 1
        self.fake_command["polynomial"] = "y^3 - x"
        almost_qo_callback(self.fake_command, respond=self.fake_respond, logger=test_logger)

        assert self.fake_respond.call_args.args[0].error["type"] == "DegreeError"
        assert "two x-variables" in caplog.text
