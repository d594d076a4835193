"""backend.logging のテスト"""

import io
import logging
import sys

import pytest

from backend.logging import DOMAIN_LOGGERS, apply_level, setup_logger
from cli import EXIT_INPUT_ERROR, main
from config.settings import LogLevel, get_settings


@pytest.fixture
def restore_domain_levels():
    """ドメインロガーのレベルをテスト後に INFO に戻す"""
    yield
    apply_level(DOMAIN_LOGGERS, logging.INFO)


class TestConsoleStream:
    """コンソール出力先のテスト"""

    def test_default_stream_is_stderr(self, monkeypatch):
        """既定の出力先が呼び出し時点の標準エラーか"""
        fake_stderr, fake_stdout = io.StringIO(), io.StringIO()
        monkeypatch.setattr(sys, "stderr", fake_stderr)
        monkeypatch.setattr(sys, "stdout", fake_stdout)
        logger = setup_logger("tests.stderr", level=logging.INFO)
        logger.info("build_cycle: N=4, prime=101")
        assert "[INFO] tests.stderr: build_cycle: N=4, prime=101" in fake_stderr.getvalue()
        assert fake_stdout.getvalue() == ""

    def test_console_can_be_disabled(self, tmp_path):
        """console=False ならファイルだけに書かれるか"""
        log_file = tmp_path / "cli.log"
        logger = setup_logger(
            "tests.quiet", log_file=str(log_file), console=False, file_handler_type="plain"
        )
        assert [type(h) for h in logger.handlers] == [logging.FileHandler]
        logger.warning("offset collision, retrying")
        logger.handlers[0].flush()
        assert "offset collision, retrying" in log_file.read_text(encoding="utf-8")

    def test_rebuilding_keeps_one_handler_per_sink(self, tmp_path):
        """同じロガーを作り直しても出力先ごとにハンドラが1つか"""
        log_file = tmp_path / "nested" / "lp.log"
        for _ in range(3):
            logger = setup_logger("tests.rebuild", log_file=str(log_file), stream=io.StringIO())
        assert len(logger.handlers) == 2
        assert log_file.parent.is_dir()


class TestApplyLevel:
    """apply_levelのテスト"""

    @pytest.mark.parametrize("level", ["WARNING", logging.WARNING])
    def test_sets_logger_and_handlers(self, level):
        """名前でも数値でもロガーとハンドラのレベルが変わるか"""
        stream = io.StringIO()
        logger = setup_logger("tests.apply", level=logging.DEBUG, stream=stream)
        apply_level([logger], level)
        assert logger.level == logging.WARNING
        assert all(handler.level == logging.WARNING for handler in logger.handlers)
        logger.info("hidden")
        logger.warning("shown")
        assert "hidden" not in stream.getvalue()
        assert "shown" in stream.getvalue()

    def test_domain_loggers(self):
        """ドメインロガーが各パッケージと LP・CLI の名前を持つか"""
        names = {logger.name for logger in DOMAIN_LOGGERS}
        assert names == {
            "backend.grassmann",
            "backend.chains",
            "backend.torus",
            "backend.constructions",
            "backend.energy",
            "backend.lp",
            "cli",
        }

    def test_cli_applies_configured_level(self, monkeypatch, capsys, restore_domain_levels):
        """CLI の起動時に LOG_LEVEL がすべてのドメインロガーに反映されるか"""
        monkeypatch.setattr(get_settings(), "LOG_LEVEL", LogLevel.ERROR)
        assert main(["cycle", "--measure", "no_such_measure", "--size", "4"]) == EXIT_INPUT_ERROR
        capsys.readouterr()
        for logger in DOMAIN_LOGGERS:
            assert logger.level == logging.ERROR
            assert all(handler.level == logging.ERROR for handler in logger.handlers)
