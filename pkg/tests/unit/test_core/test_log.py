"""Tests for loguru configuration."""

from __future__ import annotations

from collections.abc import Generator

import pytest
from loguru import logger

from dimbody.core.log import configure_logging


@pytest.fixture(autouse=True)
def _restore_logger() -> Generator[None, None, None]:
    yield
    logger.remove()
    logger.disable("dimbody")


def test_configure_logging_enables_library(capsys: pytest.CaptureFixture[str]) -> None:
    configure_logging(level="DEBUG")
    logger.debug("hello dimbody")
    captured = capsys.readouterr()
    assert "hello dimbody" in captured.err
    assert captured.out == ""


def test_configure_logging_json(capsys: pytest.CaptureFixture[str]) -> None:
    configure_logging(level="INFO", json_format=True)
    logger.info("structured")
    captured = capsys.readouterr()
    assert '"message": "structured"' in captured.err


def test_level_filters(capsys: pytest.CaptureFixture[str]) -> None:
    configure_logging(level="WARNING")
    logger.info("hidden")
    logger.warning("shown")
    err = capsys.readouterr().err
    assert "hidden" not in err
    assert "shown" in err
