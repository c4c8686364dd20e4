"""Fixtures for in-process CLI tests."""

from __future__ import annotations

import json
from collections.abc import Callable, Generator
from typing import Any

import pytest
from loguru import logger
from typer.testing import CliRunner

from dimbody.cli.app import _normalize_argv, app


@pytest.fixture(autouse=True)
def _reset_logger() -> Generator[None, None, None]:
    """The app callback installs a stderr sink bound to the runner's stream."""
    yield
    logger.remove()
    logger.disable("dimbody")


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def invoke_json(runner: CliRunner) -> Callable[..., dict[str, Any]]:
    """Run a command with ``--json -q`` and return the parsed envelope."""

    def _invoke(*args: str) -> dict[str, Any]:
        result = runner.invoke(app, _normalize_argv(["--json", "-q", *args]))
        assert result.exit_code == 0, result.output
        return json.loads(result.stdout)

    return _invoke
