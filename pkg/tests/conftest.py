"""Shared pytest fixtures for dimbody tests."""

from __future__ import annotations

import logging
from collections.abc import Generator
from pathlib import Path

import numpy as np
import pytest
from loguru import logger


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so property tests are reproducible under pytest-randomly."""
    return np.random.default_rng(20240917)


@pytest.fixture
def caplog(caplog: pytest.LogCaptureFixture) -> Generator[pytest.LogCaptureFixture, None, None]:
    """Enhance caplog to capture loguru logs.

    The library disables its loguru namespace on import; it is enabled for the
    duration of the test.
    """

    class PropagateHandler(logging.Handler):
        """Handler that propagates loguru records to Python logging."""

        def emit(self, record: logging.LogRecord) -> None:
            logging.getLogger(record.name).handle(record)

    logger.enable("dimbody")
    handler_id = logger.add(PropagateHandler(), format="{message}", level="DEBUG")
    yield caplog
    logger.remove(handler_id)
    logger.disable("dimbody")


@pytest.fixture
def out_dir(tmp_path: Path) -> Path:
    path = tmp_path / "out"
    path.mkdir()
    return path
