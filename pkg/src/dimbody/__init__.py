"""Dimension-restricted quantum correlation bodies: witnesses, certificates, realizations."""

from loguru import logger

__version__ = "0.1.0"

# Library code stays silent until an application (the CLI) enables it.
logger.disable("dimbody")

__all__ = ["__version__"]
