"""Standard-library backports for interpreters older than Python 3.11."""

from __future__ import annotations

import sys
from enum import Enum

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:

    class StrEnum(str, Enum):
        """Backport of :class:`enum.StrEnum`: members are strings and print as their value."""

        __str__ = str.__str__
        __format__ = str.__format__


__all__ = ["StrEnum"]
