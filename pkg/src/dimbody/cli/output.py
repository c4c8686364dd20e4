"""JSON envelope and human output for Dimbody CLI."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from typing import Any

from loguru import logger
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from dimbody.core.errors import DimbodyError, ExitCode


@dataclass
class CliContext:
    """Runtime CLI context shared across commands."""

    json_mode: bool = False
    quiet: bool = False
    verbose: bool = False
    command_name: str = "dimbody"


@dataclass
class Envelope:
    """Stable JSON response envelope for scripts."""

    ok: bool
    command: str
    data: dict[str, Any] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "command": self.command,
            "data": self.data,
            "errors": self.errors,
            "warnings": self.warnings,
        }


def _is_scalar(value: Any) -> bool:
    return isinstance(value, str | int | float | bool) or value is None


def _scalar_table(ctx: CliContext, data: dict[str, Any]) -> Table | None:
    rows = [(k, v) for k, v in data.items() if k not in {"summary", "warnings"} and _is_scalar(v)]
    if not rows:
        return None
    table = Table(title=ctx.command_name, show_header=True)
    table.add_column("field")
    table.add_column("value", justify="right")
    for key, value in rows:
        table.add_row(key, repr(value) if isinstance(value, float) else str(value))
    return table


def emit_success(
    ctx: CliContext,
    *,
    data: dict[str, Any] | None = None,
    warnings: list[str] | None = None,
) -> None:
    """Emit successful output."""
    if ctx.json_mode:
        envelope = Envelope(
            ok=True,
            command=ctx.command_name,
            data=data or {},
            warnings=warnings or [],
        )
        print(json.dumps(envelope.to_dict(), indent=2))
        return

    if ctx.quiet or not data:
        return
    console = Console()
    table = _scalar_table(ctx, data)
    if table is not None:
        console.print(table)
    if "summary" in data:
        console.print(data["summary"], highlight=False)
    for warning in warnings or []:
        console.print(f"warning: {warning}", style="yellow", highlight=False)


def emit_error(
    ctx: CliContext,
    message: str,
    *,
    errors: list[str] | None = None,
    exit_code: ExitCode = ExitCode.OPERATIONAL_FAILURE,
) -> None:
    """Write the error lines to stderr and exit with ``exit_code``."""
    lines = errors or [message]
    if ctx.json_mode:
        envelope = Envelope(ok=False, command=ctx.command_name, errors=lines)
        print(json.dumps(envelope.to_dict(), indent=2), file=sys.stderr)
    else:
        print("\n".join(f"error: {line}" for line in lines), file=sys.stderr)
    raise SystemExit(int(exit_code))


def _validation_lines(exc: ValidationError) -> list[str]:
    return [f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors()]


def _failure(exc: BaseException) -> tuple[list[str], ExitCode]:
    """Error lines and exit code for an exception escaping a command."""
    match exc:
        case DimbodyError():
            return [exc.message], exc.exit_code
        case KeyboardInterrupt():
            return ["Interrupted"], ExitCode.INTERRUPTED
        case ValidationError():
            return _validation_lines(exc), ExitCode.USAGE_OR_VALIDATION
        case OSError():
            return [str(exc)], ExitCode.IO_FAILURE
    logger.opt(exception=exc).debug("unhandled {}", type(exc).__name__)
    return [str(exc)], ExitCode.OPERATIONAL_FAILURE


def handle_exception(ctx: CliContext, exc: BaseException) -> None:
    """Map exceptions to CLI exit codes."""
    if isinstance(exc, SystemExit):
        raise exc
    errors, code = _failure(exc)
    emit_error(ctx, errors[0], errors=errors, exit_code=code)
