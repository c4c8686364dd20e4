"""Dimbody CLI application."""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Annotated, Any, Literal, Optional

import typer

from dimbody.cli.commands import certify, cone, realize, seesaw, witness, xo
from dimbody.cli.config import RunConfig
from dimbody.cli.output import CliContext, emit_success, handle_exception
from dimbody.core.errors import ExitCode, InvalidInputError
from dimbody.core.log import configure_logging

app = typer.Typer(
    name="dimbody",
    help="Concavity witnesses, Bell certificates and realizations for fixed-dimension correlations.",
    no_args_is_help=True,
    add_completion=False,
)


def _ctx(
    *,
    json_output: bool,
    quiet: bool,
    verbose: bool,
    command: str,
) -> CliContext:
    return CliContext(
        json_mode=json_output,
        quiet=quiet,
        verbose=verbose,
        command_name=command,
    )


def _run(fn, ctx: CliContext, **kwargs: Any) -> None:
    try:
        data = fn(**kwargs)
        payload = data if isinstance(data, dict) else {"result": data}
        warnings = (
            payload.get("warnings")
            if isinstance(payload.get("warnings"), list)
            else None
        )
        emit_success(ctx, data=payload, warnings=warnings)
    except BaseException as exc:
        handle_exception(ctx, exc)


@app.callback()
def global_options(
    ctx: typer.Context,
    json_output: Annotated[
        bool,
        typer.Option("--json", help="Emit machine-readable JSON envelope."),
    ] = False,
    quiet: Annotated[
        bool, typer.Option("--quiet", "-q", help="Suppress non-essential output.")
    ] = False,
    verbose: Annotated[
        bool, typer.Option("--verbose", "-v", help="Verbose output and DEBUG logs.")
    ] = False,
    log_json: Annotated[
        bool, typer.Option("--log-json", help="Serialize log records as JSON lines.")
    ] = False,
    tolerance_profile: Annotated[
        str,
        typer.Option(
            "--tolerance-profile",
            envvar="DIMBODY_TOLERANCE_PROFILE",
            help="Tolerance preset: default or strict.",
        ),
    ] = "default",
    tolerance_file: Annotated[
        Optional[Path],
        typer.Option("--tolerance-file", help="YAML file with tolerance overrides."),
    ] = None,
    rank_eps: Annotated[
        Optional[float], typer.Option("--rank-eps", help="Relative singular-value threshold.")
    ] = None,
    psd_eps: Annotated[
        Optional[float], typer.Option("--psd-eps", help="PSD eigenvalue floor.")
    ] = None,
    conv_eps: Annotated[
        Optional[float], typer.Option("--conv-eps", help="See-saw convergence threshold.")
    ] = None,
    parallel: Annotated[
        int,
        typer.Option(
            "--parallel",
            envvar="DIMBODY_PARALLEL",
            min=1,
            help="Worker threads for trials and scans.",
        ),
    ] = 1,
) -> None:
    """Global options stored on Typer context."""
    ctx.ensure_object(dict)
    level = "DEBUG" if verbose else "WARNING" if quiet else "INFO"
    configure_logging(level=level, json_format=log_json)
    cli = _ctx(
        json_output=json_output,
        quiet=quiet,
        verbose=verbose,
        command="dimbody",
    )
    ctx.obj["cli"] = cli
    if tolerance_profile not in {"default", "strict"}:
        handle_exception(
            cli, InvalidInputError("tolerance profile must be default or strict")
        )
    try:
        ctx.obj["config"] = RunConfig.from_options(
            profile=tolerance_profile,  # type: ignore[arg-type]
            tolerance_file=tolerance_file,
            rank_eps=rank_eps,
            psd_eps=psd_eps,
            conv_eps=conv_eps,
            parallel=parallel,
        )
    except BaseException as exc:
        handle_exception(cli, exc)


def _config(ctx: typer.Context, out: Path | None = None) -> RunConfig:
    return ctx.obj["config"].with_output(out)


def _cli(ctx: typer.Context, command: str) -> CliContext:
    cli = ctx.obj["cli"]
    cli.command_name = command
    return cli


OutOption = Annotated[
    Optional[Path], typer.Option("--out", "-o", help="Also write the result to this file.")
]
MOption = Annotated[int, typer.Option("--m", help="Number of settings per party.")]


@app.command("xo")
def xo_cmd(ctx: typer.Context, m: MOption, out: OutOption = None) -> None:
    """Build the witness point from its mixture and compare with the closed form."""
    _run(xo.run_xo, _cli(ctx, "dimbody xo"), config=_config(ctx, out), m=m)


@app.command("witness")
def witness_cmd(
    ctx: typer.Context,
    m: MOption,
    d: Annotated[int, typer.Option("--d", help="Local dimension to test.")],
    out: OutOption = None,
) -> None:
    """Rank test of the witness point at local dimension d."""
    _run(
        witness.run_witness,
        _cli(ctx, "dimbody witness"),
        config=_config(ctx, out),
        m=m,
        d=d,
    )


@app.command("seesaw")
def seesaw_cmd(
    ctx: typer.Context,
    m: MOption,
    trials: Annotated[int, typer.Option("--trials", help="Independent random starts.")] = 50,
    seed: Annotated[int, typer.Option("--seed", help="Root seed for all trials.")] = 0,
    max_iter: Annotated[
        int, typer.Option("--max-iter", help="Sweep limit per trial.")
    ] = 10_000,
    out: OutOption = None,
) -> None:
    """Maximize the Bell polynomial by alternating exact half steps."""
    _run(
        seesaw.run_seesaw,
        _cli(ctx, "dimbody seesaw"),
        config=_config(ctx, out),
        m=m,
        trials=trials,
        seed=seed,
        max_iter=max_iter,
    )


@app.command("certify")
def certify_cmd(
    ctx: typer.Context,
    m: MOption,
    gamma: Annotated[
        Optional[Path],
        typer.Option("--gamma", help="JSON Gram matrix to check against the certificate."),
    ] = None,
    out: OutOption = None,
) -> None:
    """Analytic primal/dual certificate of the quantum maximum."""
    _run(
        certify.run_certify,
        _cli(ctx, "dimbody certify"),
        config=_config(ctx, out),
        m=m,
        gamma_file=gamma,
    )


@app.command("realize")
def realize_cmd(
    ctx: typer.Context,
    m: MOption,
    operators: Annotated[
        bool, typer.Option("--operators", help="Include the state and observables.")
    ] = False,
    out: OutOption = None,
) -> None:
    """Realize the witness point with anticommuting observables."""
    _run(
        realize.run_realize,
        _cli(ctx, "dimbody realize"),
        config=_config(ctx, out),
        m=m,
        include_operators=operators,
    )


@app.command("cone")
def cone_cmd(
    ctx: typer.Context,
    grid: Annotated[int, typer.Option("--grid", help="Grid density.")] = 64,
    fmt: Annotated[
        str, typer.Option("--format", help="Row file format: csv or json.")
    ] = "csv",
    out: OutOption = None,
) -> None:
    """Scan projective and POVM third measurements over the bicone."""
    cli = _cli(ctx, "dimbody cone")
    if fmt not in {"csv", "json"}:
        handle_exception(cli, InvalidInputError("format must be csv or json"))
    row_format: Literal["csv", "json"] = "json" if fmt == "json" else "csv"
    _run(
        cone.run_cone,
        cli,
        config=_config(ctx, out),
        grid_density=grid,
        fmt=row_format,
    )


_GLOBAL_FLAGS = {
    "--json",
    "--quiet",
    "-q",
    "--verbose",
    "-v",
    "--log-json",
    "--tolerance-profile",
    "--tolerance-file",
    "--rank-eps",
    "--psd-eps",
    "--conv-eps",
    "--parallel",
    "--help",
    "-h",
}

_GLOBAL_VALUE_FLAGS = {
    "--tolerance-profile",
    "--tolerance-file",
    "--rank-eps",
    "--psd-eps",
    "--conv-eps",
    "--parallel",
}


def _normalize_argv(argv: list[str]) -> list[str]:
    """Move global flags before subcommands for Typer callback parsing."""
    if not argv:
        return argv

    globals: list[str] = []
    rest: list[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in _GLOBAL_FLAGS or arg.split("=", 1)[0] in _GLOBAL_FLAGS:
            globals.append(arg)
            if "=" not in arg and arg in _GLOBAL_VALUE_FLAGS and i + 1 < len(argv):
                i += 1
                globals.append(argv[i])
        else:
            rest.append(arg)
        i += 1

    return globals + rest


def main() -> None:
    """Console entry point."""
    try:
        sys.argv[1:] = _normalize_argv(sys.argv[1:])
        app()
    except KeyboardInterrupt:
        raise SystemExit(ExitCode.INTERRUPTED) from None


if __name__ == "__main__":
    main()
