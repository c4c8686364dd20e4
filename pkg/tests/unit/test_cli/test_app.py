"""In-process tests for the dimbody commands."""

from __future__ import annotations

import csv
import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pytest
from typer.testing import CliRunner

from dimbody.body.sdp import gram_from_configuration
from dimbody.body.seesaw import orthonormal_optimum
from dimbody.cli.app import _normalize_argv, app

InvokeJson = Callable[..., dict[str, Any]]


def test_normalize_argv_moves_globals() -> None:
    argv = ["xo", "--m", "4", "--json", "--parallel", "2", "--rank-eps=1e-9"]
    assert _normalize_argv(argv) == ["--json", "--parallel", "2", "--rank-eps=1e-9", "xo", "--m", "4"]
    assert _normalize_argv([]) == []


def test_xo_m4(invoke_json: InvokeJson) -> None:
    payload = invoke_json("xo", "--m", "4")
    assert payload["ok"] is True
    data = payload["data"]
    assert data["difference"] < 1e-12
    rows = np.asarray(data["closed_form"]["rows"])
    np.testing.assert_allclose(np.diag(rows)[1:], -0.5)
    assert rows[1, 2] == 0.5
    assert data["bell_value"] == pytest.approx(8.0)
    assert data["vertex_bell_value_min"] == data["vertex_bell_value_max"] == 8.0


def test_xo_m2_interior(invoke_json: InvokeJson) -> None:
    rows = np.asarray(invoke_json("xo", "--m", "2")["data"]["closed_form"]["rows"])
    np.testing.assert_allclose(rows[1:, 1:], [[0.0, 1.0], [1.0, 0.0]])


def test_xo_odd_m_is_usage_error(runner: CliRunner) -> None:
    result = runner.invoke(app, ["xo", "--m", "3"])
    assert result.exit_code == 2
    assert "m must be even" in result.output


@pytest.mark.parametrize(
    ("m", "d", "excluded", "rank"),
    [("4", "2", True, 5), ("4", "3", False, 5), ("8", "2", True, 9)],
)
def test_witness(invoke_json: InvokeJson, m: str, d: str, excluded: bool, rank: int) -> None:
    data = invoke_json("witness", "--m", m, "--d", d)["data"]
    assert data["excluded"] is excluded
    assert data["rank"] == rank


def test_seesaw_reaches_maximum_and_is_reproducible(invoke_json: InvokeJson) -> None:
    first = invoke_json("seesaw", "--m", "2", "--trials", "10", "--seed", "5")
    second = invoke_json("seesaw", "--m", "2", "--trials", "10", "--seed", "5")
    assert first["data"]["value"] == pytest.approx(2.0, abs=1e-6)
    assert json.dumps(first) == json.dumps(second)


def test_seesaw_parallel_matches_serial(invoke_json: InvokeJson) -> None:
    serial = invoke_json("seesaw", "--m", "4", "--trials", "6", "--seed", "1")
    threaded = invoke_json("--parallel", "3", "seesaw", "--m", "4", "--trials", "6", "--seed", "1")
    assert serial["data"] == threaded["data"]


@pytest.mark.parametrize(("m", "value"), [("4", 8.0), ("6", 18.0), ("1", 0.5)])
def test_certify(invoke_json: InvokeJson, m: str, value: float) -> None:
    data = invoke_json("certify", "--m", m)["data"]
    assert data["primal"] == pytest.approx(value)
    assert data["dual"] == pytest.approx(value)
    assert data["min_eig_slack"] >= -1e-9
    assert data["valid"] is True


def test_certify_with_gamma(invoke_json: InvokeJson, tmp_path: Path) -> None:
    gamma_path = tmp_path / "gamma.json"
    gamma = gram_from_configuration(orthonormal_optimum(4))
    gamma_path.write_text(json.dumps(gamma.tolist()), encoding="utf-8")
    data = invoke_json("certify", "--m", "4", "--gamma", str(gamma_path))["data"]
    assert data["cross_check"]["primal"] == pytest.approx(8.0)
    assert data["cross_check"]["weak_duality"] is True


def test_certify_infeasible_gamma(runner: CliRunner, tmp_path: Path) -> None:
    gamma_path = tmp_path / "gamma.json"
    gamma_path.write_text(json.dumps((2 * np.eye(8)).tolist()), encoding="utf-8")
    result = runner.invoke(app, ["certify", "--m", "4", "--gamma", str(gamma_path)])
    assert result.exit_code == 2


@pytest.mark.parametrize(("m", "dim"), [("2", 2), ("4", 4), ("6", 8)])
def test_realize(invoke_json: InvokeJson, m: str, dim: int) -> None:
    data = invoke_json("realize", "--m", m)["data"]
    assert data["deviation"] < 1e-10
    assert data["local_dimension"] == dim
    assert data["witness"]["excluded"] is False
    assert "realization" not in data


def test_realize_operators_and_limit(invoke_json: InvokeJson, runner: CliRunner) -> None:
    data = invoke_json("realize", "--m", "2", "--operators")["data"]
    assert len(data["realization"]["bob_observables"]) == 2
    assert runner.invoke(app, ["realize", "--m", "18"]).exit_code == 2


def test_cone_writes_rows(invoke_json: InvokeJson, tmp_path: Path) -> None:
    out = tmp_path / "cone.csv"
    data = invoke_json("cone", "--grid", "8", "--out", str(out))["data"]
    assert data["projective_lateral_off_axis"] == 0
    assert data["povm_lateral_off_axis"] > 0
    assert data["counts"]["projective"]["apex"] == 2
    with out.open(encoding="utf-8", newline="") as handle:
        records = list(csv.reader(handle))
    assert records[0][0] == "kind"
    assert len(records) == data["rows"] + 1


def test_cone_json_format(invoke_json: InvokeJson, tmp_path: Path) -> None:
    out = tmp_path / "cone.json"
    invoke_json("cone", "--grid", "4", "--format", "json", "--out", str(out))
    rows = json.loads(out.read_text(encoding="utf-8"))
    assert {row["kind"] for row in rows} == {"projective", "povm"}


def test_cone_rejects_bad_format_and_density(runner: CliRunner) -> None:
    assert runner.invoke(app, ["cone", "--grid", "4", "--format", "xml"]).exit_code == 2
    assert runner.invoke(app, ["cone", "--grid", "1"]).exit_code == 2


def test_cone_unwritable_output(runner: CliRunner, tmp_path: Path) -> None:
    blocker = tmp_path / "file"
    blocker.write_text("", encoding="utf-8")
    result = runner.invoke(app, ["cone", "--grid", "2", "--out", str(blocker / "cone.csv")])
    assert result.exit_code == 4


def test_out_writes_payload(invoke_json: InvokeJson, tmp_path: Path) -> None:
    out = tmp_path / "witness.json"
    payload = invoke_json("witness", "--m", "4", "--d", "2", "--out", str(out))
    assert json.loads(out.read_text(encoding="utf-8")) == payload["data"]


def test_tolerance_options(runner: CliRunner, tmp_path: Path) -> None:
    assert runner.invoke(app, ["--rank-eps", "-1", "witness", "--m", "4", "--d", "2"]).exit_code == 2
    assert (
        runner.invoke(app, ["--tolerance-profile", "loose", "witness", "--m", "4", "--d", "2"]).exit_code
        == 2
    )
    tolerance_file = tmp_path / "tol.yml"
    tolerance_file.write_text("unknown: 1\n", encoding="utf-8")
    result = runner.invoke(
        app, ["--tolerance-file", str(tolerance_file), "witness", "--m", "4", "--d", "2"]
    )
    assert result.exit_code == 2


def test_tolerance_profile_from_environment(runner: CliRunner) -> None:
    result = runner.invoke(
        app,
        ["--json", "-q", "witness", "--m", "4", "--d", "2"],
        env={"DIMBODY_TOLERANCE_PROFILE": "strict"},
    )
    assert result.exit_code == 0
    assert json.loads(result.stdout)["data"]["excluded"] is True


def test_human_output(runner: CliRunner) -> None:
    result = runner.invoke(app, ["certify", "--m", "4"])
    assert result.exit_code == 0
    assert "primal" in result.stdout


def test_tolerance_file_error_names_offending_key(runner: CliRunner, tmp_path: Path) -> None:
    tolerance_file = tmp_path / "tol.yml"
    tolerance_file.write_text("rank_eps: 1.0e-6\nepsilon: 3\n", encoding="utf-8")
    result = runner.invoke(
        app, ["--tolerance-file", str(tolerance_file), "witness", "--m", "4", "--d", "2"]
    )
    assert result.exit_code == 2
    assert "epsilon" in result.output
    assert "Invalid tolerance file" in result.output
