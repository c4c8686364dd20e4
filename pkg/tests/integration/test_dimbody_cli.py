"""Integration tests for the dimbody console script."""

from __future__ import annotations

import json
import subprocess
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[2]


def _run_cli(*args: str) -> subprocess.CompletedProcess[str]:
    return subprocess.run(
        ["uv", "run", "dimbody", *args],
        cwd=REPO_ROOT,
        capture_output=True,
        text=True,
        check=False,
    )


@pytest.mark.integration
def test_xo_json() -> None:
    proc = _run_cli("xo", "--m", "4", "--json")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["ok"] is True
    assert payload["command"] == "dimbody xo"
    assert payload["data"]["difference"] < 1e-12


@pytest.mark.integration
def test_xo_odd_m_exit_code() -> None:
    proc = _run_cli("xo", "--m", "3", "--json")
    assert proc.returncode == 2
    payload = json.loads(proc.stderr)
    assert payload["errors"] == ["m must be even"]


@pytest.mark.integration
def test_witness_excludes_qubits() -> None:
    proc = _run_cli("witness", "--m", "4", "--d", "2", "--json")
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["data"]["excluded"] is True


@pytest.mark.integration
def test_seesaw_same_seed_same_output() -> None:
    args = ("seesaw", "--m", "4", "--trials", "50", "--seed", "11", "--json")
    first = _run_cli(*args)
    second = _run_cli(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["data"]["value"] == pytest.approx(8.0, abs=1e-6)


@pytest.mark.integration
def test_certify_m6() -> None:
    proc = _run_cli("certify", "--m", "6", "--json")
    data = json.loads(proc.stdout)["data"]
    assert data["primal"] == pytest.approx(18.0)
    assert data["dual"] == pytest.approx(18.0)


@pytest.mark.integration
def test_realize_m4() -> None:
    proc = _run_cli("realize", "--m", "4", "--json")
    data = json.loads(proc.stdout)["data"]
    assert data["deviation"] < 1e-10
    assert data["local_dimension"] == 4


@pytest.mark.integration
@pytest.mark.slow
def test_cone_grid_64(tmp_path: Path) -> None:
    out = tmp_path / "cone.csv"
    proc = _run_cli("cone", "--grid", "64", "--out", str(out), "--json", "--parallel", "4")
    assert proc.returncode == 0
    data = json.loads(proc.stdout)["data"]
    assert data["projective_lateral_off_axis"] == 0
    assert data["povm_axis_interpolation"] > 0
    assert data["counts"]["projective"]["apex"] == 2
    assert out.read_text(encoding="utf-8").startswith("kind,alpha,")


@pytest.mark.integration
def test_cone_unwritable_path(tmp_path: Path) -> None:
    blocker = tmp_path / "file"
    blocker.write_text("", encoding="utf-8")
    proc = _run_cli("cone", "--grid", "4", "--out", str(blocker / "cone.csv"))
    assert proc.returncode == 4
    assert "error:" in proc.stderr
