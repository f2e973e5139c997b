"""Tests for the command-line front end."""

import json

import numpy as np
import pytest

from compop import sequences
from compop.cli import main
from compop.maps import LinearFractionalMap, dump_map


@pytest.fixture()
def witness_1d_path(tmp_path):
    phi = LinearFractionalMap(np.array([[-1.0]]), [0.0], [-1.0], 2.0)
    path = tmp_path / "witness1d.json"
    dump_map(phi, path)
    return str(path)


@pytest.fixture()
def slice_witness_path(tmp_path):
    phi = LinearFractionalMap(np.array([[-1.0, 0.0], [0.0, 0.5]]), [0.5, 0], [-0.5, 0], 1.0)
    path = tmp_path / "slice.json"
    dump_map(phi, path)
    return str(path)


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_limits_csv_row(capsys):
    code, out, _ = run_cli(capsys, ["limits", "--t", "2", "--r", "0.5"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,r,forward_limit,adjoint_limit,gap_limit"
    fields = lines[1].split(",")
    assert fields[0] == "2"
    assert fields[1] == "0.5"
    assert float(fields[2]) == pytest.approx(5.0 / 3.0, rel=1e-11)
    assert float(fields[3]) == pytest.approx(11.0 / 3.0, rel=1e-11)
    assert float(fields[4]) == pytest.approx(2.0, rel=1e-11)


def test_limits_grid_and_json(capsys):
    code, out, _ = run_cli(capsys, ["limits", "--t", "1.5,2", "--r", "0.3,0.5", "--format", "json"])
    assert code == 0
    rows = json.loads(out)["rows"]
    assert len(rows) == 4
    assert rows[0]["t"] == 1.5
    assert rows[-1]["r"] == 0.5
    assert rows[-1]["gap_limit"] == pytest.approx(2.0, rel=1e-12)


def test_converge_rows_monotone_gap(capsys):
    code, out, _ = run_cli(capsys, ["converge", "--t", "2", "--r", "0.5", "--n", "10,100,1000"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,r,n,forward,adjoint,gap,forward_limit,adjoint_limit,gap_limit"
    gaps = [float(line.split(",")[5]) for line in lines[1:]]
    assert gaps == sorted(gaps)
    assert gaps[-1] == pytest.approx(2.0, abs=1e-4)


def test_converge_rows_match_module(capsys):
    code, out, _ = run_cli(capsys, ["converge", "--t", "2.5", "--r", "0.4", "--n", "7"])
    assert code == 0
    fields = out.strip().splitlines()[1].split(",")
    rep = sequences.report(2.5, 0.4, 7)
    assert float(fields[3]) == pytest.approx(rep.forward, rel=1e-11)
    assert float(fields[4]) == pytest.approx(rep.adjoint, rel=1e-11)


def test_output_byte_identical_across_runs(capsys):
    argv = ["converge", "--t", "2", "--r", "0.5", "--n", "10,100"]
    _, first, _ = run_cli(capsys, argv)
    _, second, _ = run_cli(capsys, argv)
    assert first == second


def test_threaded_rows_preserve_order(capsys, monkeypatch):
    argv = ["converge", "--t", "2", "--r", "0.5", "--n", "10,100,1000,10000"]
    _, serial, _ = run_cli(capsys, argv)
    monkeypatch.setenv("COMPOP_THREADS", "3")
    _, threaded, _ = run_cli(capsys, argv)
    assert serial == threaded


def test_oracle_command(capsys):
    code, out, _ = run_cli(
        capsys,
        ["oracle", "--N", "2", "--k", "2", "--m", "1", "--a", "0.6,0", "--eta", "1,0",
         "--format", "json"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == pytest.approx(0.0324, abs=1e-12)
    assert payload["bound"] == pytest.approx(0.0324, abs=1e-14)


def test_oracle_command_with_monte_carlo(capsys):
    argv = ["oracle", "--N", "2", "--k", "2", "--m", "1", "--a", "0.6,0", "--eta", "0,1",
            "--mc", "20000", "--seed", "5", "--format", "json"]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["mc_estimate"] - payload["value"]) <= 5 * payload["mc_stderr"]
    _, again, _ = run_cli(capsys, argv)
    assert out == again


def test_slice_check_command(capsys, slice_witness_path):
    code, out, _ = run_cli(capsys, ["slice-check", "--map", slice_witness_path, "--space", "hardy"])
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "NotEssentiallyNormal"


def test_kernel_bound_command(capsys, witness_1d_path):
    code, out, _ = run_cli(
        capsys,
        ["kernel-bound", "--map", witness_1d_path, "--space", "hardy", "--zeta", "1",
         "--radii", "0.9,0.99,0.999"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"]["status"] == "NotEssentiallyNormal"
    assert len(payload["table"]) == 3
    assert payload["table"][-1][1] == pytest.approx(0.5, abs=2e-2)


def test_kernel_bound_bergman_requires_weight(capsys, witness_1d_path):
    code, _, err = run_cli(
        capsys,
        ["kernel-bound", "--map", witness_1d_path, "--space", "bergman", "--zeta", "1"],
    )
    assert code == 2
    assert "--s" in err


def test_malformed_map_exits_two(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"N": 1, "A": [[[-1, 0]]], "B": [[0, 0]], "C": [[-1, 0]]}')
    code, _, err = run_cli(capsys, ["slice-check", "--map", str(path), "--space", "hardy"])
    assert code == 2
    assert "'d'" in err


def test_missing_map_file_exits_two(capsys):
    code, _, err = run_cli(capsys, ["slice-check", "--map", "/nonexistent.json", "--space", "hardy"])
    assert code == 2


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["limits", "--t", "2"])  # missing --r
    assert excinfo.value.code == 2


def test_verify_passes(capsys):
    code, out, _ = run_cli(capsys, ["verify"])
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1].startswith("5/5")


def test_output_file(capsys, tmp_path):
    target = tmp_path / "table.csv"
    code, out, _ = run_cli(capsys, ["limits", "--t", "2", "--r", "0.5", "--output", str(target)])
    assert code == 0
    assert out == ""
    content = target.read_text()
    assert content.startswith("t,r,forward_limit")
