import json
import math

import numpy as np
import pytest
from typer.testing import CliRunner

from bargfock.cli import app
from bargfock.errors import EXIT_CHECK_FAILED, EXIT_INVALID_CONFIG, EXIT_NUMERICAL_FAILURE, exit_code_for
from bargfock.io import read_phase_field

runner = CliRunner()


def last_number(output: str) -> float:
    return float(output.strip().splitlines()[-1])


def test_modulation_norm_of_gaussian(tmp_path):
    report = tmp_path / "norms.csv"
    result = runner.invoke(app, ["norm", "mod", "--input", "hermite:0", "--p", "2", "--q", "2", "--output", str(report)])
    assert result.exit_code == 0
    assert last_number(result.stdout) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-8)
    lines = report.read_text().splitlines()
    assert lines[0] == "name,p,q,weight,value"
    assert lines[1].startswith("mod:hermite:0,2,2,sigma_0,")


def test_fock_norm_matches_modulation_norm(tmp_path):
    output = ["--output", str(tmp_path / "norms.csv")]
    fock = runner.invoke(app, ["norm", "fock", "--input", "taylor:1", "--p", "inf", "--q", "1", "--weight-s", "2"] + output)
    mod = runner.invoke(app, ["norm", "mod", "--input", "hermite:1", "--p", "inf", "--q", "1", "--weight-s", "2"] + output)
    assert fock.exit_code == 0 and mod.exit_code == 0
    assert last_number(fock.stdout) == pytest.approx(last_number(mod.stdout), rel=1e-6)


def test_norm_rejects_exponent_below_one(tmp_path):
    result = runner.invoke(app, ["norm", "mod", "--input", "gaussian", "--p", "0", "--output", str(tmp_path / "n.csv")])
    assert result.exit_code == EXIT_INVALID_CONFIG


def test_norm_rejects_unknown_variant(tmp_path):
    result = runner.invoke(app, ["norm", "mod", "--input", "gaussian", "--variant", "diagonal"])
    assert result.exit_code == EXIT_INVALID_CONFIG


def test_missing_input_file(tmp_path):
    missing = tmp_path / "nope.csv"
    result = runner.invoke(app, ["norm", "mod", "--input", str(missing), "--output", str(tmp_path / "n.csv")])
    assert result.exit_code == EXIT_INVALID_CONFIG
    assert "nope.csv" in result.stdout.replace("\n", "")


def test_bad_builtin_degree(tmp_path):
    result = runner.invoke(app, ["norm", "mod", "--input", "hermite:x", "--output", str(tmp_path / "n.csv")])
    assert result.exit_code == EXIT_INVALID_CONFIG


def test_transform_bargmann(tmp_path):
    stem = tmp_path / "bargmann"
    result = runner.invoke(app, ["transform", "bargmann", "--input", "hermite:1", "--output", str(stem)])
    assert result.exit_code == 0
    field = read_phase_field(stem)
    x, xi = field.grid.mesh()
    at = np.nonzero((np.abs(x[0] - 1) < 1e-12) & (np.abs(xi[0] - 1) < 1e-12))
    assert abs(field.values[at][0] - (1 + 1j)) < 1e-7


def test_transform_stft(tmp_path):
    stem = tmp_path / "stft"
    result = runner.invoke(app, ["transform", "stft", "--input", "gaussian", "--points", "4:33", "--output", str(stem)])
    assert result.exit_code == 0
    field = read_phase_field(stem)
    center = tuple(axis.center for axis in field.grid.axes)
    assert abs(field.values[center] - 1) < 1e-10


def test_transform_from_signal_csv(tmp_path):
    x = np.linspace(-8, 8, 257)
    signal = tmp_path / "gauss.csv"
    np.savetxt(signal, np.column_stack([x, np.pi ** -0.25 * np.exp(-x ** 2 / 2), 0 * x]),
               delimiter=",", header="x,re,im", comments="")
    stem = tmp_path / "out"
    result = runner.invoke(app, ["transform", "bargmann", "--input", str(signal), "--points", "2:9", "--output", str(stem)])
    assert result.exit_code == 0
    assert np.allclose(read_phase_field(stem).values, 1.0, atol=1e-8)


def test_transform_from_expansion_json(tmp_path):
    expansion = tmp_path / "e.json"
    expansion.write_text(json.dumps({
        "dim": 1, "max_degree": 2, "space": "fock",
        "coeffs": [{"alpha": [2], "re": 1.0, "im": 0.0}],
    }))
    result = runner.invoke(app, ["norm", "fock", "--input", str(expansion), "--output", str(tmp_path / "n.csv")])
    assert result.exit_code == 0
    assert last_number(result.stdout) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-8)


def test_verify_unknown_suite():
    result = runner.invoke(app, ["verify", "nosuchsuite"])
    assert result.exit_code == EXIT_INVALID_CONFIG


def test_verify_covering(tmp_path):
    report = tmp_path / "covering.json"
    result = runner.invoke(app, ["verify", "covering", "--rmax", "6", "--output", str(report)])
    assert result.exit_code == 0
    data = json.loads(report.read_text())
    assert data["schema"] == 1
    assert data["suite"] == "covering"
    overlap = next(c for c in data["checks"] if c["name"] == "max_overlap")
    assert overlap["passed"] and overlap["measured"] <= 64


def test_verify_invalid_radius():
    result = runner.invoke(app, ["verify", "covering", "--rmax", "3"])
    assert result.exit_code == EXIT_INVALID_CONFIG


def test_output_directory_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("BARGFOCK_OUTPUT_DIR", str(tmp_path))
    result = runner.invoke(app, ["transform", "bargmann", "--input", "gaussian"])
    assert result.exit_code == 0
    assert (tmp_path / "bargmann.csv").exists()
    assert (tmp_path / "bargmann.fock.json").exists()


@pytest.fixture
def expansion_2d(tmp_path):
    path = tmp_path / "e2.json"
    path.write_text(json.dumps({
        "dim": 2, "max_degree": 1, "space": "hermite",
        "coeffs": [{"alpha": [1, 0], "re": 1.0, "im": 0.0}],
    }))
    return path


def test_transform_stft_two_dimensional(tmp_path, expansion_2d):
    stem = tmp_path / "stft2"
    result = runner.invoke(app, ["transform", "stft", "--input", str(expansion_2d), "--points", "4:9", "--output", str(stem)])
    assert result.exit_code == 0
    field = read_phase_field(stem)
    assert field.grid.shape == (9,) * 4
    # V_phi h_(1,0) at x = (1, 0), xi = 0
    assert abs(field.values[5, 4, 4, 4] - math.exp(-0.25) / math.sqrt(2)) < 1e-8


def test_transform_bargmann_two_dimensional(tmp_path, expansion_2d):
    stem = tmp_path / "bargmann2"
    result = runner.invoke(app, ["transform", "bargmann", "--input", str(expansion_2d), "--points", "2:9", "--output", str(stem)])
    assert result.exit_code == 0
    assert (tmp_path / "bargmann2.fock.json").exists()
    field = read_phase_field(stem)
    # z_1 at z = (1 + i, 0)
    assert abs(field.values[6, 4, 6, 4] - (1 + 1j)) < 1e-12


def test_norms_two_dimensional(tmp_path, expansion_2d):
    output = ["--output", str(tmp_path / "norms.csv")]
    mod = runner.invoke(app, ["norm", "mod", "--input", str(expansion_2d)] + output)
    fock = runner.invoke(app, ["norm", "fock", "--input", str(expansion_2d)] + output)
    assert mod.exit_code == 0 and fock.exit_code == 0
    assert last_number(mod.stdout) == pytest.approx(2 * math.pi, rel=1e-6)
    assert last_number(fock.stdout) == pytest.approx(2 * math.pi, rel=1e-6)


def test_unwritable_output_is_invalid_config(tmp_path):
    result = runner.invoke(app, ["norm", "mod", "--input", "gaussian", "--output", str(tmp_path)])
    assert result.exit_code == EXIT_INVALID_CONFIG


def test_memory_exhaustion_is_numerical_failure(monkeypatch):
    def exhausted(name, config):
        raise MemoryError()

    monkeypatch.setattr("bargfock.cli.run_suite", exhausted)
    result = runner.invoke(app, ["verify", "isometry"])
    assert result.exit_code == EXIT_NUMERICAL_FAILURE
    assert "MemoryError" in result.stdout


def test_exit_codes_for_system_errors():
    assert exit_code_for(MemoryError()) == EXIT_NUMERICAL_FAILURE
    assert exit_code_for(IsADirectoryError("out")) == EXIT_INVALID_CONFIG
    assert exit_code_for(FileNotFoundError("in.csv")) == EXIT_INVALID_CONFIG
    assert EXIT_CHECK_FAILED not in {exit_code_for(MemoryError()), exit_code_for(OSError())}


def test_verify_covering_writes_cover(tmp_path):
    report = tmp_path / "covering.json"
    result = runner.invoke(app, ["verify", "covering", "--rmax", "6", "--output", str(report)])
    assert result.exit_code == 0
    cover = json.loads((tmp_path / "covering.cover.json").read_text())
    assert cover["R_max"] == 6.0
    assert 0 < cover["max_overlap"] <= 64
    ball = cover["balls"][0]
    assert len(ball["center"]) == 2
    assert ball["radius"] == pytest.approx(0.2)
