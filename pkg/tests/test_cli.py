import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import make_config
from qudit_transfer import average_fidelity_exact, optimal_time
from qudit_transfer.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(out):
    return list(csv.DictReader(io.StringIO(out)))


def test_transfer_optimal(capsys):
    code, out, _ = run(capsys, "transfer", "--spin", "10", "--dim", "3")
    assert code == 0
    (row,) = rows_of(out)
    assert float(row["fidelity"]) > 0.99
    assert float(row["tau"]) == pytest.approx(optimal_time(make_config(3, 20, 3)), rel=1e-11)


def test_transfer_at_time_zero_is_vacuum_weight(capsys):
    code, out, _ = run(capsys, "transfer", "--time", "0", "--state", "basis:0")
    assert code == 0
    assert float(rows_of(out)[0]["fidelity"]) == pytest.approx(1.0, abs=1e-12)
    code, out, _ = run(capsys, "transfer", "--time", "0", "--state", "uniform")
    assert float(rows_of(out)[0]["fidelity"]) == pytest.approx(1 / 3, abs=1e-11)


def test_transfer_time_grid(capsys):
    code, out, _ = run(capsys, "transfer", "--time", "0:10:6")
    assert code == 0
    rows = rows_of(out)
    assert [float(r["tau"]) for r in rows] == pytest.approx(np.linspace(0, 10, 6))


def test_even_bus_optimal_time_is_unsupported(capsys):
    code, _, err = run(capsys, "transfer", "--bus-length", "2", "--spin", "2")
    assert code == 3
    assert "error" in err


def test_even_bus_explicit_time_runs(capsys):
    code, out, _ = run(capsys, "transfer", "--bus-length", "2", "--spin", "2", "--time", "5")
    assert code == 0
    assert 0 <= float(rows_of(out)[0]["fidelity"]) <= 1


def test_avg_fidelity_exact_matches_library(capsys):
    code, out, _ = run(capsys, "avg-fidelity", "--axis", "spin", "--values", "2,10", "--spin", "10")
    assert code == 0
    rows = rows_of(out)
    for row in rows:
        S = float(row["axis_value"])
        ref = average_fidelity_exact(make_config(3, int(2 * S), 3, coupling_g=0.1))
        assert float(row["mean"]) == pytest.approx(ref, abs=1e-11)


def test_avg_fidelity_mc(capsys):
    code, out, _ = run(
        capsys, "avg-fidelity", "--axis", "g-over-j", "--values", "0.1", "--method", "mc", "--samples", "4000"
    )
    assert code == 0
    (row,) = rows_of(out)
    exact = average_fidelity_exact(make_config(3, 20, 3, coupling_g=0.1))
    assert abs(float(row["mean"]) - exact) < 4 * float(row["stderr"]) + 1e-12


def test_entangle(capsys):
    code, out, _ = run(capsys, "entangle", "--spins", "1,10", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"config", "rows"}
    assert payload["config"]["command"] == "entangle"
    eff = [r["efficiency"] for r in payload["rows"]]
    assert eff[0] < eff[1] <= 1


def test_thermal(capsys):
    code, out, _ = run(
        capsys, "thermal", "--bus-length", "1", "--spins", "3", "--temps", "1,20", "--fields", "4"
    )
    assert code == 0
    rows = rows_of(out)
    assert list(rows[0]) == ["T", "h", "S", "mean_fidelity"]
    f = [float(r["mean_fidelity"]) for r in rows]
    assert f[0] >= f[1]
    assert float(rows[0]["h"]) == pytest.approx(12.0)


def test_thermal_truncation_exit_code(capsys):
    code, _, err = run(
        capsys, "thermal", "--bus-length", "1", "--spins", "3", "--temps", "20", "--fields", "1", "--n-cut", "1"
    )
    assert code == 4
    assert "n_cut" in err


def test_modes(capsys):
    code, out, _ = run(capsys, "modes", "--bus-length", "5", "--spin", "2")
    assert code == 0
    rows = rows_of(out)
    assert [int(r["k"]) for r in rows] == [1, 2, 3, 4, 5]
    eps = np.array([float(r["epsilon_k"]) for r in rows])
    assert eps == pytest.approx(-4 * 2 * np.cos(np.arange(1, 6) * np.pi / 6), abs=1e-11)
    assert eps[2] == 0.0


def test_csv_has_twelve_significant_digits(capsys):
    _, out, _ = run(capsys, "transfer")
    tau = rows_of(out)[0]["tau"]
    digits = tau.replace(".", "").replace("-", "").lstrip("0")
    assert len(digits) <= 12
    assert float(tau) == pytest.approx(optimal_time(make_config(3, 20, 3)), rel=1e-11)


def test_config_file_with_override(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"spin": 2, "dim": 3, "format": "json"}))
    code, out, _ = run(capsys, "transfer", "--config", str(path), "--spin", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["config"]["spin"] == 3.0
    assert payload["config"]["dim"] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["transfer", "--spin", "0.3"],
        ["transfer", "--dim", "1"],
        ["transfer", "--time", "-1"],
        ["transfer", "--state", "basis:7"],
        ["thermal", "--temps", "0", "--bus-length", "1", "--spins", "1"],
    ],
)
def test_invalid_input_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error")


def test_bad_config_file(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"spinn": 2}))
    assert run(capsys, "transfer", "--config", str(path))[0] == 2
    assert run(capsys, "transfer", "--config", str(tmp_path / "missing.json"))[0] == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "modes.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "qudit_transfer", "modes", "--bus-length", "3", "-o", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert out.read_text().startswith("k,epsilon_k,t_k,tau0")
