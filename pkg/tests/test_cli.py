"""Exit codes, file outputs, and determinism of the command-line harness."""

import json

import pytest

from phaseq.cli import main


def test_missing_config_exits_2(tmp_path, capsys):
    code = main(["verify", "--config", str(tmp_path / "nope.json"), "--out",
                 str(tmp_path / "report.json")])
    assert code == 2
    assert "not found" in capsys.readouterr().err


def test_bad_config_content_exits_2(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text('{"grid": {"n": 37}}')
    code = main(["verify", "--config", str(config), "--out", str(tmp_path / "r.json")])
    assert code == 2


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as excinfo:
        main(["frobnicate"])
    assert excinfo.value.code == 2


def test_spectrum_contract(tmp_path):
    out = tmp_path / "spectrum.csv"
    assert main(["spectrum", "--cutoff", "4", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "index,energy,trusted"
    energies = [float(line.split(",")[1]) for line in lines[1:4]]
    assert energies == pytest.approx([0.5, 1.5, 2.5], abs=1e-12)


def test_spectrum_small_cutoff(tmp_path):
    out = tmp_path / "spectrum.csv"
    assert main(["spectrum", "--cutoff", "2", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    trusted = [line.split(",")[2] for line in lines[1:]]
    assert trusted == ["1", "0"]


def test_spectrum_rejects_bad_cutoff(tmp_path):
    assert main(["spectrum", "--cutoff", "1", "--out", str(tmp_path / "s.csv")]) == 2


def test_spin_rows(tmp_path):
    out = tmp_path / "spin.csv"
    assert main(["spin", "--n-max", "1", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1 + 3
    rows = [line.split(",") for line in lines[1:]]
    assert rows[0][:2] == ["0", "0"]
    projections = sorted(float(r[2]) for r in rows[1:])
    assert projections == [-0.5, 0.5]
    assert float(rows[1][3]) == 0.75


def test_spin_row_count(tmp_path):
    out = tmp_path / "spin.csv"
    assert main(["spin", "--n-max", "3", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) - 1 == sum(n + 1 for n in range(4))


def test_spin_single_row(tmp_path):
    out = tmp_path / "spin.csv"
    assert main(["spin", "--n-max", "0", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 2


def test_spin_rejects_negative(tmp_path):
    assert main(["spin", "--n-max", "-1", "--out", str(tmp_path / "s.csv")]) == 2


def test_evolve_malformed_state(tmp_path, capsys):
    code = main(["evolve", "--state", "coherent:", "--time", "1.0",
                 "--out", str(tmp_path / "run")])
    assert code == 2


def test_evolve_unknown_state(tmp_path):
    assert main(["evolve", "--state", "squeezed:1", "--time", "1.0",
                 "--out", str(tmp_path / "run")]) == 2


def _small_config(tmp_path, n=64):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"grid": {"extent": 8, "n": n}}))
    return config


def test_evolve_outputs(tmp_path):
    # default 256-point grid: the stationarity tolerance is pinned there
    out = tmp_path / "run"
    code = main(["evolve", "--state", "eigenstate:0", "--time", "1.3",
                 "--out", str(out), "--no-timestamp"])
    assert code == 0
    for name in ("wavefunction_t0.csv", "wavefunction_t1.csv",
                 "density_t0.csv", "density_t1.csv", "equivalence.json"):
        assert (out / name).exists()
    payload = json.loads((out / "equivalence.json").read_text())
    assert payload["l2_distance"] < 1e-3
    # stationary state: exported densities agree
    import numpy as np

    t0 = np.loadtxt(out / "density_t0.csv", delimiter=",")
    t1 = np.loadtxt(out / "density_t1.csv", delimiter=",")
    assert np.abs(t1 - t0).max() < 1e-6


def test_evolve_coherent_period(tmp_path):
    config = _small_config(tmp_path)
    out = tmp_path / "run"
    code = main(["evolve", "--state", "coherent:1,0", "--time", str(2.0 * 3.141592653589793),
                 "--config", str(config), "--out", str(out), "--no-timestamp"])
    assert code == 0
    payload = json.loads((out / "equivalence.json").read_text())
    assert payload["l2_distance"] < 1e-3


def test_verify_passes_and_reports(tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify", "--out", str(out), "--no-timestamp"])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["passed"] is True
    assert len(payload["entries"]) >= 20
    by_id = {entry["equation_id"]: entry for entry in payload["entries"]}
    for required in ("Eq.16", "Eq.21", "Eq.23-literal", "Eq.25-literal", "Eq.48-literal"):
        assert by_id[required]["status"] == "reported"
        assert isinstance(by_id[required]["residual"], float)
    for entry in payload["entries"]:
        if entry["status"] == "fail":
            assert entry["module"] and entry["operation"]


def test_verify_deterministic_output(tmp_path):
    first = tmp_path / "one.json"
    second = tmp_path / "two.json"
    assert main(["verify", "--out", str(first), "--no-timestamp"]) == 0
    assert main(["verify", "--out", str(second), "--no-timestamp"]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_verify_equivalence_grows_on_coarse_grid(tmp_path):
    coarse_config = _small_config(tmp_path, n=64)
    coarse_out = tmp_path / "coarse.json"
    fine_out = tmp_path / "fine.json"
    assert main(["verify", "--config", str(coarse_config), "--out", str(coarse_out),
                 "--no-timestamp"]) == 0
    assert main(["verify", "--out", str(fine_out), "--no-timestamp"]) == 0

    def equivalence_residual(path):
        payload = json.loads(path.read_text())
        return next(e["residual"] for e in payload["entries"] if e["equation_id"] == "Eq.12")

    assert equivalence_residual(coarse_out) >= 3.0 * equivalence_residual(fine_out)
