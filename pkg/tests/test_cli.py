import json
import math

import pytest

from dressed_modes import __version__
from dressed_modes.cli import _grid, main

CFG = """\
resonator.length_m = 3e-3
resonator.phase_velocity_m_s = 1.2e8
resonator.impedance_ohm = 50.0
qubit.frequency_ghz = 9.0
qubit.anharmonicity_ghz = -0.25
qubit.state = g
qubit.coupling_ghz = 0.1
"""


@pytest.fixture
def cfg(tmp_path):
    path = tmp_path / "device.cfg"
    path.write_text(CFG)
    return str(path)


def read_manifest(out_path):
    with open(out_path + ".manifest.json") as fh:
        return json.load(fh)


def test_spectrum_writes_payload_and_manifest(cfg, tmp_path):
    out = str(tmp_path / "spectrum.json")
    assert main(["spectrum", "--config", cfg, "--out", out]) == 0
    payload = json.loads(open(out).read())
    assert set(payload) == {"eigenvalues_hz", "brackets", "margins", "boundary"}
    bnd = payload["boundary"]
    assert bnd["beta"] == 0.0 and bnd["gamma"] == 0.0
    assert [p["label"] for p in bnd["poles"]] == ["ge"]
    assert bnd["poles"][0]["delta"] > 0.0
    freqs = payload["eigenvalues_hz"]
    # one qubit-like root plus six photon-like modes
    assert len(freqs) == 7
    assert 8.9e9 < freqs[0] < 9.0e9
    # fundamental pulled up from 10 GHz by the qubit sitting below it
    assert 10.0e9 < freqs[1] < 10.01e9
    assert all(lo < hi for lo, hi in payload["brackets"])
    assert all(m > 0.0 for m in payload["margins"])
    manifest = read_manifest(out)
    assert set(manifest) == {"subcommand", "config", "outputs", "seed", "version"}
    assert manifest["subcommand"] == "spectrum"
    assert manifest["version"] == __version__
    assert manifest["outputs"] == [out]
    assert manifest["config"]["resonator.length_m"] == 3e-3


def test_reruns_are_byte_identical(cfg, tmp_path):
    out = str(tmp_path / "sweep.csv")
    args = ["sweep", "--config", cfg, "--out", out, "--omega-q-ghz", "9.5:10.5:7"]
    assert main(args) == 0
    first = open(out, "rb").read()
    first_manifest = open(out + ".manifest.json", "rb").read()
    assert main(args) == 0
    assert open(out, "rb").read() == first
    assert open(out + ".manifest.json", "rb").read() == first_manifest


def test_sweep_csv_shape(cfg, tmp_path):
    out = str(tmp_path / "sweep.csv")
    assert main(["sweep", "--config", cfg, "--out", out, "--omega-q-ghz", "9.8:10.2:5"]) == 0
    lines = open(out).read().splitlines()
    assert lines[0] == "omega_q_ghz,branch_lo_ghz,branch_hi_ghz,gap_ghz"
    assert len(lines) == 6
    gaps = [float(row.split(",")[3]) for row in lines[1:]]
    assert all(g > 0.0 for g in gaps)
    # on resonance the gap bottoms out near 2g = 0.2 GHz
    assert min(gaps) == pytest.approx(0.2, rel=0.05)
    assert gaps.index(min(gaps)) == 2


def test_sweep_json_format(cfg, tmp_path):
    out = str(tmp_path / "sweep.json")
    args = ["sweep", "--config", cfg, "--out", out, "--omega-q-ghz", "9.9:10.1:3",
            "--json"]
    assert main(args) == 0
    rows = json.loads(open(out).read())
    assert len(rows) == 3
    assert set(rows[0]) == {"omega_q_ghz", "branch_lo_ghz", "branch_hi_ghz", "gap_ghz"}
    manifest = read_manifest(out)
    assert manifest["config"]["format"] == "json"


def test_chi_csv_format(cfg, capsys):
    assert main(["chi", "--config", cfg, "--csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == (
        "chi_mhz,delta_omega_g_mhz,delta_omega_e_mhz,n_crit,dispersive,straddling"
    )
    cells = lines[1].split(",")
    assert float(cells[0]) == pytest.approx(-1.96, rel=0.02)
    assert cells[4] == "true" and cells[5] == "false"


def test_format_flags_mutually_exclusive(cfg):
    with pytest.raises(SystemExit) as exc:
        main(["chi", "--config", cfg, "--csv", "--json"])
    assert exc.value.code == 2


def test_chi_prints_report(cfg, capsys):
    assert main(["chi", "--config", cfg]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {
        "chi_mhz", "delta_omega_g_mhz", "delta_omega_e_mhz", "n_crit", "flags",
    }
    assert payload["chi_mhz"] == pytest.approx(-1.96, rel=0.02)
    assert payload["n_crit"] == pytest.approx(25.0, rel=1e-6)
    assert payload["flags"] == {"dispersive": True, "straddling": False}


def test_rabi_jc_only_leaves_blank_columns(cfg, tmp_path):
    out = str(tmp_path / "rabi.csv")
    args = ["rabi", "--config", cfg, "--out", out, "--omega-q-ghz", "10:10:1",
            "--method", "jc"]
    assert main(args) == 0
    lines = open(out).read().splitlines()
    assert lines[0] == "omega_q_ghz,jc_lo,jc_hi,sl_lo,sl_hi,diff"
    cells = lines[1].split(",")
    assert cells[3] == cells[4] == cells[5] == ""
    assert float(cells[2]) - float(cells[1]) == pytest.approx(0.2, rel=1e-9)


def test_rabi_both_reports_model_difference(cfg, tmp_path):
    out = str(tmp_path / "rabi.csv")
    args = ["rabi", "--config", cfg, "--out", out, "--omega-q-ghz", "10:10:1"]
    assert main(args) == 0
    cells = open(out).read().splitlines()[1].split(",")
    diff = float(cells[5])
    # the two models agree on the splitting to a part in 1e4 here
    assert abs(diff) < 1e-4


def test_multimode_writes_fit_sidecar(cfg, tmp_path):
    out = str(tmp_path / "multimode.csv")
    assert main(["multimode", "--config", cfg, "--out", out]) == 0
    lines = open(out).read().splitlines()
    assert lines[0] == "n_max,lamb_ghz,chi_ghz"
    assert len(lines) == 5
    fits = json.loads(open(out + ".fits.json").read())
    assert set(fits) == {
        "lamb_slope_ghz_per_mode", "lamb_intercept_ghz", "lamb_r_squared",
        "chi_increments_ghz", "chi_increment_spread",
        "chi_increment_asymptote_ghz", "degenerate",
    }
    assert fits["lamb_slope_ghz_per_mode"] == pytest.approx(-1e-3, rel=0.01)
    assert fits["lamb_r_squared"] > 0.999
    assert not fits["degenerate"]
    manifest = read_manifest(out)
    assert manifest["outputs"] == [out, out + ".fits.json"]


def test_parity_matched_defaults(cfg, capsys):
    assert main(["parity", "--config", cfg]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["odd_gap_mhz"] == 0.0
    assert payload["protected"] == ["ge-eg"]
    assert payload["even_gap_mhz"] > 0.0
    norms = payload["commutator_norms"]
    assert norms["hint_sz"] == 0.0
    assert norms["sx_identity_residual"] == 0.0
    assert norms["hint_sx"] > 0.0
    assert norms["hdisp_parity"] == 0.0
    assert "engineered" not in payload


def test_parity_detuned_second_qubit(cfg, capsys):
    args = ["parity", "--config", cfg, "--q2-frequency-ghz", "8.6",
            "--q2-anharmonicity-ghz", "-0.22", "--q2-coupling-ghz", "0.12"]
    assert main(args) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["odd_gap_mhz"] > 0.0
    assert payload["protected"] == []


def test_parity_engineered_block(cfg, capsys):
    assert main(["parity", "--config", cfg, "--chi-p-mhz", "-1.5"]) == 0
    payload = json.loads(capsys.readouterr().out)
    eng = payload["engineered"]
    assert eng["chi_p_mhz"] == -1.5
    assert (eng["even_ghz"] - eng["odd_ghz"]) * 1000.0 == pytest.approx(-3.0, rel=1e-9)


def test_wedge_defaults(capsys):
    assert main(["wedge"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["angle_rad"] == pytest.approx(math.pi / 2.0)
    assert payload["wavenumbers"] == pytest.approx([2.0, 4.0, 6.0, 8.0])
    assert payload["orthogonality_max_error"] <= 1e-9
    assert payload["wall_derivative_values"]["1"] == [1.0, -1.0]


def test_validate_single_criterion(capsys):
    assert main(["validate", "--only", "open-circuit"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] open-circuit" in out
    assert "1/1 criteria passed" in out


def test_validate_unknown_criterion():
    assert main(["validate", "--only", "bogus"]) == 1


def test_missing_config_exits_3(tmp_path):
    assert main(["chi", "--config", str(tmp_path / "nope.cfg")]) == 3


def test_incomplete_config_exits_3(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("resonator.length_m = 3e-3\n")
    assert main(["chi", "--config", str(path)]) == 3


def test_usage_errors_exit_2(cfg):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--config", cfg, "--omega-q-ghz", "9.8:10.2"])
    assert exc.value.code == 2


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == __version__


def test_grid_parsing():
    assert _grid("1:2:3") == [1.0, 1.5, 2.0]
    assert _grid("5:9:1") == [5.0]
    grid = _grid("0:1:11")
    assert grid[0] == 0.0 and grid[-1] == 1.0 and len(grid) == 11
    import argparse

    with pytest.raises(argparse.ArgumentTypeError):
        _grid("1:2:0")
    with pytest.raises(argparse.ArgumentTypeError):
        _grid("a:b:c")
